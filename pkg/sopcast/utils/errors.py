# -*- coding: utf-8 -*-

"""\
Exceptions
----------

Every error raised deliberately by sopcast derives from :class:`SopcastError`.
Each subclass also derives from the builtin it refines, so ``except
ValueError`` keeps working for callers that do not know about sopcast. The CLI
maps any :class:`SopcastError` to exit status 2.
"""

class SopcastError(Exception):
    """Base class for data and validation errors"""

class InvalidParameterError(SopcastError, ValueError):
    """A parameter is outside its admissible range"""

class InsufficientDataError(SopcastError, ValueError):
    """Not enough samples for the requested operation"""

class NoOverlapError(SopcastError, ValueError):
    """Two time grids share no timestamps"""

class TooManyLevelsError(SopcastError, ValueError):
    """Requested wavelet decomposition depth is infeasible"""

class DimensionError(SopcastError, ValueError):
    """Array shapes disagree with a model or pyramid layout"""

class IngestionError(SopcastError, ValueError):
    """Input file is malformed or violates the ingestion rules"""

class ModelLoadError(SopcastError, ValueError):
    """A model or bundle document cannot be loaded"""

class VersionMismatchError(ModelLoadError):
    """Document format version is not supported"""

class UndefinedMapeError(SopcastError, ValueError):
    """MAPE requested on data containing near-zero truth values"""

class CoverageError(SopcastError, ValueError):
    """Forecast inputs do not cover the requested time span"""
