# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

import pytest
from sopcast.utils import errors

@pytest.mark.parametrize("exc_class", [
    errors.InvalidParameterError, errors.InsufficientDataError,
    errors.NoOverlapError, errors.TooManyLevelsError, errors.DimensionError,
    errors.IngestionError, errors.ModelLoadError,
    errors.VersionMismatchError, errors.UndefinedMapeError,
    errors.CoverageError])
def test_hierarchy(exc_class):
    """Every error is a SopcastError and a ValueError"""
    with pytest.raises(errors.SopcastError):
        raise exc_class("boom")
    with pytest.raises(ValueError):
        raise exc_class("boom")

def test_version_mismatch_is_load_error():
    assert issubclass(errors.VersionMismatchError, errors.ModelLoadError)
