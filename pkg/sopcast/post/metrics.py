# -*- coding: utf-8 -*-

"""\
Forecast accuracy metrics
-------------------------
"""

import numpy as np

from ..utils.errors import (DimensionError, UndefinedMapeError,
                            InvalidParameterError)

#: Truth values with a magnitude below this make MAPE undefined
MAPE_ZERO_TOL = 1.0e-9

def _pair(truth, pred):
    truth = np.ravel(np.asarray(truth, dtype=np.float64))
    pred = np.ravel(np.asarray(pred, dtype=np.float64))
    if truth.size != pred.size:
        raise DimensionError("truth has %d values, prediction %d"%(
            truth.size, pred.size))
    if truth.size == 0:
        raise DimensionError("Metrics need at least one value")
    return truth, pred

def rmse(truth, pred):
    """Root mean square error"""
    truth, pred = _pair(truth, pred)
    return float(np.sqrt(np.mean((truth - pred) ** 2)))

def mape(truth, pred):
    """Mean absolute percentage error in percent

    Raises:
        UndefinedMapeError: If any truth value is (nearly) zero
    """
    truth, pred = _pair(truth, pred)
    nzero = int(np.count_nonzero(np.abs(truth) < MAPE_ZERO_TOL))
    if nzero:
        raise UndefinedMapeError(
            "MAPE is undefined: %d truth value(s) are zero"%nzero)
    return float(100.0 * np.mean(np.abs(truth - pred) / np.abs(truth)))

def improvement(base, ours):
    """Relative reduction of an error measure, in percent"""
    base = float(base)
    if base == 0.0:
        raise InvalidParameterError("Improvement over a zero baseline")
    return (base - float(ours)) / base * 100.0
