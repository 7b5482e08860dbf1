# -*- coding: utf-8 -*-

"""\
Baseline forecasters
--------------------

The moving-average baseline repeats the trailing mean of the last ``k``
observations over the whole horizon.
"""

import numpy as np

from ..utils.errors import InvalidParameterError, InsufficientDataError

def moving_average_forecast(history, k, horizon):
    """Flat forecast equal to the mean of the last ``k`` values

    Args:
        history (array): Past values; accepts a stack ``(n, m)`` of histories
        k (int): Averaging window (``k >= 1``)
        horizon (int): Number of values to forecast

    Returns:
        ndarray: ``horizon`` values (``(n, horizon)`` for stacked input)
    """
    k, horizon = int(k), int(horizon)
    if k < 1 or horizon < 1:
        raise InvalidParameterError("k and horizon must be >= 1")
    hist = np.asarray(history, dtype=np.float64)
    if hist.ndim == 0 or hist.shape[-1] < k:
        raise InsufficientDataError(
            "Moving average over %d values needs at least %d, got %d"%(
                k, k, 0 if hist.ndim == 0 else hist.shape[-1]))
    level = hist[..., -k:].mean(axis=-1)
    return np.repeat(level[..., None], horizon, axis=-1)

class MovingAverage(object):
    """Moving-average baseline with the forecaster prediction interface"""

    def __init__(self, window, horizon, k=None):
        self.window = int(window)
        self.horizon = int(horizon)
        #: Averaging window, defaults to the full input window
        self.k = int(k) if k else self.window
        if self.k > self.window:
            raise InvalidParameterError(
                "Averaging window %d exceeds input window %d"%(
                    self.k, self.window))

    def predict(self, sop_window, exo_windows=None):
        return moving_average_forecast(sop_window, self.k, self.horizon)

    def predict_dataset(self, dataset):
        if dataset.empty:
            return np.empty((0, self.horizon))
        return moving_average_forecast(dataset.inputs, self.k, self.horizon)
