# -*- coding: utf-8 -*-

"""\
Windowed datasets
-----------------

Sliding-window sample construction for both forecasting scales plus the
z-score helpers used to normalize network inputs and targets.

Each sample consists of an input window ``X`` of ``W`` SOP values and a target
window ``Y`` of the same length shifted forward by ``H`` steps, so that the
last ``H`` values of ``Y`` are the values to forecast and
``Y[:W-H] == X[H:]``.
"""

import logging
from collections import OrderedDict, namedtuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            DimensionError)
from .series import GRID_TOL, REQUIRED_CHANNELS

_lgr = logging.getLogger(__name__)

#: Standard deviations below this value are replaced by 1 when normalizing
STD_FLOOR = 1.0e-12

#: Population mean and standard deviation of a band or series
ZScore = namedtuple("ZScore", ["mean", "std"])

EXO_SPANS = ("target", "input")

class WindowedDataset(object):
    """Input, exogenous and shifted-target windows

    Attributes:
        inputs (ndarray): ``(n, W)`` SOP input windows
        targets (ndarray): ``(n, W)`` SOP windows shifted by ``H``
        exogenous (OrderedDict): channel name -> ``(n, W)`` windows
        anchors (ndarray): ``(n,)`` timestamp of the first forecast sample
    """

    def __init__(self, inputs, targets, exogenous, anchors,
                 window, horizon, step, stride=1, exo_span="target"):
        self.window = int(window)
        self.horizon = int(horizon)
        self.step = float(step)
        self.stride = int(stride)
        self.exo_span = exo_span
        self.inputs = np.asarray(inputs, dtype=np.float64).reshape(
            -1, self.window)
        self.targets = np.asarray(targets, dtype=np.float64).reshape(
            -1, self.window)
        self.exogenous = OrderedDict(
            (k, np.asarray(v, dtype=np.float64).reshape(-1, self.window))
            for k, v in (exogenous or {}).items())
        self.anchors = np.asarray(anchors, dtype=np.float64).reshape(-1)
        nsamp = self.inputs.shape[0]
        if (self.targets.shape[0] != nsamp or self.anchors.size != nsamp or
                any(v.shape[0] != nsamp for v in self.exogenous.values())):
            raise DimensionError("Inconsistent sample counts in dataset")

    def __len__(self):
        return self.inputs.shape[0]

    def __repr__(self):
        return "<WindowedDataset: %d samples, W=%d, H=%d, channels=%s>"%(
            len(self), self.window, self.horizon, list(self.exogenous))

    @property
    def empty(self):
        """True when the series was too short for a single sample"""
        return len(self) == 0

    @property
    def channels(self):
        return list(self.exogenous.keys())

    @property
    def future(self):
        """``(n, H)`` array of the values to be forecast"""
        return self.targets[:, self.window - self.horizon:]

    @property
    def future_times(self):
        """``(n, H)`` timestamps of the values to be forecast"""
        return (self.anchors[:, None] +
                np.arange(self.horizon)[None, :] * self.step)

    def take(self, indices):
        """Return a dataset restricted to the given sample indices"""
        idx = np.asarray(indices, dtype=np.intp)
        return WindowedDataset(
            self.inputs[idx], self.targets[idx],
            OrderedDict((k, v[idx]) for k, v in self.exogenous.items()),
            self.anchors[idx], self.window, self.horizon, self.step,
            self.stride, self.exo_span)

    def select_channels(self, channels):
        """Return a dataset keeping only the listed exogenous channels"""
        missing = [c for c in channels if c not in self.exogenous]
        if missing:
            raise InvalidParameterError(
                "Dataset has no exogenous channel(s): %s"%", ".join(missing))
        return WindowedDataset(
            self.inputs, self.targets,
            OrderedDict((k, self.exogenous[k]) for k in channels),
            self.anchors, self.window, self.horizon, self.step,
            self.stride, self.exo_span)

    def split(self, test_fraction):
        """Chronological split into ``(train, test)`` datasets

        The last ``test_fraction`` of the samples form the test set.
        """
        if not 0.0 < test_fraction < 1.0:
            raise InvalidParameterError(
                "test_fraction must be in (0, 1), got %r"%test_fraction)
        nsamp = len(self)
        ntest = int(round(nsamp * test_fraction))
        ntest = min(max(ntest, 1), nsamp - 1)
        if ntest < 1:
            raise InsufficientDataError(
                "Need at least 2 samples to split, got %d"%nsamp)
        idx = np.arange(nsamp)
        return self.take(idx[:-ntest]), self.take(idx[-ntest:])

def make_windows(sop, exo=None, window=36, horizon=12, stride=1,
                 channels=None, exo_span="target"):
    """Build a :class:`WindowedDataset` from aligned series

    Args:
        sop (UniformSeries): SOP series of length ``N``
        exo (WeatherTable): Weather on the same grid as ``sop`` (or None)
        window (int): Window length ``W``
        horizon (int): Forecast horizon ``H`` (``W > H >= 1``)
        stride (int): Distance between consecutive sample origins
        channels (list): Exogenous channels to extract (default: all three
            required weather channels when ``exo`` is given)
        exo_span (str): ``target`` windows the weather over the shifted
            target span, ``input`` over the input span

    Returns:
        WindowedDataset: ``floor((N - W - H)/stride) + 1`` samples, or an
        empty dataset when ``N < W + H``

    With the default ``exo_span="target"`` the weather window of sample
    ``s`` covers ``s + H .. s + W + H - 1``, so its last ``H`` values lie in
    the forecast horizon. Weather there is treated as a known input, i.e., a
    weather forecast available at the origin. Use ``exo_span="input"`` to
    restrict the models to weather observed up to the origin.
    """
    window, horizon, stride = int(window), int(horizon), int(stride)
    if horizon < 1 or window <= horizon:
        raise InvalidParameterError(
            "Window must exceed horizon >= 1, got W=%d, H=%d"%(
                window, horizon))
    if stride < 1:
        raise InvalidParameterError("stride must be >= 1, got %d"%stride)
    if exo_span not in EXO_SPANS:
        raise InvalidParameterError(
            "exo_span must be one of %s, got %r"%(EXO_SPANS, exo_span))

    if exo is None:
        channels = []
    else:
        if channels is None:
            channels = list(REQUIRED_CHANNELS)
        if (len(exo) != len(sop) or
                abs(exo.step - sop.step) > GRID_TOL * sop.step or
                abs(exo.start_time - sop.start_time) > GRID_TOL * sop.step):
            raise DimensionError(
                "Weather must be aligned with the SOP grid before windowing")
        missing = [c for c in channels if c not in exo]
        if missing:
            raise InvalidParameterError(
                "Weather has no channel(s): %s"%", ".join(missing))

    nvals = len(sop)
    if nvals < window + horizon:
        _lgr.debug("Series of %d samples too short for W=%d, H=%d",
                   nvals, window, horizon)
        empty = np.empty((0, window))
        return WindowedDataset(
            empty, empty, OrderedDict((c, empty) for c in channels),
            np.empty(0), window, horizon, sop.step, stride, exo_span)

    nsamp = (nvals - window - horizon) // stride + 1
    starts = np.arange(nsamp) * stride
    views = sliding_window_view(sop.values, window)
    inputs = views[starts]
    targets = views[starts + horizon]
    exo_start = starts + horizon if exo_span == "target" else starts
    exogenous = OrderedDict(
        (c, sliding_window_view(exo[c], window)[exo_start]) for c in channels)
    anchors = sop.start_time + (starts + window) * sop.step
    return WindowedDataset(inputs, targets, exogenous, anchors,
                           window, horizon, sop.step, stride, exo_span)

def zscore_stats(values):
    """Population mean and standard deviation

    Args:
        values (array): Non-empty array (any shape; all entries pooled)

    Returns:
        ZScore: ``(mean, std)``
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise InvalidParameterError("Cannot normalize an empty array")
    return ZScore(float(arr.mean()), float(arr.std()))

def _safe_std(stats):
    return stats.std if stats.std >= STD_FLOOR else 1.0

def zscore_apply(values, stats):
    """Normalize values with ``stats``; degenerate std is treated as 1"""
    return (np.asarray(values, dtype=np.float64) - stats.mean) / _safe_std(
        stats)

def zscore_invert(values, stats):
    """Inverse of :func:`zscore_apply`"""
    return np.asarray(values, dtype=np.float64) * _safe_std(stats) + \
        stats.mean
