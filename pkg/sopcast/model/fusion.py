# -*- coding: utf-8 -*-

"""\
Adaptive short/long-term fusion
-------------------------------

Builds a minute-resolution forecast timeline. Long-term forecasts (30 min
steps) interpolated to minutes form the baseline; minutes where gusts are
expected to reach the wind threshold are replaced by short-term forecasts
averaged to minutes.
"""

import logging
from collections import OrderedDict

import numpy as np
import pandas as pd

from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            CoverageError)
from ..data.series import UniformSeries, resample_linear, format_timestamp

_lgr = logging.getLogger(__name__)

#: Seconds per fused sample
MINUTE = 60.0

SHORT_TERM = "short-term"
LONG_TERM = "long-term"

_TOL = 1.0e-6

def as_threshold(value):
    """Positive float wind threshold from a number or numeric string

    YAML 1.1 reads exponents without a sign (``1.0e9``) as strings, so
    configured thresholds may arrive as text.
    """
    try:
        thr = float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(
            "Wind threshold must be a number, got %r"%(value,))
    if not thr > 0.0:
        raise InvalidParameterError(
            "Wind threshold must be positive, got %g"%thr)
    return thr

def wind_gate(gust_window, threshold):
    """True when the largest upcoming gust reaches ``threshold``"""
    threshold = as_threshold(threshold)
    gusts = np.asarray(gust_window, dtype=np.float64)
    if gusts.size == 0:
        raise InsufficientDataError("Wind gate needs at least one gust value")
    return bool(gusts.max() >= threshold)

def default_threshold(gusts, percentile=75.0):
    """Wind threshold as a percentile of (training) gust values"""
    gusts = np.asarray(gusts, dtype=np.float64)
    if gusts.size == 0:
        raise InsufficientDataError("No gust values to derive a threshold")
    thr = float(np.percentile(gusts, percentile))
    if not thr > 0.0:
        raise InvalidParameterError(
            "Wind threshold must be positive, got %g"%thr)
    return thr

class FusionGate(object):
    """Per-minute windy/calm decisions

    Attributes:
        threshold (float): Gust threshold in ingested units
        windy (ndarray): Boolean decision per minute
        start_time (float): Timestamp of the first minute
    """

    def __init__(self, threshold, windy, start_time):
        self.threshold = as_threshold(threshold)
        self.windy = np.asarray(windy, dtype=bool).reshape(-1)
        self.start_time = float(start_time)

    def __len__(self):
        return self.windy.size

    @property
    def decisions(self):
        """``windy``/``calm`` label per minute"""
        return ["windy" if w else "calm" for w in self.windy]

    @property
    def timestamps(self):
        return self.start_time + np.arange(len(self)) * MINUTE

def gate_minutes(gusts, threshold, start_time=None, n_minutes=None):
    """Gate every minute of a horizon using the gusts expected within it

    Args:
        gusts (UniformSeries): Upcoming gust values; grids coarser than one
            minute are linearly interpolated to minutes first
        threshold (float): Gust threshold
        start_time: First minute of the horizon (default: gust start)
        n_minutes (int): Number of minutes (default: as many as covered)

    Returns:
        FusionGate: One decision per minute
    """
    threshold = as_threshold(threshold)
    if gusts.step > MINUTE:
        gusts = resample_linear(gusts, MINUTE)
    start = gusts.start_time if start_time is None else float(start_time)
    rel = (gusts.timestamps - start) / MINUTE
    minute_idx = np.floor(rel + _TOL).astype(np.int64)
    if n_minutes is None:
        n_minutes = int(minute_idx.max()) + 1 if minute_idx.size else 0
    windy = np.zeros(n_minutes, dtype=bool)
    for m in range(n_minutes):
        in_minute = gusts.values[minute_idx == m]
        if in_minute.size == 0:
            raise CoverageError("No gust data for minute %d starting %s"%(
                m, format_timestamp(start + m * MINUTE)))
        windy[m] = wind_gate(in_minute, threshold)
    _lgr.debug("Gate: %d of %d minutes windy at threshold %g",
               windy.sum(), n_minutes, threshold)
    return FusionGate(threshold, windy, start)

def aggregate_to_minutes(series):
    """Average a 1 s series over consecutive 60-sample blocks

    The trailing partial block is averaged over the samples available.
    """
    if len(series) == 0:
        raise InsufficientDataError("Nothing to aggregate")
    if abs(series.step - 1.0) > _TOL:
        raise InvalidParameterError(
            "Minute aggregation expects a 1 s series, got step %g"%
            series.step)
    block = int(MINUTE)
    starts = np.arange(0, len(series), block)
    sums = np.add.reduceat(series.values, starts)
    counts = np.minimum(block, len(series) - starts)
    return UniformSeries(series.start_time, MINUTE, sums / counts,
                         series.unit)

def minute_baseline(long_forecast, start_time, n_minutes):
    """Long-term forecast linearly interpolated onto a minute grid"""
    offset = (float(start_time) - long_forecast.start_time) / \
        long_forecast.step
    pos = offset + np.arange(n_minutes) * (MINUTE / long_forecast.step)
    last = len(long_forecast) - 1
    if n_minutes and (pos[0] < -_TOL or pos[-1] > last + _TOL):
        raise CoverageError(
            "Long-term forecast [%s, %s] does not cover the fused horizon"%(
                format_timestamp(long_forecast.start_time),
                format_timestamp(long_forecast.end_time)))
    return np.interp(pos, np.arange(last + 1, dtype=np.float64),
                     long_forecast.values)

class FusedForecast(object):
    """Minute-resolution forecast with per-minute provenance"""

    def __init__(self, series, provenance):
        self.series = series
        self.provenance = list(provenance)
        if len(self.provenance) != len(series):
            raise InvalidParameterError(
                "Provenance count %d differs from series length %d"%(
                    len(self.provenance), len(series)))

    def __len__(self):
        return len(self.series)

    def to_frame(self):
        """Table with columns ``timestamp, sop_rad_per_s, provenance``"""
        return pd.DataFrame(OrderedDict([
            ("timestamp", [format_timestamp(t)
                           for t in self.series.timestamps]),
            ("sop_rad_per_s", self.series.values),
            ("provenance", self.provenance)]))

def fuse(long_forecast, short_minutes, gate):
    """Splice short-term minutes into the long-term baseline

    Args:
        long_forecast (UniformSeries): Long-term forecast (30 min steps)
        short_minutes: :class:`UniformSeries` at 60 s (or a list of them)
            covering the windy minutes
        gate (FusionGate): Decision for every minute of the horizon

    Returns:
        FusedForecast: One value and provenance tag per gated minute
    """
    nmin = len(gate)
    values = minute_baseline(long_forecast, gate.start_time, nmin)
    if isinstance(short_minutes, UniformSeries):
        short_minutes = [short_minutes]
    short_vals = np.full(nmin, np.nan)
    for ser in short_minutes or []:
        if abs(ser.step - MINUTE) > _TOL:
            raise InvalidParameterError(
                "Short-term input must be at minute resolution")
        rel = (ser.start_time - gate.start_time) / MINUTE
        first = int(round(rel))
        if abs(rel - first) > _TOL:
            raise CoverageError("Short-term minutes are off the fused grid")
        idx = first + np.arange(len(ser))
        keep = (idx >= 0) & (idx < nmin)
        short_vals[idx[keep]] = ser.values[keep]
    missing = gate.windy & np.isnan(short_vals)
    if np.any(missing):
        first = int(np.flatnonzero(missing)[0])
        raise CoverageError(
            "%d windy minute(s) lack short-term forecasts, first at %s"%(
                missing.sum(),
                format_timestamp(gate.start_time + first * MINUTE)))
    values = np.where(gate.windy, short_vals, values)
    provenance = [SHORT_TERM if w else LONG_TERM for w in gate.windy]
    unit = long_forecast.unit
    return FusedForecast(UniformSeries(gate.start_time, MINUTE, values, unit),
                         provenance)
