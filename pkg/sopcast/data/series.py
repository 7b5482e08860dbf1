# -*- coding: utf-8 -*-

"""\
Uniformly sampled series
------------------------

:class:`UniformSeries` holds one scalar channel (SOP rotation speed or a
weather quantity) on a uniform grid; :class:`WeatherTable` holds several
channels sharing one grid. Timestamps are never stored per sample: the
``i``-th sample sits at ``start_time + i * step`` seconds since the UTC epoch.

All operations return new objects; the value arrays are read-only.

.. autosummary::
   :nosignatures:

   UniformSeries
   WeatherTable
   ema_denoise
   resample_linear
   align
   subsample
   repair_gaps
"""

import logging
from collections import OrderedDict

import numpy as np
import pandas as pd
import pytz
from scipy import signal

from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            NoOverlapError, DimensionError, IngestionError)

_lgr = logging.getLogger(__name__)

#: Weather channels every model-facing table must carry
REQUIRED_CHANNELS = ("wind_gust", "temperature", "humidity")

#: Tolerance, as a fraction of the step, when comparing grid positions
GRID_TOL = 1.0e-6

def to_epoch(value):
    """Convert a timestamp to float seconds since the UTC epoch

    Args:
        value: Number of seconds, RFC 3339 string, ``datetime`` or
            ``pandas.Timestamp``. Naive datetimes are taken as UTC.

    Returns:
        float: Seconds since 1970-01-01T00:00:00Z
    """
    if isinstance(value, (int, float, np.integer, np.floating)):
        return float(value)
    tstamp = pd.Timestamp(value)
    if tstamp.tzinfo is None:
        tstamp = tstamp.tz_localize(pytz.utc)
    return tstamp.timestamp()

def format_timestamp(epoch):
    """Format epoch seconds as an RFC 3339 UTC string (``...Z``)"""
    tstamp = pd.Timestamp(float(epoch), unit="s", tz=pytz.utc)
    if float(epoch).is_integer():
        return tstamp.strftime("%Y-%m-%dT%H:%M:%SZ")
    return tstamp.strftime("%Y-%m-%dT%H:%M:%S.%fZ")

def format_timestamps(epochs):
    """Vectorized :func:`format_timestamp` for an array of epoch seconds"""
    epochs = np.asarray(epochs, dtype=np.float64)
    index = pd.to_datetime(epochs, unit="s", utc=True)
    if np.all(np.mod(epochs, 1.0) == 0.0):
        return list(index.strftime("%Y-%m-%dT%H:%M:%SZ"))
    return list(index.strftime("%Y-%m-%dT%H:%M:%S.%fZ"))

def _frozen(values, name="values"):
    """Return a finite, read-only float64 copy of a 1-D sequence"""
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError("%s must be one-dimensional, got shape %s"%(
            name, arr.shape))
    if arr.size < 1:
        raise InsufficientDataError("%s must contain at least one sample"%name)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError("%s contains NaN or infinite entries"%name)
    arr.setflags(write=False)
    return arr

def _check_step(step):
    step = float(step)
    if not step > 0.0 or not np.isfinite(step):
        raise InvalidParameterError("step must be positive, got %r"%step)
    return step

class UniformSeries(object):
    """Uniformly sampled, timestamped scalar series"""

    def __init__(self, start_time, step, values, unit=""):
        """
        Args:
            start_time: Timestamp of the first sample (see :func:`to_epoch`)
            step (float): Sampling interval in seconds
            values (array): Finite sample values
            unit (str): Unit label, e.g., ``rad/s``
        """
        #: Epoch seconds of the first sample
        self.start_time = to_epoch(start_time)
        #: Sampling interval in seconds
        self.step = _check_step(step)
        #: Read-only sample values
        self.values = _frozen(values)
        #: Unit label
        self.unit = unit

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return "<%s: %d samples, step=%gs, start=%s>"%(
            self.__class__.__name__, len(self), self.step,
            format_timestamp(self.start_time))

    @property
    def end_time(self):
        """Timestamp of the last sample"""
        return self.start_time + (len(self) - 1) * self.step

    @property
    def timestamps(self):
        """Array of sample timestamps (epoch seconds)"""
        return self.start_time + np.arange(len(self)) * self.step

    def with_values(self, values, unit=None):
        """Return a series on the same grid with new values"""
        return UniformSeries(self.start_time, self.step, values,
                             self.unit if unit is None else unit)

    def islice(self, start, stop=None):
        """Return the samples ``[start, stop)`` as a new series"""
        vals = self.values[start:stop]
        first = range(len(self))[start:stop]
        if len(first) == 0:
            raise InsufficientDataError("Empty slice [%s:%s]"%(start, stop))
        return UniformSeries(self.start_time + first[0] * self.step,
                             self.step, vals, self.unit)

    def to_frame(self, name="value"):
        """Return a :class:`pandas.DataFrame` indexed by UTC timestamps"""
        index = pd.to_datetime(self.timestamps, unit="s", utc=True)
        return pd.DataFrame({name: self.values}, index=index)

class WeatherTable(object):
    """Time-aligned multichannel weather table

    Channels beyond :data:`REQUIRED_CHANNELS` are carried along unchanged.
    """

    def __init__(self, start_time, step, channels, units=None):
        """
        Args:
            start_time: Timestamp of the first row
            step (float): Sampling interval in seconds
            channels (dict): Mapping of channel name to values
            units (dict): Optional mapping of channel name to unit label
        """
        self.start_time = to_epoch(start_time)
        self.step = _check_step(step)
        missing = [c for c in REQUIRED_CHANNELS if c not in channels]
        if missing:
            raise InvalidParameterError(
                "Weather table is missing required channels: %s"%
                ", ".join(missing))
        self.channels = OrderedDict()
        for name, vals in channels.items():
            self.channels[name] = _frozen(vals, name)
        lengths = set(v.size for v in self.channels.values())
        if len(lengths) != 1:
            raise DimensionError(
                "Weather channels have different lengths: %s"%sorted(lengths))
        self.units = OrderedDict((k, (units or {}).get(k, ""))
                                 for k in self.channels)

    def __len__(self):
        return next(iter(self.channels.values())).size

    def __getitem__(self, name):
        return self.channels[name]

    def __contains__(self, name):
        return name in self.channels

    @property
    def names(self):
        """List of channel names in file order"""
        return list(self.channels.keys())

    @property
    def end_time(self):
        return self.start_time + (len(self) - 1) * self.step

    @property
    def timestamps(self):
        return self.start_time + np.arange(len(self)) * self.step

    def channel(self, name):
        """Return a single channel as :class:`UniformSeries`"""
        if name not in self.channels:
            raise InvalidParameterError("Unknown weather channel: %s"%name)
        return UniformSeries(self.start_time, self.step,
                             self.channels[name], self.units[name])

    def islice(self, start, stop=None):
        """Return rows ``[start, stop)`` as a new table"""
        first = range(len(self))[start:stop]
        if len(first) == 0:
            raise InsufficientDataError("Empty slice [%s:%s]"%(start, stop))
        return WeatherTable(
            self.start_time + first[0] * self.step, self.step,
            OrderedDict((k, v[start:stop]) for k, v in self.channels.items()),
            self.units)

    def to_frame(self):
        """Return a :class:`pandas.DataFrame` indexed by UTC timestamps"""
        index = pd.to_datetime(self.timestamps, unit="s", utc=True)
        return pd.DataFrame(OrderedDict(self.channels), index=index)

def ema_denoise(series, alpha):
    """Exponential moving average smoothing

    Computes ``y[0] = x[0]`` and ``y[t] = alpha*x[t] + (1 - alpha)*y[t-1]``.

    Args:
        series (UniformSeries): Input series
        alpha (float): Smoothing factor in ``(0, 1]``

    Returns:
        UniformSeries: Smoothed series on the same grid
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidParameterError(
            "EMA smoothing factor must be in (0, 1], got %r"%alpha)
    xval = series.values
    zi = [(1.0 - alpha) * xval[0]]
    yval, _ = signal.lfilter([alpha], [1.0, alpha - 1.0], xval, zi=zi)
    return series.with_values(yval)

def resample_linear(series, target_step):
    """Linearly interpolate a series onto a new uniform step

    The output starts at ``series.start_time`` and covers every target grid
    point not later than the last original sample.

    Args:
        series (UniformSeries): Input series with at least two samples
        target_step (float): New sampling interval in seconds

    Returns:
        UniformSeries: Resampled series
    """
    target_step = _check_step(target_step)
    nsrc = len(series)
    if nsrc < 2:
        raise InsufficientDataError(
            "Linear resampling needs at least 2 samples, got %d"%nsrc)
    ratio = target_step / series.step
    span = (nsrc - 1) / ratio
    nout = int(np.floor(span + GRID_TOL)) + 1
    # Positions in units of the source step avoid large epoch offsets
    pos = np.arange(nout) * ratio
    values = np.interp(pos, np.arange(nsrc, dtype=np.float64), series.values)
    return UniformSeries(series.start_time, target_step, values, series.unit)

def subsample(series, factor):
    """Keep every ``factor``-th sample starting with the first

    Args:
        series (UniformSeries): Input series
        factor (int): Decimation factor (>= 1)
    """
    factor = int(factor)
    if factor < 1:
        raise InvalidParameterError("Subsample factor must be >= 1")
    return UniformSeries(series.start_time, series.step * factor,
                         series.values[::factor], series.unit)

def _regrid_weather(sop, weather):
    """Interpolate every weather channel onto the SOP grid"""
    sop_ts = sop.timestamps
    lo = weather.start_time - GRID_TOL * sop.step
    hi = weather.end_time + GRID_TOL * sop.step
    keep = np.flatnonzero((sop_ts >= lo) & (sop_ts <= hi))
    if keep.size == 0:
        raise NoOverlapError("SOP and weather time ranges do not intersect")
    if len(weather) < 2:
        raise InsufficientDataError(
            "Weather must have at least 2 rows to be regridded")
    pos = (sop_ts[keep] - weather.start_time) / weather.step
    src = np.arange(len(weather), dtype=np.float64)
    channels = OrderedDict(
        (k, np.interp(pos, src, v)) for k, v in weather.channels.items())
    _lgr.debug("Regridded weather from step %gs to %gs (%d rows)",
               weather.step, sop.step, keep.size)
    return WeatherTable(sop_ts[keep[0]], sop.step, channels, weather.units)

def align(sop, weather):
    """Restrict SOP and weather to their common time grid

    Weather with a different step, or with timestamps that do not fall on the
    SOP grid, is first linearly interpolated onto the SOP grid.

    Args:
        sop (UniformSeries): SOP series
        weather (WeatherTable): Weather table

    Returns:
        tuple: ``(sop, weather)`` sharing start time, step and length
    """
    step = sop.step
    offset = (weather.start_time - sop.start_time) / step
    same_step = abs(weather.step - step) <= GRID_TOL * step
    if not same_step or abs(offset - round(offset)) > GRID_TOL:
        weather = _regrid_weather(sop, weather)
        offset = (weather.start_time - sop.start_time) / step

    offset = int(round(offset))
    i0 = max(0, offset)
    i1 = min(len(sop), offset + len(weather))
    if i1 <= i0:
        raise NoOverlapError(
            "SOP [%s, %s] and weather [%s, %s] do not overlap"%(
                format_timestamp(sop.start_time),
                format_timestamp(sop.end_time),
                format_timestamp(weather.start_time),
                format_timestamp(weather.end_time)))
    if i0 == 0 and i1 == len(sop) and offset == 0 and len(weather) == len(sop):
        return sop, weather
    sop_out = sop.islice(i0, i1)
    wtr_out = weather.islice(i0 - offset, i1 - offset)
    _lgr.debug("Aligned %d SOP samples with weather", len(sop_out))
    return sop_out, wtr_out

def repair_gaps(values, max_gap=4):
    """Fill interior NaN runs of at most ``max_gap`` samples linearly

    Args:
        values (array): Samples, missing readings encoded as NaN
        max_gap (int): Longest run of consecutive missing samples repaired

    Returns:
        tuple: ``(repaired values, number of samples filled)``

    Raises:
        IngestionError: Longer gaps, gaps at either end, or infinite values
    """
    vals = np.array(values, dtype=np.float64)
    if np.any(np.isinf(vals)):
        raise IngestionError("Infinite values are not allowed")
    missing = np.isnan(vals)
    nmiss = int(missing.sum())
    if nmiss == 0:
        return vals, 0
    edges = np.diff(np.concatenate(([0], missing.view(np.int8), [0])))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    for beg, end in zip(starts, stops):
        if beg == 0 or end == vals.size:
            raise IngestionError(
                "Missing values at the %s of the series cannot be repaired"%(
                    "start" if beg == 0 else "end"))
        if end - beg > max_gap:
            raise IngestionError(
                "Gap of %d missing samples at index %d exceeds limit of %d"%(
                    end - beg, beg, max_gap))
    idx = np.arange(vals.size)
    good = ~missing
    vals[missing] = np.interp(idx[missing], idx[good], vals[good])
    _lgr.debug("Repaired %d missing samples in %d gaps", nmiss, starts.size)
    return vals, nmiss
