# -*- coding: utf-8 -*-

"""\
CSV ingestion and output
------------------------

File formats (comma separated, header row, UTF-8, ``.`` decimal separator):

  - SOP: ``timestamp,sop_rad_per_s``
  - weather: ``timestamp,wind_gust,temperature,humidity[,extra...]``

The ``timestamp`` column holds either RFC 3339 strings or integer epoch
seconds; the representation is detected per file and must not be mixed.
Rows missing from the grid and empty cells are repaired by linear
interpolation when a gap spans at most :data:`MAX_GAP` samples.
"""

import logging
from collections import OrderedDict

import numpy as np
import pandas as pd

from ..utils.errors import IngestionError
from ..data.series import (UniformSeries, WeatherTable, REQUIRED_CHANNELS,
                           GRID_TOL, repair_gaps, format_timestamps)

_lgr = logging.getLogger(__name__)

SOP_COLUMN = "sop_rad_per_s"
TIME_COLUMN = "timestamp"

#: Longest run of missing samples repaired at ingestion
MAX_GAP = 4

#: Number format for written values
FLOAT_FORMAT = "%.12g"

_EPOCH_PATTERN = r"^\s*[+-]?\d+\s*$"

def parse_timestamps(column):
    """Convert a timestamp column to float epoch seconds

    Args:
        column (pandas.Series): RFC 3339 strings or integer epoch seconds

    Returns:
        ndarray: Epoch seconds
    """
    if column.isna().any():
        raise IngestionError("Timestamp column has empty entries")
    if pd.api.types.is_integer_dtype(column):
        return column.to_numpy(dtype=np.float64)
    if pd.api.types.is_float_dtype(column):
        vals = column.to_numpy(dtype=np.float64)
        if not np.all(np.mod(vals, 1.0) == 0.0):
            raise IngestionError("Epoch timestamps must be whole seconds")
        return vals
    text = column.astype(str)
    is_epoch = text.str.match(_EPOCH_PATTERN)
    if is_epoch.all():
        return text.astype(np.int64).to_numpy(dtype=np.float64)
    if is_epoch.any():
        raise IngestionError(
            "Timestamp column mixes epoch seconds and RFC 3339 strings")
    try:
        tstamps = pd.to_datetime(text, utc=True)
    except (ValueError, TypeError) as exc:
        raise IngestionError("Cannot parse timestamps: %s"%exc)
    epoch = pd.Timestamp("1970-01-01", tz="UTC")
    return ((tstamps - epoch) / pd.Timedelta(seconds=1)).to_numpy(
        dtype=np.float64)

def _uniform_grid(times):
    """Return ``(start, step, grid index of every row)``"""
    if times.size < 2:
        raise IngestionError("At least two rows are required")
    diffs = np.diff(times)
    if np.any(diffs <= 0.0):
        raise IngestionError("Timestamps must be strictly increasing")
    step = float(np.min(diffs))
    pos = (times - times[0]) / step
    idx = np.round(pos).astype(np.int64)
    if np.any(np.abs(pos - idx) > GRID_TOL * max(1.0, idx[-1])):
        raise IngestionError(
            "Timestamps are not on a uniform grid of step %gs"%step)
    return float(times[0]), step, idx

def _regularize(idx, columns, max_gap):
    """Place rows on the full grid and repair gaps in every column"""
    nfull = int(idx[-1]) + 1
    out = OrderedDict()
    for name, vals in columns.items():
        full = np.full(nfull, np.nan)
        full[idx] = vals
        try:
            out[name], nrep = repair_gaps(full, max_gap)
        except IngestionError as exc:
            raise IngestionError("Column %s: %s"%(name, exc))
        if nrep:
            _lgr.info("Column %s: interpolated %d missing samples",
                      name, nrep)
    return out

def _read_frame(filename, required):
    try:
        frame = pd.read_csv(filename, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError,
            UnicodeDecodeError) as exc:
        raise IngestionError("Cannot read %s: %s"%(filename, exc))
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise IngestionError("%s is missing column(s): %s"%(
            filename, ", ".join(missing)))
    for col in frame.columns:
        if col == TIME_COLUMN:
            continue
        if not pd.api.types.is_numeric_dtype(frame[col]):
            raise IngestionError("Column %s of %s is not numeric"%(
                col, filename))
    return frame

def read_sop_csv(filename, max_gap=MAX_GAP, unit="rad/s"):
    """Load a SOP file as :class:`UniformSeries`"""
    frame = _read_frame(filename, [TIME_COLUMN, SOP_COLUMN])
    start, step, idx = _uniform_grid(parse_timestamps(frame[TIME_COLUMN]))
    cols = _regularize(
        idx, {SOP_COLUMN: frame[SOP_COLUMN].to_numpy(dtype=np.float64)},
        max_gap)
    series = UniformSeries(start, step, cols[SOP_COLUMN], unit)
    _lgr.debug("Read %d SOP samples (step %gs) from %s",
               len(series), step, filename)
    return series

def read_weather_csv(filename, max_gap=MAX_GAP):
    """Load a weather file as :class:`WeatherTable`"""
    frame = _read_frame(filename, (TIME_COLUMN,) + REQUIRED_CHANNELS)
    start, step, idx = _uniform_grid(parse_timestamps(frame[TIME_COLUMN]))
    names = [c for c in frame.columns if c != TIME_COLUMN]
    cols = _regularize(
        idx, OrderedDict(
            (c, frame[c].to_numpy(dtype=np.float64)) for c in names),
        max_gap)
    table = WeatherTable(start, step, cols)
    _lgr.debug("Read %d weather rows (step %gs, channels %s) from %s",
               len(table), step, table.names, filename)
    return table

def write_frame(frame, filename):
    """Write a table with the package-wide CSV conventions"""
    with open(filename, 'w', encoding="utf-8", newline="") as fh:
        frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT)

def write_sop_csv(series, filename):
    """Write a :class:`UniformSeries` as ``timestamp,sop_rad_per_s``"""
    frame = pd.DataFrame(OrderedDict([
        (TIME_COLUMN, format_timestamps(series.timestamps)),
        (SOP_COLUMN, series.values)]))
    write_frame(frame, filename)
    _lgr.info("Wrote %d SOP samples to %s", len(series), filename)

def write_weather_csv(table, filename):
    """Write a :class:`WeatherTable` with one column per channel"""
    data = OrderedDict([(TIME_COLUMN, format_timestamps(table.timestamps))])
    data.update(table.channels)
    write_frame(pd.DataFrame(data), filename)
    _lgr.info("Wrote %d weather rows to %s", len(table), filename)
