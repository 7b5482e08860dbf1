# -*- coding: utf-8 -*-

"""\
Forecasting pipeline
--------------------

Glue between files, configuration and the forecasting modules: loading or
synthesizing data, training and storing forecaster bundles, and producing
short-term, long-term or fused forecasts at a chosen origin.
"""

import os
import logging
from collections import OrderedDict

import numpy as np

from ..config import config
from ..utils import osutils
from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            CoverageError)
from ..data.series import (UniformSeries, ema_denoise, to_epoch,
                           format_timestamp, GRID_TOL)
from ..data.windows import make_windows
from ..data import synth
from ..io import csvfiles
from ..model.mlp import TrainConfig
from ..model import forecaster as fc
from ..model import fusion
from .benchmark import scale_series

_lgr = logging.getLogger(__name__)

FORECAST_MODES = ("short", "long", "adaptive")

#: Bundle file name per scale
BUNDLE_FILES = OrderedDict([("short", "forecaster_short.json"),
                            ("long", "forecaster_long.json")])

def _root(cfg):
    return (cfg or config.get_config()).sopcast

def synthesize(outdir, cfg=None, seed=None):
    """Generate the synthetic dataset and write both CSV files

    Returns:
        tuple: Paths of the SOP and weather files
    """
    node = _root(cfg)
    seed = node.seed if seed is None else seed
    scfg = synth.SynthConfig.from_config(node.synth)
    sop, weather = synth.generate(scfg, seed)
    outdir = osutils.ensure_directory(outdir)
    sop_file = os.path.join(outdir, "sop.csv")
    wtr_file = os.path.join(outdir, "weather.csv")
    csvfiles.write_sop_csv(sop, sop_file)
    csvfiles.write_weather_csv(weather, wtr_file)
    return sop_file, wtr_file

def load_data(sop_csv=None, weather_csv=None, cfg=None):
    """Read the SOP and weather files named in ``paths`` unless overridden"""
    paths = _root(cfg).paths
    sop_file = osutils.abspath(sop_csv or paths.sop_csv)
    wtr_file = osutils.abspath(weather_csv or paths.weather_csv)
    for fname in (sop_file, wtr_file):
        if not osutils.path_exists(fname):
            raise FileNotFoundError("Input file not found: %s"%fname)
    return csvfiles.read_sop_csv(sop_file), csvfiles.read_weather_csv(wtr_file)

def forecast_configs(cfg=None):
    """``ForecastConfig`` per scale from the configuration"""
    node = _root(cfg)
    return OrderedDict((s, fc.ForecastConfig.from_config(node.forecast[s]))
                       for s in BUNDLE_FILES)

def train_bundles(sop, weather, cfg=None, seed=None, outdir=None):
    """Train the short-term (Windy) and long-term forecasters on all data

    Args:
        sop (UniformSeries): Raw SOP series
        weather (WeatherTable): Weather table
        cfg (SopcastCfg): Configuration
        seed (int): Training seed (default: ``train.seed`` or ``seed``)
        outdir (path): When given, bundles are written there

    Returns:
        OrderedDict: scale -> :class:`ForecasterBundle`
    """
    node = _root(cfg)
    seed = node.seed if seed is None else seed
    tcfg = TrainConfig.from_config(node.train, seed=seed)
    denoised = ema_denoise(sop, node.denoise.alpha)
    bundles = OrderedDict()
    for scale, fcfg in forecast_configs(cfg).items():
        sop_s, wtr_s = scale_series(denoised, weather, fcfg)
        data = make_windows(sop_s, wtr_s, fcfg.window, fcfg.horizon,
                            fcfg.stride, fcfg.exogenous, fcfg.exo_span)
        if data.empty:
            raise InsufficientDataError(
                "Not enough data for a %s-term window"%scale)
        bundles[scale] = fc.train_forecaster(
            data, fcfg, tcfg=tcfg, workers=node.train.get("workers", 1))
        if outdir:
            fname = os.path.join(osutils.ensure_directory(outdir),
                                 BUNDLE_FILES[scale])
            fc.write_bundle(bundles[scale], fname)
    return bundles

def load_bundles(model_dir, scales=("short", "long")):
    """Read forecaster bundles written by :func:`train_bundles`"""
    out = OrderedDict()
    for scale in scales:
        fname = os.path.join(model_dir, BUNDLE_FILES[scale])
        if not osutils.path_exists(fname):
            raise FileNotFoundError("Forecaster not found: %s"%fname)
        out[scale] = fc.read_bundle(fname)
    return out

def _lag(bundle):
    cfg = bundle.config
    return cfg.horizon if bundle.channels and cfg.exo_span == "target" else 0

def _origin_index(sop, origin, latest):
    """Grid index of the forecast origin"""
    if origin is None:
        return latest
    pos = (to_epoch(origin) - sop.start_time) / sop.step
    idx = int(round(pos))
    if abs(pos - idx) > GRID_TOL:
        raise InvalidParameterError(
            "Origin %s is not on the %gs grid"%(
                format_timestamp(to_epoch(origin)), sop.step))
    return idx

def forecast_scale(bundle, sop, weather, origin=None):
    """Forecast ``H`` values of one scale from a denoised SOP series

    Args:
        bundle (ForecasterBundle): Trained forecaster
        sop (UniformSeries): Denoised SOP series
        weather (WeatherTable): Weather table
        origin: Timestamp of the first forecast value (default: the latest
            origin with full SOP history and weather coverage)

    Returns:
        UniformSeries: The forecast
    """
    cfg = bundle.config
    sop_s, wtr_s = scale_series(sop, weather, cfg)
    wlen, hlen = cfg.window, cfg.horizon
    lag = _lag(bundle)
    idx = _origin_index(sop_s, origin, min(len(sop_s), len(wtr_s) - lag))
    if idx < wlen or idx > len(sop_s):
        raise CoverageError("Origin needs %d samples of SOP history"%wlen)
    if bundle.channels and idx + lag > len(wtr_s):
        raise CoverageError(
            "Weather ends at %s; the forecast needs it until %s"%(
                format_timestamp(wtr_s.end_time),
                format_timestamp(sop_s.start_time +
                                 (idx + lag - 1) * sop_s.step)))
    lo = idx - wlen
    exo = OrderedDict((c, wtr_s[c][lo + lag:idx + lag])
                      for c in bundle.channels)
    values = bundle.predict(sop_s.values[lo:idx], exo)
    start = sop_s.start_time + idx * sop_s.step
    _lgr.info("%s-term forecast of %d values from %s", cfg.scale, hlen,
              format_timestamp(start))
    return UniformSeries(start, sop_s.step, values, sop.unit)

def forecast_adaptive(bundles, sop, weather, origin=None, cfg=None):
    """Fused minute-resolution forecast over the long-term horizon

    Minutes whose gusts reach the wind threshold take the short-term forecast
    rolled forward from the origin; the other minutes take the interpolated
    long-term forecast.

    Returns:
        FusedForecast: One value and provenance tag per minute
    """
    node = _root(cfg)
    short_b, long_b = bundles["short"], bundles["long"]
    lcfg = long_b.config
    sop_l, wtr_l = scale_series(sop, weather, lcfg)
    # one spare long step leaves room for the short-term weather windows
    latest = min(len(sop_l), len(wtr_l) - lcfg.horizon - 1)
    idx = _origin_index(sop_l, origin, latest)
    origin_t = sop_l.start_time + idx * sop_l.step
    long_fc = forecast_scale(long_b, sop, weather, origin_t)

    n_minutes = int(round((lcfg.horizon - 1) * lcfg.step / fusion.MINUTE)) + 1
    gust = weather.channel("wind_gust")
    past = gust.values[gust.timestamps < origin_t]
    threshold = node.fusion.threshold
    if threshold is None:
        threshold = fusion.default_threshold(
            past if past.size else gust.values, node.fusion.percentile)
    threshold = fusion.as_threshold(threshold)
    gpos = (origin_t - gust.start_time) / gust.step
    g0 = int(np.floor(gpos + GRID_TOL))
    g1 = int(np.ceil(gpos + (n_minutes - 1) * fusion.MINUTE / gust.step -
                     GRID_TOL)) + 1
    if g0 < 0 or g1 > len(gust):
        raise CoverageError("Gust data does not cover the fused horizon")
    gate = fusion.gate_minutes(gust.islice(g0, g1), threshold, origin_t,
                               n_minutes)

    short_minutes = []
    if gate.windy.any():
        scfg = short_b.config
        sop_s, wtr_s = scale_series(sop, weather, scfg)
        last = int(np.flatnonzero(gate.windy)[-1])
        nsec = int(round((last + 1) * fusion.MINUTE / sop_s.step))
        i0 = int(round((origin_t - sop_s.start_time) / sop_s.step))
        lo = i0 - scfg.window
        if lo < 0:
            raise CoverageError("Not enough short-term SOP history")
        exo = OrderedDict((c, wtr_s[c][lo:]) for c in short_b.channels)
        values = fc.forecast_ahead(short_b, sop_s.values[lo:i0], nsec, exo)
        short_minutes = [fusion.aggregate_to_minutes(
            UniformSeries(origin_t, sop_s.step, values, sop.unit))]
    fused = fusion.fuse(long_fc, short_minutes, gate)
    _lgr.info("Fused forecast from %s: %d of %d minutes short-term "
              "(gust threshold %g)", format_timestamp(origin_t),
              int(gate.windy.sum()), n_minutes, threshold)
    return fused

def run_forecast(mode, model_dir, sop, weather, outfile, origin=None,
                 cfg=None):
    """Produce a forecast CSV

    Args:
        mode (str): ``short``, ``long`` or ``adaptive``
        model_dir (path): Directory holding the forecaster bundles
        sop (UniformSeries): Raw SOP series
        weather (WeatherTable): Weather table
        outfile (path): Output CSV
        origin: Forecast origin (default: latest possible)
    """
    if mode not in FORECAST_MODES:
        raise InvalidParameterError(
            "Forecast mode must be one of %s"%(FORECAST_MODES,))
    node = _root(cfg)
    denoised = ema_denoise(sop, node.denoise.alpha)
    scales = ("short", "long") if mode == "adaptive" else (mode,)
    bundles = load_bundles(model_dir, scales)
    if mode == "adaptive":
        frame = forecast_adaptive(bundles, denoised, weather, origin,
                                  cfg).to_frame()
        csvfiles.write_frame(frame, outfile)
        _lgr.info("Wrote %d fused minutes to %s", len(frame), outfile)
        return frame
    series = forecast_scale(bundles[mode], denoised, weather, origin)
    csvfiles.write_sop_csv(series, outfile)
    return series.to_frame(csvfiles.SOP_COLUMN)
