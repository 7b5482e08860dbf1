# -*- coding: utf-8 -*-

"""\
Wavelet-neural forecasters
--------------------------

A :class:`ForecasterBundle` forecasts the next ``H`` values of a series by

  #. decomposing the input window ``X`` (and any wired weather windows) into
     ``J`` levels,
  #. running one network per band that predicts the coefficients of the
     target window ``Y`` (``X`` shifted forward by ``H``),
  #. reconstructing ``Y`` with the inverse transform and returning its last
     ``H`` values.

Windy, Calm and LongTerm forecasters are the same structure with different
weather channels. :class:`PlainAnn` is the reference network that maps the raw
window directly to the horizon without any decomposition.
"""

import json
import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            DimensionError, CoverageError, ModelLoadError,
                            VersionMismatchError)
from ..utils.tojson import JSONSerializer, read_json
from ..data.series import REQUIRED_CHANNELS
from ..data.windows import (ZScore, zscore_stats, zscore_apply,
                            zscore_invert, EXO_SPANS)
from ..wavelet import dwt
from . import mlp
from .correlation import (band_correlations, select_exogenous_bands,
                          wiring_channels, POLICIES)

_lgr = logging.getLogger(__name__)

#: Version tag written to bundle documents
FORMAT_VERSION = "1"

SCALES = ("short", "long")

class ForecastConfig(JSONSerializer):
    """Window geometry and weather inputs of one forecaster"""

    _json_public_ = ["scale", "window", "horizon", "levels", "step",
                     "stride", "exogenous", "exo_span", "policy", "hidden"]

    def __init__(self, scale="short", window=36, horizon=12, levels=5,
                 step=1.0, stride=1, exogenous=None, exo_span="target",
                 policy="top1", hidden=None):
        self.scale = scale
        self.window = int(window)
        self.horizon = int(horizon)
        self.levels = int(levels)
        self.step = float(step)
        self.stride = int(stride)
        self.exogenous = list(exogenous or [])
        self.exo_span = exo_span
        self.policy = policy
        self.hidden = [int(h) for h in (hidden if hidden is not None
                                        else [32])]
        self._validate()

    def _validate(self):
        if self.scale not in SCALES:
            raise InvalidParameterError("scale must be one of %s"%(SCALES,))
        if self.horizon < 1 or self.window <= self.horizon:
            raise InvalidParameterError(
                "Window must exceed horizon >= 1 (W=%d, H=%d)"%(
                    self.window, self.horizon))
        if self.stride < 1 or not self.step > 0.0:
            raise InvalidParameterError("stride and step must be positive")
        unknown = [c for c in self.exogenous if c not in REQUIRED_CHANNELS]
        if unknown:
            raise InvalidParameterError(
                "Unsupported exogenous channel(s): %s"%", ".join(unknown))
        if self.exo_span not in EXO_SPANS:
            raise InvalidParameterError(
                "exo_span must be one of %s"%(EXO_SPANS,))
        if self.policy not in POLICIES:
            raise InvalidParameterError(
                "policy must be one of %s"%(POLICIES,))
        if any(h < 1 for h in self.hidden):
            raise InvalidParameterError("Hidden layer sizes must be >= 1")
        dwt.coeff_lengths(self.window, self.levels)

    @classmethod
    def from_config(cls, node):
        """Create from a ``sopcast.forecast.short|long`` node"""
        opts = OrderedDict((k, node[k]) for k in cls._json_public_
                           if k in node)
        return cls(**opts)

    @classmethod
    def windy(cls):
        """Short-term forecaster driven by wind gusts"""
        return cls(exogenous=["wind_gust"])

    @classmethod
    def calm(cls):
        """Short-term forecaster using the SOP history only"""
        return cls(exogenous=[], policy="none")

    @classmethod
    def long_term(cls):
        """Long-term forecaster driven by temperature and humidity"""
        return cls(scale="long", window=48, horizon=24, step=1800.0,
                   exogenous=["temperature", "humidity"])

    def replace(self, **kwargs):
        """Return a copy with some fields changed"""
        opts = self.to_json()
        opts.update(kwargs)
        return ForecastConfig(**opts)

    def without_weather(self):
        """Same geometry with no weather inputs (the Calm structure)"""
        return self.replace(exogenous=[], policy="none")

    @property
    def band_names(self):
        return dwt.band_names(self.levels)

    @property
    def band_lengths(self):
        return dwt.coeff_lengths(self.window, self.levels)

def empty_wiring(cfg):
    """Wiring with no weather inputs for every band of ``cfg``"""
    return OrderedDict((b, []) for b in cfg.band_names)

def _check_wiring(wiring, cfg, dataset=None):
    names = cfg.band_names
    full = empty_wiring(cfg)
    for band, inputs in (wiring or {}).items():
        if band not in full:
            raise InvalidParameterError("Wiring references unknown band %s"%
                                        band)
        for chan, src in inputs:
            if src != band:
                raise InvalidParameterError(
                    "Band %s cannot take input from band %s"%(band, src))
            if chan not in cfg.exogenous:
                raise InvalidParameterError(
                    "Wired channel %s is not among exogenous channels %s"%(
                        chan, cfg.exogenous))
            if dataset is not None and chan not in dataset.exogenous:
                raise InvalidParameterError(
                    "Dataset has no exogenous channel %s"%chan)
            full[band].append((str(chan), str(src)))
    return OrderedDict((b, full[b]) for b in names)

def _decompose(values, levels, spec):
    return dwt.wavedec(values, levels, spec).bands

def _band_design(band_idx, band, wiring, stats, sop_bands, exo_bands):
    """Normalized input matrix of one band model"""
    cols = [zscore_apply(sop_bands[band_idx], stats["sop"])]
    for chan, _ in wiring[band]:
        cols.append(zscore_apply(exo_bands[chan][band_idx], stats[chan]))
    return np.concatenate(cols, axis=-1)

class ForecasterBundle(JSONSerializer):
    """Trained per-band networks with their normalization and wiring

    Attributes:
        config (ForecastConfig): Geometry and weather channels
        wiring (OrderedDict): band -> list of ``(channel, band)`` inputs
        band_models (list): One network per band in ``[A_J, D_J..D_1]`` order
        band_stats (OrderedDict): band -> role -> :class:`ZScore`; roles are
            ``sop``, ``target`` and the wired channel names
    """

    format_version = FORMAT_VERSION

    def __init__(self, config, wiring, band_models, band_stats, spec=None):
        self.config = config
        self.spec = spec if spec is not None else dwt.db5_filters()
        self.wiring = _check_wiring(wiring, config)
        self.band_models = list(band_models)
        self.band_stats = OrderedDict(
            (b, OrderedDict((r, ZScore(*s)) for r, s in roles.items()))
            for b, roles in band_stats.items())
        names = config.band_names
        if len(self.band_models) != len(names):
            raise DimensionError("Expected %d band models, got %d"%(
                len(names), len(self.band_models)))
        for band, blen, model in zip(names, config.band_lengths,
                                     self.band_models):
            nin = (1 + len(self.wiring[band])) * blen
            sizes = getattr(model, "sizes", None)
            if sizes is not None and (sizes[0] != nin or sizes[-1] != blen):
                raise DimensionError(
                    "Band %s model has sizes %s; expected %d in, %d out"%(
                        band, sizes, nin, blen))

    def __repr__(self):
        return "<ForecasterBundle: %s, W=%d, H=%d, channels=%s>"%(
            self.config.scale, self.config.window, self.config.horizon,
            self.channels)

    @property
    def channels(self):
        """Weather channels the bundle needs at prediction time"""
        return wiring_channels(self.wiring)

    def _check_windows(self, inputs, exogenous):
        cfg = self.config
        xwin = np.asarray(inputs, dtype=np.float64)
        single = xwin.ndim == 1
        xwin = np.atleast_2d(xwin)
        if xwin.shape[-1] != cfg.window:
            raise DimensionError("Expected SOP windows of length %d, got %d"%(
                cfg.window, xwin.shape[-1]))
        exo = OrderedDict()
        for chan in self.channels:
            if exogenous is None or chan not in exogenous:
                raise InvalidParameterError(
                    "Missing weather window for channel %s"%chan)
            ewin = np.atleast_2d(np.asarray(exogenous[chan],
                                            dtype=np.float64))
            if ewin.shape != xwin.shape:
                raise DimensionError(
                    "Weather window %s has shape %s; expected %s"%(
                        chan, ewin.shape, xwin.shape))
            exo[chan] = ewin
        return xwin, exo, single

    def predict_batch(self, inputs, exogenous=None):
        """Forecast from a stack of windows

        Args:
            inputs (array): ``(n, W)`` SOP windows
            exogenous (dict): channel -> ``(n, W)`` weather windows

        Returns:
            ndarray: ``(n, H)`` forecasts
        """
        cfg = self.config
        xwin, exo, single = self._check_windows(inputs, exogenous)
        sop_bands = _decompose(xwin, cfg.levels, self.spec)
        exo_bands = OrderedDict(
            (c, _decompose(v, cfg.levels, self.spec)) for c, v in exo.items())
        pred_bands = []
        for i, (band, model) in enumerate(zip(cfg.band_names,
                                              self.band_models)):
            stats = self.band_stats[band]
            design = _band_design(i, band, self.wiring, stats,
                                  sop_bands, exo_bands)
            out = np.atleast_2d(model.forward(design))
            pred_bands.append(zscore_invert(out, stats["target"]))
        pyr = dwt.CoefficientPyramid.from_bands(pred_bands, cfg.window,
                                                self.spec)
        future = dwt.waverec(pyr)[:, cfg.window - cfg.horizon:]
        return future[0] if single else future

    def predict(self, sop_window, exo_windows=None):
        """Forecast the next ``H`` values from one window"""
        return predict(self, sop_window, exo_windows)

    def predict_dataset(self, dataset):
        """Forecast every sample of a :class:`WindowedDataset`"""
        if dataset.empty:
            return np.empty((0, self.config.horizon))
        return self.predict_batch(dataset.inputs, dataset.exogenous)

    def to_json(self):
        doc = OrderedDict()
        doc["format_version"] = self.format_version
        doc["wavelet"] = self.spec.name
        doc["config"] = self.config.to_json()
        doc["wiring"] = OrderedDict(
            (b, [list(p) for p in v]) for b, v in self.wiring.items())
        doc["band_models"] = [m.to_json() for m in self.band_models]
        doc["band_stats"] = OrderedDict(
            (b, OrderedDict((r, list(s)) for r, s in roles.items()))
            for b, roles in self.band_stats.items())
        return doc

def train_forecaster(train, cfg, wiring=None, tcfg=None, workers=1):
    """Train one network per band

    Args:
        train (WindowedDataset): Training samples
        cfg (ForecastConfig): Geometry and weather channels
        wiring (dict): band -> ``(channel, band)`` inputs; when None it is
            derived from band correlations with ``cfg.policy``
        tcfg (TrainConfig): Optimizer settings; band ``i`` uses seed
            ``tcfg.seed + i``
        workers (int): Number of threads training band models

    Returns:
        ForecasterBundle: The trained forecaster
    """
    if train.empty:
        raise InsufficientDataError("Cannot train on an empty dataset")
    if train.window != cfg.window or train.horizon != cfg.horizon:
        raise DimensionError(
            "Dataset geometry (W=%d, H=%d) differs from config (W=%d, H=%d)"%(
                train.window, train.horizon, cfg.window, cfg.horizon))
    tcfg = tcfg or mlp.TrainConfig()
    spec = dwt.db5_filters()
    if wiring is None:
        if cfg.exogenous and cfg.policy != "none":
            corr = band_correlations(train, cfg.exogenous, cfg.levels, spec)
            wiring = select_exogenous_bands(corr, cfg.policy)
        else:
            wiring = empty_wiring(cfg)
    wiring = _check_wiring(wiring, cfg, train)

    sop_bands = _decompose(train.inputs, cfg.levels, spec)
    tgt_bands = _decompose(train.targets, cfg.levels, spec)
    exo_bands = OrderedDict(
        (c, _decompose(train.exogenous[c], cfg.levels, spec))
        for c in wiring_channels(wiring))
    base_seed = tcfg.seed if tcfg.seed is not None else 0

    def train_band(idx):
        band = cfg.band_names[idx]
        stats = OrderedDict()
        stats["sop"] = zscore_stats(sop_bands[idx])
        stats["target"] = zscore_stats(tgt_bands[idx])
        for chan, _ in wiring[band]:
            stats[chan] = zscore_stats(exo_bands[chan][idx])
        design = _band_design(idx, band, wiring, stats, sop_bands, exo_bands)
        target = zscore_apply(tgt_bands[idx], stats["target"])
        sizes = [design.shape[1]] + cfg.hidden + [target.shape[1]]
        seed = base_seed + idx
        model = mlp.mlp_new(sizes, seed)
        model, hist = mlp.fit(model, design, target, tcfg.replace(seed=seed))
        _lgr.debug("Band %s: %s, best val loss %.4g at epoch %d",
                   band, model, hist.val_loss[hist.best_epoch],
                   hist.best_epoch)
        return model, stats

    nbands = len(cfg.band_names)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(train_band, range(nbands)))
    else:
        results = [train_band(i) for i in range(nbands)]
    band_stats = OrderedDict(
        (b, res[1]) for b, res in zip(cfg.band_names, results))
    bundle = ForecasterBundle(cfg, wiring, [r[0] for r in results],
                              band_stats, spec)
    _lgr.info("Trained %s forecaster on %d samples (weather: %s)",
              cfg.scale, len(train), bundle.channels or "none")
    return bundle

def predict(bundle, sop_window, exo_windows=None):
    """Forecast the next ``H`` values

    Args:
        bundle (ForecasterBundle): Trained forecaster
        sop_window (array): The last ``W`` SOP values
        exo_windows (dict): channel -> ``W`` weather values for every wired
            channel

    Returns:
        ndarray: ``H`` forecast values
    """
    window = np.asarray(sop_window, dtype=np.float64)
    if window.ndim != 1:
        raise DimensionError("predict expects a single window")
    return bundle.predict_batch(window, exo_windows)

def forecast_ahead(bundle, history, steps, exogenous=None):
    """Roll a forecaster forward, feeding forecasts back as history

    Args:
        bundle: :class:`ForecasterBundle` or :class:`PlainAnn`
        history (array): At least ``W`` past values; the last sample is the
            most recent one
        steps (int): Number of future values to produce
        exogenous (dict): channel -> weather values on the same grid,
            starting with ``history[0]`` and extending far enough into the
            future to cover every window

    Returns:
        ndarray: ``steps`` forecast values
    """
    cfg = bundle.config
    wlen, hlen = cfg.window, cfg.horizon
    buf = list(np.asarray(history, dtype=np.float64))
    if len(buf) < wlen:
        raise InsufficientDataError(
            "Need %d history values, got %d"%(wlen, len(buf)))
    nhist = len(buf)
    channels = getattr(bundle, "channels", [])
    lag = hlen if cfg.exo_span == "target" else 0
    while len(buf) - nhist < steps:
        orig = len(buf)
        window = np.array(buf[orig - wlen:orig])
        exo_win = OrderedDict()
        for chan in channels:
            vals = np.asarray((exogenous or {}).get(chan, []), dtype=float)
            lo, hi = orig - wlen + lag, orig + lag
            if vals.size < hi:
                raise CoverageError(
                    "Weather channel %s covers %d samples; %d needed"%(
                        chan, vals.size, hi))
            exo_win[chan] = vals[lo:hi]
        buf.extend(bundle.predict(window, exo_win))
    return np.array(buf[nhist:nhist + steps])

def bundle_from_json(document):
    """Rebuild a :class:`ForecasterBundle` from its JSON document"""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except ValueError as exc:
            raise ModelLoadError("Bundle document is not valid JSON: %s"%exc)
    if not isinstance(document, dict):
        raise ModelLoadError("Bundle document must be a JSON object")
    version = document.get("format_version", None)
    if version is None:
        raise ModelLoadError("Bundle document has no format_version")
    if str(version) != FORMAT_VERSION:
        raise VersionMismatchError(
            "Bundle format version %s is not supported (expected %s)"%(
                version, FORMAT_VERSION))
    try:
        cfg = ForecastConfig(**document["config"])
        wiring = OrderedDict(
            (b, [tuple(p) for p in v]) for b, v in document["wiring"].items())
        models = [mlp.load_model(m) for m in document["band_models"]]
        stats = OrderedDict(
            (b, OrderedDict((r, ZScore(float(s[0]), float(s[1])))
                            for r, s in roles.items()))
            for b, roles in document["band_stats"].items())
        spec = dwt.WaveletSpec(document.get("wavelet", "db5"))
        return ForecasterBundle(cfg, wiring, models, stats, spec)
    except ModelLoadError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ModelLoadError("Malformed bundle document: %r"%exc)

def write_bundle(bundle, filename):
    """Write a forecaster bundle document"""
    bundle.write_json(filename)
    _lgr.info("Wrote %s forecaster to %s", bundle.config.scale, filename)

def read_bundle(filename):
    """Load a forecaster bundle document"""
    try:
        document = read_json(filename)
    except ValueError as exc:
        raise ModelLoadError("%s is not a valid bundle document: %s"%(
            filename, exc))
    return bundle_from_json(document)

class PlainAnn(JSONSerializer):
    """Single network mapping a raw window to the horizon"""

    format_version = FORMAT_VERSION

    def __init__(self, config, model, input_stats, target_stats):
        self.config = config
        self.model = model
        self.input_stats = ZScore(*input_stats)
        self.target_stats = ZScore(*target_stats)
        if (model.sizes[0] != config.window or
                model.sizes[-1] != config.horizon):
            raise DimensionError(
                "Plain network sizes %s do not match W=%d, H=%d"%(
                    model.sizes, config.window, config.horizon))

    @property
    def channels(self):
        return []

    def predict_batch(self, inputs, exogenous=None):
        xwin = np.asarray(inputs, dtype=np.float64)
        single = xwin.ndim == 1
        xwin = np.atleast_2d(xwin)
        if xwin.shape[-1] != self.config.window:
            raise DimensionError("Expected windows of length %d"%
                                 self.config.window)
        out = self.model.forward(zscore_apply(xwin, self.input_stats))
        out = zscore_invert(out, self.target_stats)
        return out[0] if single else out

    def predict(self, sop_window, exo_windows=None):
        return plain_ann_predict(self, sop_window)

    def predict_dataset(self, dataset):
        if dataset.empty:
            return np.empty((0, self.config.horizon))
        return self.predict_batch(dataset.inputs)

    def to_json(self):
        doc = OrderedDict()
        doc["format_version"] = self.format_version
        doc["config"] = self.config.to_json()
        doc["model"] = self.model.to_json()
        doc["input_stats"] = list(self.input_stats)
        doc["target_stats"] = list(self.target_stats)
        return doc

def train_plain_ann(train, cfg, tcfg=None):
    """Train the reference network without wavelet decomposition"""
    if train.empty:
        raise InsufficientDataError("Cannot train on an empty dataset")
    tcfg = tcfg or mlp.TrainConfig()
    in_stats = zscore_stats(train.inputs)
    tgt_stats = zscore_stats(train.future)
    seed = tcfg.seed if tcfg.seed is not None else 0
    model = mlp.mlp_new([cfg.window] + cfg.hidden + [cfg.horizon], seed)
    model, _ = mlp.fit(model, zscore_apply(train.inputs, in_stats),
                       zscore_apply(train.future, tgt_stats),
                       tcfg.replace(seed=seed))
    _lgr.info("Trained plain %s network on %d samples", cfg.scale, len(train))
    return PlainAnn(cfg.without_weather(), model, in_stats, tgt_stats)

def plain_ann_predict(model, window):
    """Forecast ``H`` values from one raw window"""
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 1:
        raise DimensionError("plain_ann_predict expects a single window")
    return model.predict_batch(window)
