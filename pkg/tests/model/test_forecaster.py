# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

"""
sopcast.model.forecaster Tests
"""

from collections import OrderedDict

import numpy as np
import pytest

from sopcast.data.series import UniformSeries
from sopcast.data.windows import make_windows, zscore_stats, zscore_apply
from sopcast.model import forecaster as fc
from sopcast.model.mlp import TrainConfig
from sopcast.wavelet import dwt
from sopcast.utils.errors import (InvalidParameterError, DimensionError,
                                  InsufficientDataError, CoverageError,
                                  ModelLoadError, VersionMismatchError)

class OracleModel(object):
    """Band model returning fixed outputs"""

    def __init__(self, outputs):
        self.outputs = outputs

    def forward(self, design):
        assert design.shape[0] == self.outputs.shape[0]
        return self.outputs

@pytest.fixture
def dataset(weather_factory):
    rng = np.random.default_rng(21)
    tval = np.arange(300.0)
    sop = UniformSeries(0, 1.0, 211.0 + 20.0 * np.sin(tval / 9.0) +
                        rng.normal(0.0, 0.5, tval.size))
    return make_windows(sop, weather_factory(0, 1.0, 300), 36, 12)

@pytest.fixture
def quick():
    return TrainConfig(max_epochs=3, seed=4)

def test_config_presets():
    windy = fc.ForecastConfig.windy()
    assert (windy.window, windy.horizon, windy.levels) == (36, 12, 5)
    assert windy.exogenous == ["wind_gust"]
    calm = fc.ForecastConfig.calm()
    assert calm.exogenous == [] and calm.policy == "none"
    long_term = fc.ForecastConfig.long_term()
    assert (long_term.window, long_term.horizon) == (48, 24)
    assert long_term.step == 1800.0
    assert long_term.exogenous == ["temperature", "humidity"]
    assert long_term.band_lengths == [10, 10, 11, 13, 18, 28]
    assert windy.without_weather().exogenous == []
    node = dict(scale="long", window=48, horizon=24, step=1800, levels=5)
    assert fc.ForecastConfig.from_config(node).step == 1800.0

@pytest.mark.parametrize("kwargs", [
    dict(scale="medium"), dict(window=12, horizon=12),
    dict(exogenous=["pressure"]), dict(policy="best"),
    dict(hidden=[0]), dict(exo_span="past")])
def test_config_invalid(kwargs):
    with pytest.raises(InvalidParameterError):
        fc.ForecastConfig(**kwargs)

def test_oracle_reconstruction(dataset):
    """Exact band coefficients reproduce the future values"""
    cfg = fc.ForecastConfig.calm()
    spec = dwt.db5_filters()
    tgt_bands = dwt.wavedec(dataset.targets, 5, spec).bands
    sop_bands = dwt.wavedec(dataset.inputs, 5, spec).bands
    models, stats = [], OrderedDict()
    for name, sband, tband in zip(cfg.band_names, sop_bands, tgt_bands):
        stats[name] = OrderedDict([("sop", zscore_stats(sband)),
                                   ("target", zscore_stats(tband))])
        models.append(OracleModel(zscore_apply(tband, stats[name]["target"])))
    bundle = fc.ForecasterBundle(cfg, fc.empty_wiring(cfg), models, stats)
    pred = bundle.predict_dataset(dataset)
    assert pred.shape == dataset.future.shape
    assert np.max(np.abs(pred - dataset.future)) <= 1.0e-8

def test_train_calm(dataset, quick):
    cfg = fc.ForecastConfig.calm().replace(hidden=[8])
    bundle = fc.train_forecaster(dataset, cfg, tcfg=quick)
    assert bundle.channels == []
    assert len(bundle.band_models) == 6
    for blen, model in zip(cfg.band_lengths, bundle.band_models):
        assert model.sizes == [blen, 8, blen]
    pred = bundle.predict(dataset.inputs[0])
    assert pred.shape == (12,)
    assert np.all(np.isfinite(pred))
    assert np.allclose(bundle.predict_dataset(dataset)[0], pred)

def test_train_windy(dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[8])
    bundle = fc.train_forecaster(dataset, cfg, tcfg=quick)
    assert bundle.channels == ["wind_gust"]
    wired = [b for b, inputs in bundle.wiring.items() if inputs]
    assert len(wired) == 1
    band = wired[0]
    idx = cfg.band_names.index(band)
    assert bundle.band_models[idx].sizes[0] == 2 * cfg.band_lengths[idx]
    assert "wind_gust" in bundle.band_stats[band]
    with pytest.raises(InvalidParameterError):
        bundle.predict(dataset.inputs[0])
    gust = dataset.exogenous["wind_gust"][0]
    assert bundle.predict(dataset.inputs[0],
                          dict(wind_gust=gust)).shape == (12,)

def test_train_deterministic(dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[4])
    first = fc.train_forecaster(dataset, cfg, tcfg=quick)
    second = fc.train_forecaster(dataset, cfg, tcfg=quick, workers=3)
    assert first.encode() == second.encode()

def test_explicit_wiring(dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[4],
                                            policy="approximation")
    bundle = fc.train_forecaster(dataset, cfg, tcfg=quick)
    assert bundle.wiring["A5"] == [("wind_gust", "A5")]
    wiring = dict(D1=[("wind_gust", "D2")])
    with pytest.raises(InvalidParameterError):
        fc.train_forecaster(dataset, cfg, wiring, tcfg=quick)
    wiring = dict(D1=[("humidity", "D1")])
    with pytest.raises(InvalidParameterError):
        fc.train_forecaster(dataset, cfg, wiring, tcfg=quick)

def test_train_errors(dataset, quick):
    with pytest.raises(InsufficientDataError):
        fc.train_forecaster(dataset.take([]), fc.ForecastConfig.calm(),
                            tcfg=quick)
    with pytest.raises(DimensionError):
        fc.train_forecaster(dataset, fc.ForecastConfig.long_term(),
                            tcfg=quick)

def test_bundle_json(tmpdir, dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[6])
    bundle = fc.train_forecaster(dataset, cfg, tcfg=quick)
    fname = str(tmpdir.join("bundle.json"))
    fc.write_bundle(bundle, fname)
    loaded = fc.read_bundle(fname)
    assert loaded.wiring == bundle.wiring
    assert loaded.config.to_json() == cfg.to_json()
    exo = dataset.exogenous
    assert np.array_equal(loaded.predict_batch(dataset.inputs, exo),
                          bundle.predict_batch(dataset.inputs, exo))
    doc = bundle.to_json()
    doc["format_version"] = "2"
    with pytest.raises(VersionMismatchError):
        fc.bundle_from_json(doc)
    with pytest.raises(ModelLoadError):
        fc.bundle_from_json("[]")
    broken = tmpdir.join("broken.json")
    broken.write("{\"format_version\": ")
    with pytest.raises(ModelLoadError):
        fc.read_bundle(str(broken))
    del doc["band_stats"]
    doc["format_version"] = fc.FORMAT_VERSION
    with pytest.raises(ModelLoadError):
        fc.bundle_from_json(doc)

def test_forecast_ahead(dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[4])
    bundle = fc.train_forecaster(dataset, cfg, tcfg=quick)
    history = dataset.inputs[0]
    gust = np.linspace(5.0, 9.0, 100)
    out = fc.forecast_ahead(bundle, history, 30, dict(wind_gust=gust))
    assert out.shape == (30,)
    first = bundle.predict(history, dict(wind_gust=gust[12:48]))
    assert np.allclose(out[:12], first)
    second = bundle.predict(np.concatenate((history[12:], first)),
                            dict(wind_gust=gust[24:60]))
    assert np.allclose(out[12:24], second)
    with pytest.raises(CoverageError):
        fc.forecast_ahead(bundle, history, 30, dict(wind_gust=gust[:70]))
    with pytest.raises(InsufficientDataError):
        fc.forecast_ahead(bundle, history[:30], 12, dict(wind_gust=gust))

def test_plain_ann(dataset, quick):
    cfg = fc.ForecastConfig.windy().replace(hidden=[8])
    ann = fc.train_plain_ann(dataset, cfg, quick)
    assert ann.channels == []
    assert ann.model.sizes == [36, 8, 12]
    assert ann.predict_dataset(dataset).shape == (len(dataset), 12)
    pred = fc.plain_ann_predict(ann, dataset.inputs[5])
    assert np.allclose(pred, ann.predict_dataset(dataset)[5])
    ahead = fc.forecast_ahead(ann, dataset.inputs[0], 20)
    assert ahead.shape == (20,)
    with pytest.raises(DimensionError):
        fc.plain_ann_predict(ann, dataset.inputs[:2])

def test_constant_series(weather_factory):
    """A constant SOP history forecasts the same constant"""
    level = 200.0
    sop = UniformSeries(0, 1.0, np.full(300, level))
    dset = make_windows(sop, weather_factory(0, 1.0, 300), 36, 12)
    tcfg = TrainConfig(max_epochs=20, seed=3)
    calm = fc.train_forecaster(dset, fc.ForecastConfig.calm().replace(
        hidden=[6]), tcfg=tcfg)
    assert np.allclose(calm.predict_dataset(dset), level, rtol=0.0,
                       atol=1.0e-6)
    ann = fc.train_plain_ann(dset, fc.ForecastConfig.calm().replace(
        hidden=[6]), tcfg)
    assert np.allclose(ann.predict_dataset(dset), level, rtol=0.0,
                       atol=1.0e-6)
    windy = fc.train_forecaster(dset, fc.ForecastConfig.windy().replace(
        hidden=[6]), tcfg=tcfg)
    assert np.allclose(windy.predict_dataset(dset), level, rtol=0.01)
