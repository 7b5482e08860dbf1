# -*- coding: utf-8 -*-

from collections import OrderedDict

import numpy as np
import pytest

from sopcast.config import config as sopcast_config
from sopcast.data.series import UniformSeries, WeatherTable

def no_logging(*args, **kwargs):
    pass

def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: benchmark reproductions that train many networks")

@pytest.fixture(autouse=True)
def no_config(monkeypatch):
    monkeypatch.setattr(sopcast_config, "get_config",
                        sopcast_config.get_default_config)
    monkeypatch.setattr(sopcast_config, "configure_logging", no_logging)

def make_weather(start, step, nrows, seed=0):
    """Smooth random weather table on a uniform grid"""
    rng = np.random.default_rng(seed)
    tval = np.arange(nrows)
    return WeatherTable(start, step, OrderedDict([
        ("wind_gust", 6.0 + np.abs(np.cumsum(rng.normal(0.0, 0.5, nrows)))),
        ("temperature", 12.0 + 5.0 * np.sin(2.0 * np.pi * tval / 48.0)),
        ("humidity", 60.0 + 10.0 * np.cos(2.0 * np.pi * tval / 48.0)),
    ]))

@pytest.fixture
def sop_series():
    """Noisy 1 s SOP series of ten minutes"""
    rng = np.random.default_rng(7)
    tval = np.arange(601, dtype=np.float64)
    values = (211.0 + 20.0 * np.sin(2.0 * np.pi * tval / 120.0) +
              rng.normal(0.0, 1.0, tval.size))
    return UniformSeries("2021-05-26T00:00:00Z", 1.0, values, "rad/s")

@pytest.fixture
def weather_table():
    """One day of 30 min weather"""
    return make_weather("2021-05-26T00:00:00Z", 1800.0, 49)

@pytest.fixture
def weather_factory():
    """Builder for weather tables: ``(start, step, nrows, seed=0)``"""
    return make_weather

#: Reduced settings that keep training and evaluation fast
SMALL_SETTINGS = {
    "synth.duration_days": 3,
    "forecast.short.stride": 1200,
    "forecast.short.hidden": [8],
    "forecast.long.hidden": [8],
    "train.max_epochs": 5,
    "train.patience": 5,
    "harness.test_fraction": 0.3,
    "harness.seeds": [1],
}

def small_config(settings=None):
    """Default configuration with reduced settings applied"""
    cfg = sopcast_config.get_default_config()
    for key, value in (settings or SMALL_SETTINGS).items():
        cfg.sopcast.set_path(key, value)
    return cfg

@pytest.fixture(scope="session")
def small_settings():
    """Overrides used by :func:`small_config`"""
    return dict(SMALL_SETTINGS)

@pytest.fixture
def small_cfg():
    return small_config()
