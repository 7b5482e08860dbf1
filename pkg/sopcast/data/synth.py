# -*- coding: utf-8 -*-

"""\
Synthetic field-trial data
--------------------------

Generates a coupled pair of datasets standing in for field recordings:

  - weather at 30 min: temperature (diurnal sine plus AR(1) noise), humidity
    (anti-phase diurnal sine plus AR(1) noise) and wind gusts (baseline,
    afternoon-peaking diurnal sine, Poisson-timed bursts with exponential
    decay and AR(1) noise);

  - SOP rotation speed at 1 s: a weighted sum of the standardized
    interpolated weather, a wind-induced sway, a slow AR(1) drift and white
    noise, shifted and scaled to the configured mean and standard deviation.

The sway is a sinusoid whose amplitude scales with the gust speed relative
to its mean and whose instantaneous frequency is ``gust / sway_wavelength``,
clipped to periods between ``sway_min_period`` and ``sway_max_period``. It
lives at the 1 s scale only, so the gust channel carries information about
the next seconds that the SOP history alone does not.

Every random stream is spawned from one seed, so identical ``(cfg, seed)``
pairs give bit-identical data.
"""

import logging
from collections import namedtuple, OrderedDict

import numpy as np
from scipy import signal

from ..utils.errors import InvalidParameterError, InsufficientDataError
from ..utils.tojson import JSONSerializer
from .series import UniformSeries, WeatherTable, to_epoch

_lgr = logging.getLogger(__name__)

#: Population statistics of a series
SummaryStats = namedtuple("SummaryStats", ["mean", "std", "min", "max"])

SECONDS_PER_DAY = 86400.0

class SynthConfig(JSONSerializer):
    """Parameters of the synthetic generator"""

    _json_public_ = [
        "duration_days", "start_time", "weather_step", "sop_mean", "sop_std",
        "wind_gain", "temperature_gain", "humidity_gain", "sway_gain",
        "sway_wavelength", "sway_min_period", "sway_max_period", "drift_gain",
        "drift_time", "noise_std", "diurnal_period", "burst_rate",
        "burst_amplitude", "burst_decay", "wind_baseline",
        "wind_diurnal_amplitude", "temperature_mean", "temperature_amplitude", "humidity_mean",
        "humidity_amplitude", "weather_ar", "weather_noise"]

    #: Shortest admissible 1 s series (one short-term sample)
    min_short_samples = 48
    #: Shortest admissible 30 min series (one long-term sample)
    min_long_samples = 72

    def __init__(self, **kwargs):
        defaults = OrderedDict([
            ("duration_days", 10.0),
            ("start_time", "2021-03-18T00:00:00Z"),
            ("weather_step", 1800.0),
            ("sop_mean", 211.0),
            ("sop_std", 42.0),
            ("wind_gain", 0.25),
            ("temperature_gain", 1.0),
            ("humidity_gain", 0.4),
            ("sway_gain", 0.3),
            ("sway_wavelength", 900.0),
            ("sway_min_period", 40.0),
            ("sway_max_period", 240.0),
            ("drift_gain", 0.1),
            ("drift_time", 300.0),
            ("noise_std", 0.05),
            ("diurnal_period", SECONDS_PER_DAY),
            ("burst_rate", 6.0),
            ("burst_amplitude", 6.0),
            ("burst_decay", 5400.0),
            ("wind_baseline", 6.0),
            ("wind_diurnal_amplitude", 3.0),
            ("temperature_mean", 12.0),
            ("temperature_amplitude", 6.0),
            ("humidity_mean", 65.0),
            ("humidity_amplitude", 15.0),
            ("weather_ar", 0.9),
            ("weather_noise", 1.2),
        ])
        unknown = set(kwargs) - set(defaults)
        if unknown:
            raise InvalidParameterError(
                "Unknown synth parameter(s): %s"%", ".join(sorted(unknown)))
        defaults.update(kwargs)
        for key, val in defaults.items():
            setattr(self, key, val if key == "start_time" else float(val))
        gains = ("wind_gain", "temperature_gain", "humidity_gain", "sway_gain",
                 "drift_gain", "noise_std", "burst_rate", "burst_amplitude",
                 "wind_diurnal_amplitude")
        negative = [g for g in gains if getattr(self, g) < 0.0]
        if negative:
            raise InvalidParameterError(
                "Parameters must be >= 0: %s"%", ".join(negative))
        positive = ("weather_step", "sop_std", "drift_time",
                    "diurnal_period", "burst_decay", "duration_days",
                    "sway_wavelength", "sway_min_period", "sway_max_period")
        nonpos = [p for p in positive if not getattr(self, p) > 0.0]
        if nonpos:
            raise InvalidParameterError(
                "Parameters must be > 0: %s"%", ".join(nonpos))
        if not 0.0 <= self.weather_ar < 1.0:
            raise InvalidParameterError("weather_ar must be in [0, 1)")
        if self.sway_min_period > self.sway_max_period:
            raise InvalidParameterError(
                "sway_min_period must not exceed sway_max_period")

    @classmethod
    def from_config(cls, node):
        """Create from the ``sopcast.synth`` configuration node"""
        return cls(**OrderedDict(
            (k, node[k]) for k in cls._json_public_ if k in node))

    def replace(self, **kwargs):
        opts = self.to_json()
        opts.update(kwargs)
        return SynthConfig(**opts)

    @property
    def n_weather(self):
        """Number of weather rows; the duration snaps to the weather grid"""
        return int(np.floor(self.duration_days * SECONDS_PER_DAY /
                            self.weather_step)) + 1

    @property
    def n_sop(self):
        return int(round((self.n_weather - 1) * self.weather_step)) + 1

def _ar1(rng, nsamp, phi, sigma):
    """AR(1) sequence ``x[t] = phi*x[t-1] + sigma*e[t]``, stationary start"""
    eps = rng.standard_normal(nsamp)
    x0 = eps[0] * sigma / np.sqrt(1.0 - phi * phi)
    out, _ = signal.lfilter([sigma], [1.0, -phi], eps[1:], zi=[phi * x0])
    return np.concatenate(([x0], out))

def _standardize(values):
    std = values.std()
    return (values - values.mean()) / (std if std > 0.0 else 1.0)

def _sway(cfg, gust, phase0):
    """Gust-paced oscillation with amplitude proportional to the gust"""
    mean = gust.mean()
    if not mean > 0.0:
        return np.zeros_like(gust)
    freq = np.clip(gust / cfg.sway_wavelength,
                   1.0 / cfg.sway_max_period, 1.0 / cfg.sway_min_period)
    # Phase advances by the instantaneous frequency of each 1 s step
    phase = phase0 + 2.0 * np.pi * np.cumsum(freq)
    return (gust / mean) * np.sin(phase)

def generate(cfg=None, seed=42):
    """Generate SOP (1 s) and weather (30 min) data

    Args:
        cfg (SynthConfig): Generator settings
        seed (int): Master seed

    Returns:
        tuple: ``(sop, weather)`` as :class:`UniformSeries` and
        :class:`WeatherTable`
    """
    cfg = cfg or SynthConfig()
    n_w, n_s = cfg.n_weather, cfg.n_sop
    if n_s < cfg.min_short_samples or n_w < cfg.min_long_samples:
        raise InsufficientDataError(
            "Duration of %g days gives %d weather rows; at least %d needed"%(
                cfg.duration_days, n_w, cfg.min_long_samples))
    if not float(cfg.weather_step).is_integer():
        raise InvalidParameterError("weather_step must be whole seconds")

    streams = np.random.SeedSequence(seed).spawn(6)
    rng_temp, rng_hum, rng_gust, rng_drift, rng_noise, rng_sway = [
        np.random.default_rng(s) for s in streams]

    t_w = np.arange(n_w) * cfg.weather_step
    # Temperature peaks mid-afternoon, humidity in the early morning
    phase = 2.0 * np.pi * (t_w / cfg.diurnal_period - 0.375)
    temperature = (cfg.temperature_mean +
                   cfg.temperature_amplitude * np.sin(phase) +
                   _ar1(rng_temp, n_w, cfg.weather_ar, cfg.weather_noise))
    humidity = (cfg.humidity_mean -
                cfg.humidity_amplitude * np.sin(phase) +
                _ar1(rng_hum, n_w, cfg.weather_ar, 2.0 * cfg.weather_noise))
    humidity = np.clip(humidity, 0.0, 100.0)

    rate = cfg.burst_rate * cfg.weather_step / SECONDS_PER_DAY
    counts = rng_gust.poisson(rate, n_w)
    sizes = rng_gust.gamma(np.maximum(counts, 1), cfg.burst_amplitude)
    impulses = np.where(counts > 0, sizes, 0.0)
    decay = np.exp(-cfg.weather_step / cfg.burst_decay)
    bursts = signal.lfilter([1.0], [1.0, -decay], impulses)
    gust = np.maximum(
        cfg.wind_baseline + cfg.wind_diurnal_amplitude * np.sin(phase) +
        bursts +
        _ar1(rng_gust, n_w, cfg.weather_ar, 0.5 * cfg.weather_noise), 0.0)

    t_s = np.arange(n_s, dtype=np.float64)
    gust_s = np.interp(t_s, t_w, gust)
    temp_s = np.interp(t_s, t_w, temperature)
    hum_s = np.interp(t_s, t_w, humidity)
    phi = np.exp(-1.0 / cfg.drift_time)
    drift = _ar1(rng_drift, n_s, phi, np.sqrt(1.0 - phi * phi))
    noise = rng_noise.standard_normal(n_s)
    sway = _sway(cfg, gust_s, rng_sway.uniform(0.0, 2.0 * np.pi))

    raw = (cfg.wind_gain * _standardize(gust_s) +
           cfg.temperature_gain * _standardize(temp_s) +
           cfg.humidity_gain * _standardize(hum_s) +
           cfg.sway_gain * sway +
           cfg.drift_gain * _standardize(drift) +
           cfg.noise_std * noise)
    sop_vals = cfg.sop_mean + cfg.sop_std * _standardize(raw)

    start = to_epoch(cfg.start_time)
    sop = UniformSeries(start, 1.0, sop_vals, "rad/s")
    weather = WeatherTable(
        start, cfg.weather_step,
        OrderedDict([("wind_gust", gust), ("temperature", temperature),
                     ("humidity", humidity)]),
        units=dict(wind_gust="m/s", temperature="deg C", humidity="%RH"))
    _lgr.info("Generated %d SOP samples and %d weather rows (seed=%s)",
              n_s, n_w, seed)
    return sop, weather

def summary_stats(series):
    """Population mean, standard deviation, minimum and maximum"""
    vals = np.asarray(getattr(series, "values", series), dtype=np.float64)
    if vals.size == 0:
        raise InsufficientDataError("Statistics of an empty series")
    return SummaryStats(float(vals.mean()), float(vals.std()),
                        float(vals.min()), float(vals.max()))
