# -*- coding: utf-8 -*-

"""\
Benchmark harness
-----------------

Trains every forecasting method of a scale on the chronologically first part
of a dataset and scores it on the rest. Methods are ``method_*`` members of a
:class:`Benchmark` subclass and are collected by :class:`BenchmarkMeta`; the
row order of a report follows the order in which subclasses define them,
subclass methods first.
"""

import logging
from collections import OrderedDict

import numpy as np

from ..config import config
from ..utils.errors import InvalidParameterError, InsufficientDataError
from ..data.series import (ema_denoise, subsample, align, to_epoch,
                           format_timestamp, GRID_TOL)
from ..data.windows import make_windows
from ..model.mlp import TrainConfig
from ..model.forecaster import (ForecastConfig, train_forecaster,
                                train_plain_ann)
from ..model.baselines import MovingAverage
from ..post.report import EvalReport

_lgr = logging.getLogger(__name__)

class BenchmarkMeta(type):
    """Collect the ``method_*`` members of a benchmark class

    Populates the class attribute ``method_map`` (method name -> function).
    Methods defined by the class come before those inherited from its
    parents.
    """

    def __init__(cls, name, bases, cdict):
        super(BenchmarkMeta, cls).__init__(name, bases, cdict)
        parent = super(cls, cls)
        method_map = OrderedDict(
            (key[len("method_"):], value) for key, value in cdict.items()
            if key.startswith("method_"))
        for key, value in getattr(parent, "method_map", {}).items():
            method_map.setdefault(key, value)
        cls.method_map = method_map

class Benchmark(object, metaclass=BenchmarkMeta):
    """Methods shared by both forecasting scales

    Every ``method_<name>(train, seed)`` returns a predictor exposing
    ``predict_dataset``.
    """

    #: Scale tag of the produced report
    scale = None

    def __init__(self, fcfg, tcfg=None, workers=1, ma_window=None):
        """
        Args:
            fcfg (ForecastConfig): Geometry and weather channels of the scale
            tcfg (TrainConfig): Optimizer settings
            workers (int): Threads used to train band models
            ma_window (int): Moving-average window (default: ``W``)
        """
        self.fcfg = fcfg
        self.tcfg = tcfg or TrainConfig()
        self.workers = int(workers or 1)
        self.ma_window = ma_window

    def _train_bundle(self, train, fcfg, seed):
        return train_forecaster(
            train.select_channels(fcfg.exogenous), fcfg,
            tcfg=self.tcfg.replace(seed=seed), workers=self.workers)

    def method_ann(self, train, seed):
        """Plain network on the raw SOP window"""
        return train_plain_ann(train, self.fcfg, self.tcfg.replace(seed=seed))

    def method_moving_average(self, train, seed):
        """Trailing mean of the input window"""
        return MovingAverage(self.fcfg.window, self.fcfg.horizon,
                             self.ma_window)

    def __call__(self, train, test, seeds, data_descriptor=None):
        """Train and score every method for every seed

        Args:
            train (WindowedDataset): Training samples
            test (WindowedDataset): Test samples, later than every training
                sample
            seeds (list): Training seeds
            data_descriptor (dict): Provenance recorded in the report

        Returns:
            EvalReport: Seed-averaged report
        """
        if train.empty or test.empty:
            raise InsufficientDataError(
                "%s-term benchmark has %d training and %d test samples"%(
                    self.scale, len(train), len(test)))
        seeds = [int(s) for s in seeds]
        if not seeds:
            raise InvalidParameterError("At least one seed is required")
        report = EvalReport(self.scale, seeds, data_descriptor)
        truth = test.future
        # Non-overlapping forecasts for the overlay trace
        every = max(1, int(np.ceil(test.horizon / float(test.stride))))
        sel = np.arange(0, len(test), every)
        times = test.future_times[sel]
        for i, seed in enumerate(seeds):
            for name, method in self.method_map.items():
                _lgr.info("%s-term benchmark: %s (seed %d)",
                          self.scale, name, seed)
                predictor = method(self, train, seed)
                pred = predictor.predict_dataset(test)
                report.add_result(seed, name, truth, pred)
                if i == 0:
                    report.add_overlay(name, times, truth[sel], pred[sel])
        return report.finalize()

class ShortTermBenchmark(Benchmark):
    """Windy, Calm, plain network and moving average at 1 s"""

    scale = "short"

    def method_windy(self, train, seed):
        """Band models with wind-gust inputs"""
        return self._train_bundle(train, self.fcfg, seed)

    def method_calm(self, train, seed):
        """Band models on the SOP history alone"""
        return self._train_bundle(train, self.fcfg.without_weather(), seed)

class LongTermBenchmark(Benchmark):
    """LongTerm, SOP-only band models, plain network and moving average"""

    scale = "long"

    def method_long_term(self, train, seed):
        """Band models with temperature and humidity inputs"""
        return self._train_bundle(train, self.fcfg, seed)

    def method_ann_dwt(self, train, seed):
        """Band models on the SOP history alone at the long scale"""
        return self._train_bundle(train, self.fcfg.without_weather(), seed)

BENCHMARKS = OrderedDict([("short", ShortTermBenchmark),
                          ("long", LongTermBenchmark)])

def scale_series(sop, weather, fcfg):
    """SOP and weather on the sampling grid of one forecasting scale

    Args:
        sop (UniformSeries): SOP series; subsampled when ``fcfg.step`` is a
            multiple of its step
        weather (WeatherTable): Weather, interpolated onto the result grid
        fcfg (ForecastConfig): Scale configuration

    Returns:
        tuple: Aligned ``(sop, weather)``
    """
    ratio = fcfg.step / sop.step
    factor = int(round(ratio))
    if factor < 1 or abs(ratio - factor) > GRID_TOL * ratio:
        raise InvalidParameterError(
            "Forecast step %gs is not a multiple of the SOP step %gs"%(
                fcfg.step, sop.step))
    if factor > 1:
        sop = subsample(sop, factor)
    return align(sop, weather)

def split_time_of(sop, test_fraction=0.1, split_time=None):
    """Timestamp of the first test sample

    Defaults to the grid point leaving the last ``test_fraction`` of the
    series for testing.
    """
    if split_time is not None:
        return to_epoch(split_time)
    if not 0.0 < test_fraction < 1.0:
        raise InvalidParameterError(
            "test_fraction must be in (0, 1), got %r"%test_fraction)
    idx = int(round(len(sop) * (1.0 - test_fraction)))
    return sop.start_time + idx * sop.step

def split_windows(sop, weather, fcfg, split_time):
    """Chronological train/test datasets of one scale

    Training windows end before ``split_time``; test windows forecast values
    from ``split_time`` on, using the ``W`` samples before it as history.
    """
    pos = (split_time - sop.start_time) / sop.step
    idx = int(np.ceil(pos - GRID_TOL))
    if idx < fcfg.window or idx >= len(sop):
        raise InsufficientDataError(
            "Split at %s leaves no room for %s-term windows"%(
                format_timestamp(split_time), fcfg.scale))
    opts = dict(window=fcfg.window, horizon=fcfg.horizon,
                stride=fcfg.stride, channels=fcfg.exogenous,
                exo_span=fcfg.exo_span)
    train = make_windows(sop.islice(0, idx), weather.islice(0, idx), **opts)
    lo = idx - fcfg.window
    test = make_windows(sop.islice(lo), weather.islice(lo), **opts)
    if train.empty or test.empty:
        raise InsufficientDataError(
            "Not enough %s-term data: %d training and %d test samples"%(
                fcfg.scale, len(train), len(test)))
    return train, test

def run_scale(sop, weather, fcfg, tcfg=None, seeds=(42,), split_time=None,
              test_fraction=0.1, workers=1, ma_window=None,
              data_descriptor=None):
    """Benchmark one scale on a denoised SOP series

    Returns:
        EvalReport: Report of the scale given by ``fcfg.scale``
    """
    split = split_time_of(sop, test_fraction, split_time)
    sop_s, wtr_s = scale_series(sop, weather, fcfg)
    train, test = split_windows(sop_s, wtr_s, fcfg, split)
    desc = OrderedDict(data_descriptor or {})
    desc.update([
        ("step", sop_s.step),
        ("start", format_timestamp(sop_s.start_time)),
        ("end", format_timestamp(sop_s.end_time)),
        ("split", format_timestamp(split)),
        ("n_train", len(train)),
        ("n_test", len(test))])
    _lgr.info("%s-term benchmark: %d training and %d test samples, split %s",
              fcfg.scale, len(train), len(test), desc["split"])
    bench = BENCHMARKS[fcfg.scale](fcfg, tcfg, workers, ma_window)
    return bench(train, test, seeds, desc)

def run_benchmark(sop, weather, cfg=None, seeds=None, data_descriptor=None):
    """Benchmark both forecasting scales

    Args:
        sop (UniformSeries): Raw SOP series (1 s)
        weather (WeatherTable): Weather table (30 min)
        cfg (SopcastCfg): Configuration (default: :func:`get_config`)
        seeds (list): Training seeds (default: ``harness.seeds``)
        data_descriptor (dict): Provenance recorded in the reports

    Returns:
        tuple: ``(short, long)`` :class:`EvalReport` instances
    """
    cfg = cfg or config.get_config()
    node = cfg.sopcast
    hcfg = node.harness
    seeds = list(seeds if seeds is not None else hcfg.seeds)
    tcfg = TrainConfig.from_config(node.train)
    alpha = node.denoise.alpha
    desc = OrderedDict(data_descriptor or {})
    desc["denoise_alpha"] = alpha
    denoised = ema_denoise(sop, alpha)
    split = split_time_of(denoised, hcfg.test_fraction, hcfg.split_time)
    reports = []
    for scale in ("short", "long"):
        fcfg = ForecastConfig.from_config(node.forecast[scale])
        reports.append(run_scale(
            denoised, weather, fcfg, tcfg, seeds, split_time=split,
            workers=node.train.get("workers", 1),
            ma_window=hcfg.moving_average_window, data_descriptor=desc))
    return tuple(reports)
