# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

import pytest

from sopcast.config import config
from sopcast.data import synth
from sopcast.run import pipeline

@pytest.fixture(scope="module")
def small_data():
    """Three days of synthetic SOP and weather"""
    return synth.generate(synth.SynthConfig(duration_days=3), seed=42)

@pytest.fixture(scope="module")
def model_dir(tmpdir_factory, small_data, small_settings):
    """Directory with short- and long-term bundles trained on ``small_data``"""
    cfg = config.get_default_config()
    for key, value in small_settings.items():
        cfg.sopcast.set_path(key, value)
    outdir = str(tmpdir_factory.mktemp("models"))
    pipeline.train_bundles(small_data[0], small_data[1], cfg, seed=7,
                           outdir=outdir)
    return outdir
