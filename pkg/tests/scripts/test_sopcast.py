# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

"""
sopcast command-line Tests
"""

import json
import argparse

import pandas as pd
import pytest

from sopcast.config import config
from sopcast.scripts.core import parse_override
from sopcast.scripts.sopcast import main

#: Overrides that keep training fast
FAST = ["-s", "forecast.short.stride=1200", "-s", "forecast.short.hidden=[8]",
        "-s", "forecast.long.hidden=[8]", "-s", "train.max_epochs=3"]

@pytest.fixture
def dataset(tmpdir):
    outdir = str(tmpdir.join("data"))
    assert main(["synth", "-o", outdir, "-d", "3", "--seed", "5"]) == 0
    return tmpdir.join("data")

def _data_args(dataset):
    return ["--sop", str(dataset.join("sop.csv")),
            "--weather", str(dataset.join("weather.csv"))]

def test_parse_override():
    assert parse_override("seed=3") == ("sopcast.seed", 3)
    assert parse_override("sopcast.forecast.short.hidden=[8, 4]") == (
        "sopcast.forecast.short.hidden", [8, 4])
    assert parse_override("fusion.threshold=null") == (
        "sopcast.fusion.threshold", None)
    key, value = parse_override("fusion.threshold=1.0e9")
    assert key == "sopcast.fusion.threshold"
    assert isinstance(value, float) and value == 1.0e9
    assert parse_override("synth.start_time='2021'")[1] == "2021"
    with pytest.raises(argparse.ArgumentTypeError):
        parse_override("seed")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_override("=3")

@pytest.mark.parametrize("argv, status", [
    (["--help"], 0), (["--version"], 0), (["train", "--help"], 0),
    ([], 1), (["fly"], 1), (["synth", "--days", "many"], 1),
    (["synth", "-s", "no_equals_sign"], 1)])
def test_usage(argv, status):
    assert main(argv) == status

def test_missing_input(tmpdir):
    argv = ["train", "--sop", str(tmpdir.join("none.csv")),
            "--weather", str(tmpdir.join("none.csv")),
            "-o", str(tmpdir)]
    assert main(argv) == 2

def test_bad_input(tmpdir):
    sop = tmpdir.join("sop.csv")
    sop.write("timestamp,sop_rad_per_s\n0,1.0\n")
    argv = ["decompose", "--sop", str(sop)]
    assert main(argv) == 2

def test_synth(dataset, tmpdir):
    frame = pd.read_csv(str(dataset.join("sop.csv")))
    assert len(frame) == 3 * 86400 + 1
    again = str(tmpdir.join("again"))
    assert main(["synth", "-o", again, "-d", "3", "--seed", "5"]) == 0
    assert tmpdir.join("again", "weather.csv").read() == \
        dataset.join("weather.csv").read()

def test_cfg(tmpdir):
    outfile = tmpdir.join("sopcast.yaml")
    argv = ["cfg", "-f", str(outfile), "-s", "forecast.short.window=40",
            "--seed", "9"]
    assert main(argv) == 0
    cfg = config.load_config_file(str(outfile))
    assert cfg.sopcast.forecast.short.window == 40
    assert cfg.sopcast.seed == 9
    assert main(argv) == 0
    assert len(tmpdir.listdir()) == 2

def test_config_file(tmpdir, dataset, capsys):
    cfgfile = tmpdir.join("user.yaml")
    cfgfile.write("forecast:\n  short:\n    levels: 3\n")
    argv = ["decompose", "-c", str(cfgfile), "--sop",
            str(dataset.join("sop.csv"))]
    assert main(argv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["levels"] == 3
    assert list(doc["bands"]) == ["A3", "D3", "D2", "D1"]

def test_decompose(tmpdir, dataset, capsys):
    sop = str(dataset.join("sop.csv"))
    assert main(["decompose", "--sop", sop]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["levels"] == 5
    assert doc["original_length"] == 36
    assert len(doc["bands"]["D1"]) == 22
    outfile = str(tmpdir.join("pyramid.json"))
    assert main(["decompose", "--sop", sop, "-n", "48", "-l", "2",
                 "-o", outfile]) == 0
    with open(outfile) as fh:
        doc = json.load(fh)
    assert doc["original_length"] == 48
    assert list(doc["bands"]) == ["A2", "D2", "D1"]

def test_correlate(tmpdir, dataset):
    outfile = str(tmpdir.join("corr.csv"))
    argv = (["correlate", "--scale", "long", "-o", outfile, "--plot"] +
            _data_args(dataset))
    assert main(argv) == 0
    frame = pd.read_csv(outfile)
    assert len(frame) == 18
    assert set(frame["channel"]) == {"wind_gust", "temperature", "humidity"}
    assert tmpdir.join("correlations_long.png").check()

def test_train_forecast(tmpdir, dataset):
    models = str(tmpdir.join("models"))
    argv = ["train", "-o", models, "--seed", "2"] + FAST + \
        _data_args(dataset)
    assert main(argv) == 0
    assert tmpdir.join("models", "forecaster_short.json").check()
    assert tmpdir.join("models", "forecaster_long.json").check()
    outfile = str(tmpdir.join("short.csv"))
    argv = ["forecast", "-m", models, "-o", outfile] + _data_args(dataset)
    assert main(argv) == 0
    frame = pd.read_csv(outfile)
    assert len(frame) == 12
    argv = ["forecast", "--mode", "adaptive", "-m", models, "-o", outfile,
            "-s", "fusion.threshold=1.0e9", "--at",
            "2021-03-19T12:00:00Z"] + _data_args(dataset)
    assert main(argv) == 0
    frame = pd.read_csv(outfile)
    assert len(frame) == 691
    assert frame["timestamp"][0] == "2021-03-19T12:00:00Z"
    assert set(frame["provenance"]) == {"long-term"}
    argv = ["forecast", "--at", "2021-03-18T00:00:10Z", "-m", models,
            "-o", outfile] + _data_args(dataset)
    assert main(argv) == 2

@pytest.mark.slow
def test_eval_synthetic(tmpdir):
    outdir = tmpdir.join("reports")
    argv = ["eval", "--synthetic", "-o", str(outdir), "--seeds", "1",
            "--plot", "-s", "synth.duration_days=3",
            "-s", "harness.test_fraction=0.3"] + FAST
    assert main(argv) == 0
    for name in ("report_short.json", "report_long.json",
                 "report_short.txt", "overlay_long.csv",
                 "overlay_short.png"):
        assert outdir.join(name).check()
    with open(str(outdir.join("report_short.json"))) as fh:
        doc = json.load(fh)
    assert [r["method"] for r in doc["rows"]] == [
        "windy", "calm", "ann", "moving_average"]
    assert doc["data_descriptor"]["source"] == "synthetic"

@pytest.mark.slow
def test_reproducible_run(tmpdir):
    """synth, train and eval twice with one seed give identical files"""
    outputs = []
    for run in ("first", "second"):
        base = tmpdir.join(run)
        data = base.join("data")
        assert main(["synth", "-o", str(data), "-d", "3",
                     "--seed", "8"]) == 0
        assert main(["train", "-o", str(base.join("models")), "--seed", "8"] +
                    FAST + _data_args(data)) == 0
        assert main(["eval", "-o", str(base.join("reports")), "--seeds", "8",
                     "-s", "harness.test_fraction=0.3"] +
                    FAST + _data_args(data)) == 0
        names = [("models", "forecaster_short.json"),
                 ("models", "forecaster_long.json"),
                 ("reports", "report_short.json"),
                 ("reports", "report_long.json"),
                 ("reports", "report_short.txt"),
                 ("reports", "report_long.txt")]
        outputs.append([base.join(*name).read_binary() for name in names])
    assert outputs[0] == outputs[1]
