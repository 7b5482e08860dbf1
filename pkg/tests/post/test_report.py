# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

"""
sopcast.post.report Tests
"""

import json

import numpy as np
import pandas as pd
import pytest

from sopcast.post.report import EvalReport
from sopcast.utils.errors import InvalidParameterError, DimensionError

@pytest.fixture
def report():
    rep = EvalReport("short", seed=[1, 2],
                     data_descriptor=dict(source="unit-test"))
    truth = np.array([100.0, 200.0])
    for seed, err in ((1, 1.0), (2, 3.0)):
        rep.add_result(seed, "windy", truth, truth + err)
        rep.add_result(seed, "calm", truth, truth + 2.0 * err)
        rep.add_result(seed, "moving_average", truth, truth + 4.0)
    rep.add_overlay("windy", [0.0, 1.0], truth, truth + 1.0)
    return rep.finalize()

def test_rows(report):
    assert report.methods == ["windy", "calm", "moving_average"]
    assert report.row("windy")["rmse"] == 2.0
    assert report.row("calm")["rmse"] == 4.0
    assert report.row("windy")["mape"] == pytest.approx(1.5)
    assert len(report.per_seed["1"]) == 3
    assert report.per_seed["2"][0]["rmse"] == 3.0
    with pytest.raises(KeyError):
        report.row("ann")

def test_improvements(report):
    assert report.proposed == "windy"
    assert list(report.improvements.keys()) == ["calm", "moving_average"]
    assert report.improvements["calm"]["rmse"] == 50.0
    assert report.improvements["moving_average"]["rmse"] == 50.0

def test_no_proposed():
    rep = EvalReport("long")
    rep.add_result(0, "ann", [1.0], [2.0])
    assert rep.finalize().improvements == {}
    assert rep.proposed == "long_term"

def test_invalid():
    with pytest.raises(InvalidParameterError):
        EvalReport("medium")
    rep = EvalReport("short")
    with pytest.raises(InvalidParameterError):
        rep.add_result(0, "arima", [1.0], [1.0])
    with pytest.raises(DimensionError):
        rep.add_overlay("calm", [0.0], [1.0, 2.0], [1.0, 2.0])

def test_table(report):
    text = report.render_table()
    lines = text.splitlines()
    assert lines[0] == "Short-term forecasting accuracy (seeds: 1, 2)"
    assert "RMSE (rad/s)" in text
    windy = [l for l in lines if l.startswith("windy")][0]
    assert windy.split() == ["windy", "2.0000", "1.5000"]
    assert "Improvement of windy:" in text
    assert "over calm" in text

def test_frames(report):
    frame = report.to_frame()
    assert list(frame["method"]) == report.methods
    overlay = report.overlay_frame()
    assert list(overlay.columns) == ["timestamp", "truth", "prediction",
                                     "method"]
    assert list(overlay["method"]) == ["windy", "windy"]
    assert overlay["timestamp"][1] == "1970-01-01T00:00:01Z"
    assert EvalReport("long").overlay_frame().empty

def test_write(tmpdir, report):
    paths = report.write(str(tmpdir.join("out")))
    assert sorted(paths) == ["json", "overlay", "table"]
    with open(paths["json"]) as fh:
        doc = json.load(fh)
    assert doc["scale"] == "short"
    assert doc["seed"] == [1, 2]
    assert doc["data_descriptor"] == dict(source="unit-test")
    assert [r["method"] for r in doc["rows"]] == report.methods
    assert "calm" in doc["improvements"]
    overlay = pd.read_csv(paths["overlay"])
    assert list(overlay["prediction"]) == [101.0, 201.0]
    with open(paths["table"]) as fh:
        assert fh.read() == report.render_table()

def test_write_deterministic(tmpdir, report):
    first = report.write(str(tmpdir.join("a")))
    second = report.write(str(tmpdir.join("b")))
    for key in first:
        with open(first[key]) as fh1, open(second[key]) as fh2:
            assert fh1.read() == fh2.read()
