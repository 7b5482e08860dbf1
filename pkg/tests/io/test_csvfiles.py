# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

"""
sopcast.io.csvfiles Tests
"""

import numpy as np
import pandas as pd
import pytest

from sopcast.io import csvfiles
from sopcast.data.series import UniformSeries, to_epoch
from sopcast.utils.errors import IngestionError

def _write(tmpdir, name, text):
    fname = tmpdir.join(name)
    fname.write(text)
    return str(fname)

def test_sop_rfc3339(tmpdir):
    fname = _write(tmpdir, "sop.csv", "\n".join([
        "timestamp,sop_rad_per_s",
        "2021-05-26T00:00:00Z,210.5",
        "2021-05-26T00:00:01Z,211.0",
        "2021-05-26T00:00:02Z,211.5", ""]))
    sop = csvfiles.read_sop_csv(fname)
    assert sop.start_time == to_epoch("2021-05-26T00:00:00Z")
    assert sop.step == 1.0
    assert sop.unit == "rad/s"
    assert list(sop.values) == [210.5, 211.0, 211.5]

def test_sop_epoch(tmpdir):
    fname = _write(tmpdir, "sop.csv", "\n".join([
        "timestamp,sop_rad_per_s", "1800,1.0", "3600,2.0", "5400,4.0", ""]))
    sop = csvfiles.read_sop_csv(fname)
    assert sop.start_time == 1800.0
    assert sop.step == 1800.0
    assert list(sop.values) == [1.0, 2.0, 4.0]

def test_same_instant(tmpdir):
    """Epoch and RFC 3339 stamps of one instant give the same series"""
    epoch = _write(tmpdir, "a.csv",
                   "timestamp,sop_rad_per_s\n60,1.0\n61,2.0\n")
    rfc = _write(tmpdir, "b.csv", "timestamp,sop_rad_per_s\n"
                 "1970-01-01T00:01:00Z,1.0\n1970-01-01T00:01:01Z,2.0\n")
    sop_a = csvfiles.read_sop_csv(epoch)
    sop_b = csvfiles.read_sop_csv(rfc)
    assert sop_a.start_time == sop_b.start_time == 60.0
    assert np.array_equal(sop_a.values, sop_b.values)

def test_mixed_timestamps(tmpdir):
    fname = _write(tmpdir, "sop.csv", "timestamp,sop_rad_per_s\n"
                   "60,1.0\n1970-01-01T00:01:01Z,2.0\n")
    with pytest.raises(IngestionError):
        csvfiles.read_sop_csv(fname)

def test_gap_repair(tmpdir):
    fname = _write(tmpdir, "sop.csv", "\n".join([
        "timestamp,sop_rad_per_s", "0,0.0", "1,", "2,2.0", "5,5.0",
        "6,6.0", ""]))
    sop = csvfiles.read_sop_csv(fname)
    assert len(sop) == 7
    assert np.allclose(sop.values, np.arange(7.0))

def test_long_gap(tmpdir):
    fname = _write(tmpdir, "sop.csv", "\n".join([
        "timestamp,sop_rad_per_s", "0,0.0", "6,6.0", "7,7.0", ""]))
    with pytest.raises(IngestionError):
        csvfiles.read_sop_csv(fname)
    fname = _write(tmpdir, "sop2.csv", "\n".join([
        "timestamp,sop_rad_per_s", "0,0.0", "6,6.0", "7,7.0", ""]))
    sop = csvfiles.read_sop_csv(fname, max_gap=5)
    assert len(sop) == 8

@pytest.mark.parametrize("text", [
    "time,sop_rad_per_s\n0,1.0\n1,2.0\n",
    "timestamp,sop_rad_per_s\n0,1.0\n",
    "timestamp,sop_rad_per_s\n1,1.0\n0,2.0\n",
    "timestamp,sop_rad_per_s\n0,1.0\n2,2.0\n3,3.0\n4.5,4.0\n",
    "timestamp,sop_rad_per_s\n0,a\n1,2.0\n",
    "timestamp,sop_rad_per_s\n0,1.0\n1,2.0\n2,\n",
    ""])
def test_bad_sop(tmpdir, text):
    fname = _write(tmpdir, "sop.csv", text)
    with pytest.raises(IngestionError):
        csvfiles.read_sop_csv(fname)

def test_weather(tmpdir):
    fname = _write(tmpdir, "weather.csv", "\n".join([
        "timestamp,wind_gust,temperature,humidity,pressure",
        "0,5.0,10.0,60.0,1013.0",
        "1800,7.0,11.0,,1012.0",
        "3600,9.0,12.0,70.0,1011.0", ""]))
    wtr = csvfiles.read_weather_csv(fname)
    assert wtr.step == 1800.0
    assert wtr.names == ["wind_gust", "temperature", "humidity", "pressure"]
    assert np.allclose(wtr["humidity"], [60.0, 65.0, 70.0])
    missing = _write(tmpdir, "bad.csv",
                     "timestamp,wind_gust,temperature\n0,1.0,2.0\n1,1.0,2.0\n")
    with pytest.raises(IngestionError):
        csvfiles.read_weather_csv(missing)

def test_write_read(tmpdir, sop_series, weather_table):
    sop_file = str(tmpdir.join("sop.csv"))
    wtr_file = str(tmpdir.join("weather.csv"))
    csvfiles.write_sop_csv(sop_series, sop_file)
    csvfiles.write_weather_csv(weather_table, wtr_file)
    frame = pd.read_csv(sop_file)
    assert list(frame.columns) == ["timestamp", "sop_rad_per_s"]
    assert frame["timestamp"][0] == "2021-05-26T00:00:00Z"
    sop = csvfiles.read_sop_csv(sop_file)
    assert sop.start_time == sop_series.start_time
    assert np.allclose(sop.values, sop_series.values, rtol=1.0e-11)
    wtr = csvfiles.read_weather_csv(wtr_file)
    assert wtr.names == weather_table.names
    assert np.allclose(wtr["wind_gust"], weather_table["wind_gust"],
                       rtol=1.0e-11)

def test_write_deterministic(tmpdir):
    ser = UniformSeries(0, 1.0, [0.1, 0.2, 1.0 / 3.0])
    first = str(tmpdir.join("a.csv"))
    second = str(tmpdir.join("b.csv"))
    csvfiles.write_sop_csv(ser, first)
    csvfiles.write_sop_csv(ser, second)
    with open(first) as fh1, open(second) as fh2:
        assert fh1.read() == fh2.read()
