# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring

"""
sopcast.wavelet.dwt Tests
"""

import json

import numpy as np
import pytest

from sopcast.data.series import UniformSeries
from sopcast.wavelet import dwt
from sopcast.utils.errors import (TooManyLevelsError, DimensionError,
                                  InvalidParameterError)
from sopcast.utils.tojson import SopcastJsonEncoder

@pytest.fixture(scope="module")
def db5():
    return dwt.db5_filters()

def test_filter_identities(db5):
    h, g = db5.lowpass, db5.highpass
    assert db5.filter_length == 10
    assert abs(h.sum() - np.sqrt(2.0)) <= 1.0e-12
    assert abs(np.sum(h * h) - 1.0) <= 1.0e-12
    assert abs(g.sum()) <= 1.0e-12
    signs = (-1.0) ** np.arange(10)
    assert np.allclose(g, signs * h[::-1], rtol=0.0, atol=1.0e-15)
    # Orthogonal to even shifts
    for shift in range(2, 10, 2):
        assert abs(np.dot(h[shift:], h[:-shift])) <= 1.0e-12

@pytest.mark.parametrize("n, levels, expected", [
    (36, 5, [9, 9, 10, 12, 15, 22]),
    (48, 5, [10, 10, 11, 13, 18, 28]),
    (2, 1, [5, 5]),
    (1024, 5, [40, 40, 72, 135, 262, 516])])
def test_coeff_lengths(n, levels, expected):
    assert dwt.coeff_lengths(n, levels) == expected

@pytest.mark.parametrize("n, levels", [(1, 1), (36, 0), (0, 3)])
def test_coeff_lengths_infeasible(n, levels):
    with pytest.raises(TooManyLevelsError):
        dwt.coeff_lengths(n, levels)

def test_band_names():
    assert dwt.band_names(5) == ["A5", "D5", "D4", "D3", "D2", "D1"]
    assert dwt.band_names(1) == ["A1", "D1"]

def test_constant_signal(db5):
    approx, detail = dwt.dwt_step(np.full(36, 3.0), db5)
    assert approx.size == detail.size == 22
    assert np.allclose(approx, 3.0 * np.sqrt(2.0), rtol=0.0, atol=1.0e-10)
    assert np.max(np.abs(detail)) <= 1.0e-10
    pyr = dwt.wavedec(np.full(36, 3.0), 5, db5)
    assert np.allclose(pyr.approx, 3.0 * np.sqrt(2.0) ** 5, atol=1.0e-9)
    for band in pyr.details:
        assert np.max(np.abs(band)) <= 1.0e-9

def test_ramp_interior(db5):
    """Details of a linear signal vanish away from the boundaries"""
    pyr = dwt.wavedec(np.arange(512.0), 2, db5)
    assert np.max(np.abs(pyr.band("D1")[8:-8])) <= 1.0e-8
    assert np.max(np.abs(pyr.band("D2")[10:-10])) <= 1.0e-8

def test_step_round_trip(db5):
    sig = np.random.default_rng(4).normal(size=48)
    approx, detail = dwt.dwt_step(sig, db5)
    rec = dwt.idwt_step(approx, detail, 48, db5)
    assert rec.shape == (48,)
    assert np.max(np.abs(rec - sig)) <= 1.0e-10

def test_idwt_errors(db5):
    approx, detail = dwt.dwt_step(np.arange(36.0), db5)
    with pytest.raises(DimensionError):
        dwt.idwt_step(approx, detail[:-1], 36, db5)
    with pytest.raises(DimensionError):
        dwt.idwt_step(approx, detail, 40, db5)
    with pytest.raises(TooManyLevelsError):
        dwt.dwt_step([1.0], db5)

@pytest.mark.parametrize("n", [36, 48, 257, 1024, 2048])
def test_perfect_reconstruction(db5, n):
    rng = np.random.default_rng(n)
    sig = rng.normal(0.0, 10.0, n)
    pyr = dwt.wavedec(sig, 5, db5)
    assert pyr.band_lengths == dwt.coeff_lengths(n, 5)
    assert pyr.original_length == n
    rec = dwt.waverec(pyr)
    assert rec.shape == (n,)
    assert np.max(np.abs(rec - sig)) <= 1.0e-10

@pytest.mark.parametrize("levels", [1, 2, 3, 4])
def test_reconstruction_levels(db5, levels):
    sig = np.random.default_rng(levels).normal(size=100)
    rec = dwt.waverec(dwt.wavedec(sig, levels, db5))
    assert np.max(np.abs(rec - sig)) <= 1.0e-10

def test_stacked_windows(db5):
    """A stack of windows decomposes row by row"""
    sigs = np.random.default_rng(9).normal(size=(4, 36))
    pyr = dwt.wavedec(sigs, 5, db5)
    assert pyr.approx.shape == (4, 9)
    single = dwt.wavedec(sigs[2], 5, db5)
    for stacked, one in zip(pyr.bands, single.bands):
        assert np.allclose(stacked[2], one, rtol=0.0, atol=1.0e-12)
    assert np.max(np.abs(dwt.waverec(pyr) - sigs)) <= 1.0e-10

def test_linearity(db5):
    rng = np.random.default_rng(12)
    xsig, ysig = rng.normal(size=(2, 48))
    pxy = dwt.wavedec(2.0 * xsig - 3.0 * ysig, 5, db5)
    px = dwt.wavedec(xsig, 5, db5)
    py = dwt.wavedec(ysig, 5, db5)
    for bxy, bx, by in zip(pxy.bands, px.bands, py.bands):
        assert np.allclose(bxy, 2.0 * bx - 3.0 * by, rtol=0.0,
                           atol=1.0e-12)

def test_zero_pyramid(db5):
    bands = [np.zeros(k) for k in dwt.coeff_lengths(36, 5)]
    pyr = dwt.CoefficientPyramid.from_bands(bands, 36, db5)
    rec = dwt.waverec(pyr)
    assert rec.shape == (36,)
    assert np.all(rec == 0.0)

def test_pyramid_bands(db5):
    sig = np.random.default_rng(1).normal(size=36)
    pyr = dwt.wavedec(sig, 5, db5)
    assert pyr.names == dwt.band_names(5)
    assert pyr.band("D1") is pyr.details[0]
    assert pyr.band("A5") is pyr.approx
    with pytest.raises(InvalidParameterError):
        pyr.band("D6")
    zeroed = pyr.with_band("D1", 0.0)
    assert np.all(zeroed.band("D1") == 0.0)
    assert np.array_equal(zeroed.band("D2"), pyr.band("D2"))
    assert not np.all(pyr.band("D1") == 0.0)
    with pytest.raises(InvalidParameterError):
        pyr.with_band("X1", 0.0)

def test_pyramid_inconsistent(db5):
    bands = [np.zeros(k) for k in dwt.coeff_lengths(36, 5)]
    bands[3] = np.zeros(11)
    with pytest.raises(DimensionError):
        dwt.CoefficientPyramid.from_bands(bands, 36, db5)

def test_too_many_levels(db5):
    with pytest.raises(TooManyLevelsError):
        dwt.wavedec([1.0], 1, db5)
    with pytest.raises(TooManyLevelsError):
        dwt.wavedec(np.arange(36.0), 0, db5)
    with pytest.raises(DimensionError):
        dwt.wavedec(1.0, 1, db5)

def test_json_dump(db5):
    pyr = dwt.wavedec(np.arange(36.0), 5, db5)
    out = json.loads(json.dumps(pyr.to_json(), cls=SopcastJsonEncoder))
    assert out["levels"] == 5
    assert out["original_length"] == 36
    assert list(out["bands"].keys()) == dwt.band_names(5)
    assert len(out["bands"]["D1"]) == 22

def test_read_only_input(db5):
    values = UniformSeries(0, 1.0, np.arange(36.0)).values
    assert not values.flags.writeable
    pyr = dwt.wavedec(values, 5, db5)
    assert pyr.band_lengths == [9, 9, 10, 12, 15, 22]
    approx, detail = dwt.dwt_step(values, db5)
    assert np.allclose(dwt.idwt_step(approx, detail, 36, db5), values)
    assert np.allclose(dwt.waverec(pyr, db5), values)

@pytest.mark.parametrize("n", [256, 1024])
def test_energy_interior(db5, n):
    """Coefficient energy matches signal energy away from the edges"""
    tval = np.arange(n, dtype=np.float64)
    width = n / 12.0
    bump = np.exp(-((tval - n / 2.0) / width) ** 2)
    signal = bump * (np.sin(2.0 * np.pi * tval / 37.0) +
                     0.5 * np.cos(2.0 * np.pi * tval / 7.0) + 2.0)
    pyr = dwt.wavedec(signal, 5, db5)
    energy = sum(np.sum(b * b) for b in pyr.bands)
    total = np.sum(signal * signal)
    assert abs(energy - total) <= 0.01 * total
