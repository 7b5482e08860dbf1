# -*- coding: utf-8 -*-

"""\
Daubechies-5 discrete wavelet transform
---------------------------------------

Single-level and multilevel decimated DWT with symmetric (half-point) boundary
extension. Filters come from :mod:`pywt`; the pyramid bookkeeping (band
lengths, band naming, trimming on reconstruction) lives here.

Every operation acts on the last axis, so a stack of windows with shape
``(n_samples, n)`` is transformed in one call.

Bands are always ordered ``[A_J, D_J, ..., D_1]``; ``D_1`` is the finest.
"""

import logging
from collections import OrderedDict

import numpy as np
import pywt

from ..utils.errors import (TooManyLevelsError, DimensionError,
                            InvalidParameterError)
from ..utils.tojson import JSONSerializer

_lgr = logging.getLogger(__name__)

#: Boundary extension used by every transform
BOUNDARY_MODE = "symmetric"

class WaveletSpec(object):
    """Orthogonal wavelet filter bank

    ``lowpass`` (h) and ``highpass`` (g) are the analysis filters in the
    orientation ``a[k] = sum_m h[m] x[2k + m]``; the synthesis filters are
    their time reverses. ``g[k] = (-1)**k * h[L-1-k]``.
    """

    def __init__(self, name="db5", mode=BOUNDARY_MODE):
        self.name = name
        self.mode = mode
        #: Underlying :class:`pywt.Wavelet`
        self.wavelet = pywt.Wavelet(name)
        if not self.wavelet.orthogonal:
            raise InvalidParameterError(
                "Wavelet %s is not orthogonal"%name)
        dec_lo, dec_hi, rec_lo, rec_hi = [
            np.array(f, dtype=np.float64) for f in self.wavelet.filter_bank]
        self.lowpass = rec_lo
        self.highpass = rec_hi
        self.synthesis_lowpass = dec_lo
        self.synthesis_highpass = dec_hi
        for arr in (self.lowpass, self.highpass,
                    self.synthesis_lowpass, self.synthesis_highpass):
            arr.setflags(write=False)

    def __repr__(self):
        return "<WaveletSpec: %s, %d taps, mode=%s>"%(
            self.name, self.filter_length, self.mode)

    @property
    def filter_length(self):
        return self.lowpass.size

def db5_filters():
    """Return the 10-tap Daubechies-5 filter bank"""
    return WaveletSpec("db5")

def _spec(spec):
    return spec if spec is not None else db5_filters()

def _next_length(nlen, flen):
    return (nlen + flen - 1) // 2

def signal_lengths(n, levels, filter_length=10):
    """Signal length entering every level: ``[n_0, n_1, ..., n_J]``"""
    n, levels = int(n), int(levels)
    if levels < 1:
        raise TooManyLevelsError("Decomposition needs at least one level")
    if n < 2:
        raise TooManyLevelsError(
            "Signal of length %d cannot be decomposed"%n)
    lens = [n]
    for _ in range(levels):
        nlen = _next_length(lens[-1], filter_length)
        if nlen < 2:
            raise TooManyLevelsError(
                "Level %d of length %d is too short"%(len(lens), nlen))
        lens.append(nlen)
    return lens

def coeff_lengths(n, levels, filter_length=10):
    """Band lengths ``[A_J, D_J, ..., D_1]`` for a length-``n`` signal

    Each level maps ``len`` to ``floor((len + L - 1)/2)`` where ``L`` is the
    filter length.
    """
    lens = signal_lengths(n, levels, filter_length)
    return [lens[-1]] + lens[:0:-1]

def band_names(levels):
    """Band labels in storage order, e.g., ``["A5", "D5", ..., "D1"]``"""
    return ["A%d"%levels] + ["D%d"%j for j in range(levels, 0, -1)]

def dwt_step(signal, spec=None):
    """Single-level DWT along the last axis

    Args:
        signal (array): Input of length >= 2 along the last axis
        spec (WaveletSpec): Filter bank (default: db5)

    Returns:
        tuple: ``(approx, detail)`` arrays
    """
    spec = _spec(spec)
    # pywt rejects read-only buffers such as series values
    arr = np.array(signal, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] < 2:
        raise TooManyLevelsError(
            "DWT step needs at least 2 samples along the last axis")
    approx, detail = pywt.dwt(arr, spec.wavelet, mode=spec.mode, axis=-1)
    return approx, detail

def idwt_step(approx, detail, out_len, spec=None):
    """Single-level inverse DWT along the last axis

    Args:
        approx (array): Approximation coefficients
        detail (array): Detail coefficients, same shape as ``approx``
        out_len (int): Length of the reconstructed signal
        spec (WaveletSpec): Filter bank (default: db5)

    Returns:
        ndarray: Reconstructed signal of length ``out_len``
    """
    spec = _spec(spec)
    capp = np.array(approx, dtype=np.float64)
    cdet = np.array(detail, dtype=np.float64)
    if capp.shape != cdet.shape:
        raise DimensionError(
            "Approximation %s and detail %s shapes differ"%(
                capp.shape, cdet.shape))
    out_len = int(out_len)
    if out_len < 2 or _next_length(
            out_len, spec.filter_length) != capp.shape[-1]:
        raise DimensionError(
            "%d coefficients cannot reconstruct a signal of length %d"%(
                capp.shape[-1], out_len))
    rec = pywt.idwt(capp, cdet, spec.wavelet, mode=spec.mode, axis=-1)
    return rec[..., :out_len]

class CoefficientPyramid(JSONSerializer):
    """Multilevel decomposition of one window (or a stack of windows)

    Attributes:
        approx (ndarray): ``A_J`` coefficients
        details (list): ``[D_1, ..., D_J]``, finest first
        original_length (int): Length of the decomposed signal
    """

    def __init__(self, approx, details, original_length, spec=None):
        self.spec = _spec(spec)
        self.approx = np.asarray(approx, dtype=np.float64)
        self.details = [np.asarray(d, dtype=np.float64) for d in details]
        self.original_length = int(original_length)
        expected = coeff_lengths(self.original_length, self.levels,
                                 self.spec.filter_length)
        if self.band_lengths != expected:
            raise DimensionError(
                "Band lengths %s inconsistent with n=%d, J=%d (expected %s)"%(
                    self.band_lengths, self.original_length, self.levels,
                    expected))
        lead = self.approx.shape[:-1]
        if any(d.shape[:-1] != lead for d in self.details):
            raise DimensionError("Bands have inconsistent leading shapes")

    @classmethod
    def from_bands(cls, bands, original_length, spec=None):
        """Create a pyramid from bands ordered ``[A_J, D_J, ..., D_1]``"""
        bands = list(bands)
        return cls(bands[0], bands[:0:-1], original_length, spec)

    @property
    def levels(self):
        return len(self.details)

    @property
    def names(self):
        return band_names(self.levels)

    @property
    def bands(self):
        """List of bands in storage order ``[A_J, D_J, ..., D_1]``"""
        return [self.approx] + self.details[::-1]

    @property
    def band_lengths(self):
        return [b.shape[-1] for b in self.bands]

    def band(self, name):
        """Return a band by label (``A5``, ``D3``, ...)"""
        try:
            return self.bands[self.names.index(name)]
        except ValueError:
            raise InvalidParameterError("Unknown band: %s"%name)

    def with_band(self, name, values):
        """Return a copy with one band replaced"""
        idx = self.names.index(name) if name in self.names else None
        if idx is None:
            raise InvalidParameterError("Unknown band: %s"%name)
        bands = [b.copy() for b in self.bands]
        values = np.broadcast_to(np.asarray(values, dtype=np.float64),
                                 bands[idx].shape)
        bands[idx] = values.copy()
        return CoefficientPyramid.from_bands(
            bands, self.original_length, self.spec)

    def to_json(self):
        """Debug dump: ``{levels, original_length, bands: {A5: [...], ...}}``"""
        out = OrderedDict()
        out["levels"] = self.levels
        out["original_length"] = self.original_length
        out["bands"] = OrderedDict(
            (name, band) for name, band in zip(self.names, self.bands))
        return out

def wavedec(signal, levels, spec=None):
    """Multilevel DWT along the last axis

    Args:
        signal (array): Input signal(s)
        levels (int): Number of decomposition levels ``J``
        spec (WaveletSpec): Filter bank (default: db5)

    Returns:
        CoefficientPyramid: The decomposition
    """
    spec = _spec(spec)
    arr = np.array(signal, dtype=np.float64)
    if arr.ndim == 0:
        raise DimensionError("Cannot decompose a scalar")
    signal_lengths(arr.shape[-1], levels, spec.filter_length)
    details = []
    approx = arr
    for _ in range(int(levels)):
        approx, detail = dwt_step(approx, spec)
        details.append(detail)
    return CoefficientPyramid(approx, details, arr.shape[-1], spec)

def waverec(pyramid, spec=None):
    """Reconstruct the signal(s) from a :class:`CoefficientPyramid`"""
    spec = spec if spec is not None else pyramid.spec
    lens = signal_lengths(pyramid.original_length, pyramid.levels,
                          spec.filter_length)
    approx = pyramid.approx
    for lev in range(pyramid.levels, 0, -1):
        approx = idwt_step(approx, pyramid.details[lev - 1],
                           lens[lev - 1], spec)
    return approx
