# -*- coding: utf-8 -*-

"""\
Band-wise correlation analysis
------------------------------

Decomposes the SOP input windows and every weather window of a dataset, pools
the coefficients of each band across samples and measures the Pearson
correlation between SOP and weather band by band. The correlations drive the
choice of which weather bands feed which band model.
"""

import logging
import warnings
from collections import OrderedDict

import numpy as np
import pandas as pd
from scipy import stats

from ..utils.errors import InvalidParameterError, InsufficientDataError
from ..utils.tojson import JSONSerializer
from ..wavelet import dwt
from ..io.csvfiles import write_frame

_lgr = logging.getLogger(__name__)

#: Wiring policies understood by :func:`select_exogenous_bands`
POLICIES = ("top1", "approximation", "none")

#: Relative variance below which a band is treated as constant
VAR_TOL = 1.0e-24

def pearson(xval, yval):
    """Pearson correlation with a zero-variance guard

    Returns:
        tuple: ``(r, degenerate)``; ``r`` is 0 when either input is constant
    """
    xval = np.ravel(np.asarray(xval, dtype=np.float64))
    yval = np.ravel(np.asarray(yval, dtype=np.float64))
    if xval.size != yval.size or xval.size < 2:
        raise InsufficientDataError(
            "Pearson correlation needs two equal-length arrays of >= 2 values")
    xvar = np.var(xval)
    yvar = np.var(yval)
    xscale = max(np.mean(xval ** 2), 1.0)
    yscale = max(np.mean(yval ** 2), 1.0)
    if xvar <= VAR_TOL * xscale or yvar <= VAR_TOL * yscale:
        return 0.0, True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rval = stats.pearsonr(xval, yval)[0]
    return float(np.clip(rval, -1.0, 1.0)), False

class BandCorrelations(JSONSerializer):
    """Pearson r per weather channel and band

    Attributes:
        bands (list): Band labels ``[A_J, D_J, ..., D_1]``
        values (OrderedDict): channel -> list of r in band order
        degenerate (OrderedDict): channel -> list of zero-variance flags
    """

    _json_public_ = ["bands", "values", "degenerate"]

    def __init__(self, bands, values, degenerate=None):
        self.bands = list(bands)
        self.values = OrderedDict(
            (k, [float(r) for r in v]) for k, v in values.items())
        self.degenerate = OrderedDict(
            (k, [bool(f) for f in (degenerate or {}).get(
                k, [False] * len(self.bands))])
            for k in self.values)
        for chan, rvals in self.values.items():
            if len(rvals) != len(self.bands):
                raise InvalidParameterError(
                    "Channel %s has %d correlations for %d bands"%(
                        chan, len(rvals), len(self.bands)))
            if any(abs(r) > 1.0 for r in rvals):
                raise InvalidParameterError(
                    "Correlations of %s fall outside [-1, 1]"%chan)

    @property
    def channels(self):
        return list(self.values.keys())

    def r(self, channel, band):
        """Correlation of ``channel`` with the SOP in ``band``"""
        return self.values[channel][self.bands.index(band)]

    def to_frame(self):
        """Long-format table with columns ``channel, band, r``"""
        rows = [(chan, band, rval)
                for chan, rvals in self.values.items()
                for band, rval in zip(self.bands, rvals)]
        return pd.DataFrame(rows, columns=["channel", "band", "r"])

    def write_csv(self, filename):
        """Write the ``channel,band,r`` CSV table"""
        write_frame(self.to_frame(), filename)

def band_correlations(dataset, channels=None, levels=5, spec=None):
    """Correlate SOP and weather windows band by band

    Args:
        dataset (WindowedDataset): Samples with exogenous windows
        channels (list): Weather channels to analyze (default: all present)
        levels (int): Decomposition depth ``J``
        spec (WaveletSpec): Filter bank

    Returns:
        BandCorrelations: One r per channel and band
    """
    if dataset.empty:
        raise InsufficientDataError("Cannot correlate an empty dataset")
    channels = dataset.channels if channels is None else list(channels)
    missing = [c for c in channels if c not in dataset.exogenous]
    if missing:
        raise InvalidParameterError(
            "Dataset has no exogenous channel(s): %s"%", ".join(missing))
    sop_bands = dwt.wavedec(dataset.inputs, levels, spec).bands
    names = dwt.band_names(levels)
    values = OrderedDict()
    flags = OrderedDict()
    for chan in channels:
        exo_bands = dwt.wavedec(dataset.exogenous[chan], levels, spec).bands
        pairs = [pearson(sband, eband)
                 for sband, eband in zip(sop_bands, exo_bands)]
        values[chan] = [p[0] for p in pairs]
        flags[chan] = [p[1] for p in pairs]
        _lgr.debug("Band correlations for %s: %s", chan, ", ".join(
            "%s=%.3f"%(n, r) for n, r in zip(names, values[chan])))
    return BandCorrelations(names, values, flags)

def select_exogenous_bands(corr, policy="top1"):
    """Decide which weather bands feed which band model

    Policies:

      - ``top1``: for every channel, the band with the largest ``|r|`` is
        wired into the SOP model of the same band; ties go to the coarsest
        band.
      - ``approximation``: every channel's approximation band feeds the
        approximation model.
      - ``none``: no weather inputs.

    Args:
        corr (BandCorrelations): Output of :func:`band_correlations`
        policy (str): Wiring policy

    Returns:
        OrderedDict: band label -> list of ``(channel, band)`` inputs, with an
        entry for every band
    """
    if policy not in POLICIES:
        raise InvalidParameterError(
            "Unknown wiring policy %r; expected one of %s"%(policy, POLICIES))
    wiring = OrderedDict((b, []) for b in corr.bands)
    if policy == "none":
        return wiring
    for chan in corr.channels:
        if policy == "approximation":
            band = corr.bands[0]
        else:
            # argmax returns the first maximum: bands are stored coarse first
            band = corr.bands[int(np.argmax(np.abs(corr.values[chan])))]
        wiring[band].append((chan, band))
    return wiring

def wiring_channels(wiring):
    """Sorted set of weather channels referenced by a wiring"""
    return sorted(set(chan for inputs in wiring.values()
                      for chan, _ in inputs))
