# -*- coding: utf-8 -*-

"""\
sopcast Plotting Utilities
--------------------------

Forecast overlays and band-correlation bar charts through
:class:`ReportPlot`. Every ``_plot_*`` method is also available without the
leading underscore; passing ``plotfile`` to it saves the figure with the Agg
backend instead of returning it.
"""

import os
import logging
from contextlib import contextmanager

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from ..utils import osutils

_lgr = logging.getLogger(__name__)

@contextmanager
def mpl_settings(backend="agg"):
    """Temporarily switch matplotlib settings for a plot"""
    cur_backend = plt.get_backend()
    if cur_backend.lower() != backend.lower():
        plt.switch_backend(backend)
    yield
    plt.switch_backend(cur_backend)

def make_plot_method(func):
    """Make a wrapper plot method"""
    def plot_wrapper(self, *args, plotfile=None, dpi=150, **kwargs):
        """%s

            plotfile: File to save plot (e.g., overlay_short.png)
            dpi: Resolution for saving plots (default=150)
        """
        if plotfile:
            osutils.ensure_directory(self.plotdir)
            with mpl_settings("agg"):
                out = func(self, *args, **kwargs)
                if out is None:
                    return None
                outfile = os.path.join(self.plotdir, plotfile)
                plt.savefig(outfile, dpi=dpi, bbox_inches='tight')
                _lgr.info("Saved figure: %s", outfile)
                plt.close(out[0])
                return outfile
        return func(self, *args, **kwargs)

    plot_wrapper.__doc__ = plot_wrapper.__doc__%func.__doc__
    plot_wrapper.__name__ = func.__name__[1:]
    return plot_wrapper

class PlotsMeta(type):
    """Provide interactive and non-interactive versions of plot methods.

    Methods starting with ``_plot_`` are wrapped so that they either return
    the ``(fig, ax)`` pair or, when a file name is given, save the figure.
    """

    def __new__(mcls, name, bases, cdict):
        keys = list(cdict.keys())
        for key in keys:
            if key.startswith("_plot_"):
                cdict[key[1:]] = make_plot_method(cdict[key])
        return super(PlotsMeta, mcls).__new__(mcls, name, bases, cdict)

class ReportPlot(object, metaclass=PlotsMeta):
    """Figures for evaluation reports and correlation analyses"""

    def __init__(self, plotdir="."):
        """
        Args:
            plotdir (path): Directory where figures are saved
        """
        self.plotdir = osutils.abspath(plotdir)

    def _plot_overlay(self, report, methods=None, max_points=2000):
        """Overlay ground truth and forecasts of an evaluation report

        Args:
            report (EvalReport): Report holding forecast traces
            methods (list): Methods to draw (default: all stored traces)
            max_points (int): Trailing number of points drawn per method
        """
        methods = methods or list(report.overlays.keys())
        if not methods:
            _lgr.error("Report has no forecast traces to plot")
            return None
        fig, ax = plt.subplots(figsize=(10, 4))
        truth_drawn = False
        for method in methods:
            tstamps, truth, pred = report.overlays[method]
            tstamps, truth, pred = [a[-max_points:]
                                    for a in (tstamps, truth, pred)]
            times = pd.to_datetime(tstamps, unit="s", utc=True)
            if not truth_drawn:
                ax.plot(times, truth, color="k", lw=1.2, label="measured")
                truth_drawn = True
            ax.plot(times, pred, lw=0.9, label=method)
        ax.set_xlabel("Time (UTC)")
        ax.set_ylabel("SOP change (rad/s)")
        ax.set_title("%s-term forecasts"%report.scale.capitalize())
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
        fig.autofmt_xdate()
        return (fig, ax)

    def _plot_correlations(self, corr):
        """Bar chart of |r| per band for every weather channel

        Args:
            corr (BandCorrelations): Band-wise correlations
        """
        nchan = len(corr.channels)
        if nchan == 0:
            _lgr.error("No correlations to plot")
            return None
        fig, ax = plt.subplots(figsize=(7, 4))
        xpos = np.arange(len(corr.bands))
        width = 0.8 / nchan
        for i, chan in enumerate(corr.channels):
            ax.bar(xpos + (i - 0.5 * (nchan - 1)) * width,
                   np.abs(corr.values[chan]), width, label=chan)
        ax.set_xticks(xpos)
        ax.set_xticklabels(corr.bands)
        ax.set_ylim(0.0, 1.0)
        ax.set_ylabel("|Pearson r|")
        ax.legend(loc="best")
        ax.grid(True, axis="y", alpha=0.3)
        return (fig, ax)
