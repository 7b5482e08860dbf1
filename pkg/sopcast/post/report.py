# -*- coding: utf-8 -*-

"""\
Evaluation reports
------------------

An :class:`EvalReport` collects the accuracy of every forecasting method on
one scale. It is written as a JSON document, as an aligned plain-text table
rendered from the ``report_table.txt`` template and as a plot-ready overlay
CSV with the columns ``timestamp,truth,prediction,method``.
"""

import os
import logging
from collections import OrderedDict

import numpy as np
import pandas as pd

from ..utils import osutils
from ..utils.errors import InvalidParameterError, DimensionError
from ..utils.tojson import JSONSerializer
from ..config.jinja2wrappers import SopcastTemplates
from ..data.series import format_timestamps
from ..io.csvfiles import write_frame
from .metrics import rmse, mape, improvement

_lgr = logging.getLogger(__name__)

#: Method names that may appear in a report
METHODS = ("windy", "calm", "long_term", "ann_dwt", "ann", "moving_average")

#: Method whose improvement over the others is reported, per scale
PROPOSED = {"short": "windy", "long": "long_term"}

class EvalReport(JSONSerializer):
    """Accuracy table of one forecasting scale

    Attributes:
        scale (str): ``short`` or ``long``
        rows (list): ``{method, rmse, mape}`` entries in report order;
            values are means over the training seeds
        per_seed (OrderedDict): seed -> rows of that seed alone
        improvements (OrderedDict): method -> ``{rmse, mape}`` percentage
            improvement of the proposed method over that method
        seed (list): Training seeds
        data_descriptor (OrderedDict): Provenance of the evaluated data
    """

    _json_public_ = ["scale", "rows", "improvements", "seed",
                     "data_descriptor", "per_seed"]

    def __init__(self, scale, seed=None, data_descriptor=None):
        if scale not in PROPOSED:
            raise InvalidParameterError("Unknown report scale %r"%scale)
        self.scale = scale
        self.seed = list(seed or [])
        self.data_descriptor = OrderedDict(data_descriptor or {})
        self.per_seed = OrderedDict()
        self.rows = []
        self.improvements = OrderedDict()
        #: method -> (timestamps, truth, prediction) used for overlays
        self.overlays = OrderedDict()

    @property
    def proposed(self):
        return PROPOSED[self.scale]

    @property
    def methods(self):
        return [r["method"] for r in self.rows]

    def row(self, method):
        """Return the row of ``method``"""
        for row in self.rows:
            if row["method"] == method:
                return row
        raise KeyError(method)

    def add_result(self, seed, method, truth, pred):
        """Score one method trained with one seed"""
        if method not in METHODS:
            raise InvalidParameterError("Unknown method %r"%method)
        entry = OrderedDict([("method", method),
                             ("rmse", rmse(truth, pred)),
                             ("mape", mape(truth, pred))])
        self.per_seed.setdefault(str(seed), []).append(entry)
        _lgr.info("%s/%s seed %s: RMSE %.4f rad/s, MAPE %.4f%%",
                  self.scale, method, seed, entry["rmse"], entry["mape"])
        return entry

    def add_overlay(self, method, timestamps, truth, pred):
        """Keep a forecast trace for overlay output"""
        timestamps = np.ravel(timestamps)
        truth = np.ravel(truth)
        pred = np.ravel(pred)
        if not timestamps.size == truth.size == pred.size:
            raise DimensionError("Overlay arrays differ in length")
        self.overlays[method] = (timestamps, truth, pred)

    def finalize(self):
        """Average the per-seed rows and compute the improvements"""
        methods = []
        for rows in self.per_seed.values():
            for row in rows:
                if row["method"] not in methods:
                    methods.append(row["method"])
        self.rows = []
        for method in methods:
            scores = [r for rows in self.per_seed.values()
                      for r in rows if r["method"] == method]
            self.rows.append(OrderedDict([
                ("method", method),
                ("rmse", float(np.mean([r["rmse"] for r in scores]))),
                ("mape", float(np.mean([r["mape"] for r in scores])))]))
        self.improvements = OrderedDict()
        if self.proposed in methods:
            ours = self.row(self.proposed)
            for row in self.rows:
                if row["method"] == self.proposed:
                    continue
                self.improvements[row["method"]] = OrderedDict([
                    ("rmse", improvement(row["rmse"], ours["rmse"])),
                    ("mape", improvement(row["mape"], ours["mape"]))])
        return self

    def to_frame(self):
        """Table with columns ``method, rmse, mape``"""
        return pd.DataFrame(self.rows, columns=["method", "rmse", "mape"])

    def overlay_frame(self):
        """Long-format overlay table of every stored forecast trace"""
        frames = [pd.DataFrame(OrderedDict([
            ("timestamp", format_timestamps(ts)),
            ("truth", truth),
            ("prediction", pred),
            ("method", method)]))
                  for method, (ts, truth, pred) in self.overlays.items()]
        if not frames:
            return pd.DataFrame(
                columns=["timestamp", "truth", "prediction", "method"])
        return pd.concat(frames, ignore_index=True)

    def render_table(self, templates=None):
        """Aligned plain-text table of the report"""
        tmpl = templates or SopcastTemplates()
        return tmpl.render_template("report_table.txt", **self._table_context())

    def _table_context(self):
        return dict(scale=self.scale, rows=self.rows,
                    improvements=self.improvements, proposed=self.proposed,
                    seed=self.seed)

    def write(self, outdir, prefix="report"):
        """Write the JSON, text and overlay outputs into ``outdir``

        Returns:
            OrderedDict: kind -> path of every written file
        """
        outdir = osutils.ensure_directory(outdir)
        paths = OrderedDict([
            ("json", os.path.join(outdir, "%s_%s.json"%(prefix, self.scale))),
            ("table", os.path.join(outdir, "%s_%s.txt"%(prefix, self.scale))),
            ("overlay", os.path.join(
                outdir, "overlay_%s.csv"%self.scale))])
        self.write_json(paths["json"])
        SopcastTemplates().write_template(
            paths["table"], "report_table.txt", **self._table_context())
        write_frame(self.overlay_frame(), paths["overlay"])
        _lgr.info("Wrote %s-term report to %s", self.scale, paths["json"])
        return paths
