# -*- coding: utf-8 -*-

"""
Metrics, evaluation reports and plotting

.. currentmodule:: sopcast.post
.. autosummary::
   :nosignatures:

   ~metrics.rmse
   ~metrics.mape
   ~report.EvalReport
   ~plots.ReportPlot
"""
