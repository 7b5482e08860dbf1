# -*- coding: utf-8 -*-

"""
Benchmark harness and forecasting pipeline

.. currentmodule:: sopcast.run
.. autosummary::
   :nosignatures:

   ~benchmark.run_benchmark
   ~benchmark.Benchmark
   ~pipeline.train_bundles
   ~pipeline.run_forecast
"""
