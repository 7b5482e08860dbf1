# -*- coding: utf-8 -*-

"""
Reading and writing SOP and weather CSV files

.. currentmodule:: sopcast.io
.. autosummary::
   :nosignatures:

   ~csvfiles.read_sop_csv
   ~csvfiles.read_weather_csv
   ~csvfiles.write_sop_csv
   ~csvfiles.write_weather_csv
"""

# pylint: disable=unused-import
from .csvfiles import (read_sop_csv, read_weather_csv, write_sop_csv,
                       write_weather_csv, write_frame)
