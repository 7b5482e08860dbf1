# -*- coding: utf-8 -*-

"""
Multiresolution analysis with the Daubechies-5 wavelet

.. currentmodule:: sopcast.wavelet
.. autosummary::
   :nosignatures:

   ~dwt.db5_filters
   ~dwt.coeff_lengths
   ~dwt.wavedec
   ~dwt.waverec
"""

# pylint: disable=unused-import
from .dwt import (WaveletSpec, CoefficientPyramid, db5_filters,
                  coeff_lengths, band_names, dwt_step, idwt_step,
                  wavedec, waverec)
