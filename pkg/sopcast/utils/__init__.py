# -*- coding: utf-8 -*-

"""
Low-level utilities used by the other sopcast packages. Modules within utils
must only depend on external libraries or other modules within utils; they
must not import modules from other sopcast packages.

.. currentmodule:: sopcast.utils
.. autosummary::
   :nosignatures:

   ~struct.Struct
   ~tojson.JSONSerializer
   errors
   osutils
"""

from .struct import Struct
