# -*- coding: utf-8 -*-

"""\
sopcast
=======

Weather-adaptive, multi-scale forecasting of state-of-polarization (SOP)
change in aerial optical fibers: db5 multiresolution decomposition, per-band
neural forecasters with weather inputs, short/long-term fusion, baselines and
an evaluation harness.

"""

from .config import get_config
from .version import version
