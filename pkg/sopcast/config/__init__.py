# -*- coding: utf-8 -*-

"""
``sopcast.config`` configures the behavior of the sopcast library using YAML
based configuration files and sets up logging.

.. currentmodule:: sopcast.config
.. autosummary::
   :nosignatures:

   ~config.get_config
   ~config.reload_config
   ~config.reset_default_config
   ~config.load_config_file
"""

# pylint: disable=unused-import
from .config import (get_config, reload_config,
                     reset_default_config, load_config_file,
                     SopcastCfg)
