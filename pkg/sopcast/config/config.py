# -*- coding: utf-8 -*-

"""\
sopcast Configuration
~~~~~~~~~~~~~~~~~~~~~

The :mod:`~sopcast.config.config` module loads user configuration from YAML
files and provides a central location to configure the behavior of sopcast.
The configuration is stored in a :class:`SopcastCfg` dictionary that user
scripts may modify at runtime. Access to the configuration object is through
:func:`get_config`, which returns a fully populated instance built from the
package defaults merged with every configuration file found on the system.
This module also sets up logging (to the console and optionally to a log
file) during the initialization phase.
"""

import sys
import os
import os.path as pth
import copy
import logging
from logging.config import dictConfig
from ..utils.struct import Struct
from ..utils import osutils
from ..version import version

_rcfile_default = "sopcast.yaml"
_rcsys_var = "SOPCASTRC_SYSTEM"
_rcfile_var = "SOPCASTRC"

_config_banner = """\
# -*- mode: yaml -*-
#
# sopcast %(version)s
#
# Auto-generated on: %(timestamp)s
#

"""

def get_sopcast_root():
    """Return the per-user sopcast directory (``~/.sopcast``)"""
    if osutils.ostype() == "windows" and "APPDATA" in os.environ:
        return pth.join(os.environ["APPDATA"], "sopcast")
    return osutils.abspath("~/.sopcast/")

class SopcastCfg(Struct):
    """sopcast configuration object

    A (key, value) dictionary containing all the configuration data parsed from
    the configuration files. Obtain an instance via :func:`get_config` rather
    than instantiating this class directly.
    """

    def write_config(self, fh=sys.stdout):
        """Write configuration to file or standard output.

        Args:
            fh (handle): An open file handle
        """
        fh.write(_config_banner%{
            'timestamp': osutils.timestamp(),
            'version': version,
        })
        self.to_yaml(fh)
        fh.write("\n\n")

def search_cfg_files():
    """Search locations and return all possible configuration files.

    The following locations are searched, in order:

      - The path pointed by :envvar:`SOPCASTRC_SYSTEM`

      - The user's file :file:`~/.sopcast/sopcast.yaml` (or
        :file:`%APPDATA%/sopcast/sopcast.yaml` on Windows)

      - The path pointed by :envvar:`SOPCASTRC`, if defined.

      - The file :file:`sopcast.yaml` in the current working directory

    Returns:
        List of configuration files available
    """
    rcfiles = []

    sys_rc = os.environ.get(_rcsys_var, None)
    if sys_rc and pth.exists(sys_rc):
        rcfiles.append(sys_rc)

    home_rc = pth.join(get_sopcast_root(), _rcfile_default)
    if pth.exists(home_rc):
        rcfiles.append(home_rc)

    env_rc = os.environ.get(_rcfile_var, None)
    if env_rc and pth.exists(env_rc):
        rcfiles.append(env_rc)

    cwd_rc = pth.join(os.getcwd(), _rcfile_default)
    if pth.exists(cwd_rc) and cwd_rc not in rcfiles:
        rcfiles.append(cwd_rc)

    return rcfiles

def configure_logging(log_cfg=None):
    """Configure python logging.

    If ``log_cfg`` is None, then the basic configuration of python logging
    module is used. The file handler is only instantiated when logging to a
    file is requested.

    Args:
       log_cfg: The ``sopcast.logging`` node of :class:`SopcastCfg`
    """
    def get_default_log_file():
        """Set up default logging file if none provided"""
        logs_dir = osutils.ensure_directory(
            pth.join(get_sopcast_root(), "logs"))
        return pth.join(logs_dir, "sopcast.log")

    if log_cfg is None:
        logging.basicConfig()
        return

    log_to_file = log_cfg.log_to_file
    lggr_cfg = copy.deepcopy(log_cfg.pylogger_options)
    if log_to_file:
        log_filename = osutils.abspath(
            log_cfg.log_file or get_default_log_file())
        lggr_cfg.handlers.log_file.filename = log_filename
        for lname in ("sopcast", "sopcast.scripts"):
            handlers = lggr_cfg.loggers[lname].handlers
            if "log_file" not in handlers:
                handlers.append("log_file")
    else:
        lggr_cfg.handlers.pop("log_file", None)
        for lcfg in lggr_cfg.loggers.values():
            lcfg.handlers = [h for h in lcfg.handlers if h != "log_file"]
    dictConfig(lggr_cfg.to_dict())
    if log_to_file:
        logging.getLogger(__name__).debug(
            "Logging enabled to file: %s",
            lggr_cfg.handlers.log_file.filename)

def get_default_config():
    """Return a fresh instance of the default configuration

    This function does not read the ``sopcast.yaml`` files on the system, and
    returns the configuration shipped with the package.

    Returns:
        SopcastCfg: The default configuration
    """
    cdir = pth.dirname(__file__)
    default_yaml = pth.join(cdir, "default_config.yaml")
    return SopcastCfg.load_yaml(default_yaml)

def load_config_file(filename, base_cfg=None):
    """Merge a user configuration file on top of a configuration

    Args:
        filename (path): YAML file; either a full tree rooted at ``sopcast:``
            or the contents of that node
        base_cfg (SopcastCfg): Configuration updated in place (default: a
            fresh default configuration)

    Returns:
        SopcastCfg: The merged configuration
    """
    cfg = base_cfg if base_cfg is not None else get_default_config()
    user = SopcastCfg.load_yaml(osutils.abspath(filename))
    if "sopcast" not in user:
        user = SopcastCfg(sopcast=user)
    cfg.merge(user)
    return cfg

def _cfg_manager():
    """Configuration manager

    Creates an interface to initalize configuration and return the
    configuration instance that can be updated by the user.
    """
    config_files = [None]
    cfg = [None]

    def _init_config(base_cfg=None, init_logging=True):
        """Initialize configuration

        Loads :func:`get_default_config` and then merges all the configuration
        files available on the system (see :func:`search_cfg_files`).

        Args:
            base_cfg (SopcastCfg): A base configuration object that is updated
            init_logging (bool): If True, initializes logging

        Returns:
            SopcastCfg: Configuration object
        """
        cfg = base_cfg or get_default_config()

        rcfiles = search_cfg_files()
        for rcname in rcfiles:
            load_config_file(rcname, cfg)

        if init_logging:
            configure_logging(cfg.sopcast.logging)
            logger = logging.getLogger(__name__)
            msg = ("Loaded configuration from files = %s"%rcfiles
                   if rcfiles else
                   "No configuration found; using defaults.")
            logger.debug(msg)

        config_files[0] = rcfiles
        return cfg

    def _get_config(base_cfg=None, init_logging=False):
        """Get the configuration object

        On the first call, initializes the configuration object by parsing all
        available configuration files. Successive invocations return the same
        object that can be mutated by the user. The config dictionary can be
        reset by invoking :func:`~sopcast.config.config.reload_config`.

        Args:
            base_cfg (SopcastCfg): A base configuration object that is updated
            init_logging (bool): If True, initializes logging

        Returns:
            SopcastCfg: The configuration dictionary
        """
        if cfg[0] is None:
            cfg[0] = _init_config(base_cfg, init_logging)
        return cfg[0]

    def _reset_default_config():
        """Reset to default configuration

        Unlike :func:`~sopcast.config.config.reload_config`, this function
        does not load the configuration files.

        Returns:
            SopcastCfg: The configuration dictionary
        """
        cfg[0] = get_default_config()
        return cfg[0]

    def _reload_config(base_cfg=None):
        """Reset the configuration object

        Forces reloading of all the available configuration files and resets
        the modifications made by user scripts.

        Returns:
            SopcastCfg: The configuration dictionary
        """
        cfg[0] = _init_config(base_cfg, init_logging=False)
        return cfg[0]

    def _rcfiles_loaded():
        """Return a list of the configuration files that were loaded"""
        return config_files[0]

    return (_get_config, _reload_config,
            _reset_default_config, _rcfiles_loaded)

(get_config, reload_config,
 reset_default_config,
 rcfiles_loaded) = _cfg_manager()
