# -*- coding: utf-8 -*-

"""\
Basic CLI Interface
-------------------

Defines the base classes that are used to build the CLI scripts.
"""

import re
import sys
import logging
import argparse

import yaml

from ..config import config
from ..version import version
from ..utils.errors import SopcastError

_lgr = logging.getLogger(__name__)

#: Decimal numbers, including the unsigned exponents YAML 1.1 reads as text
_NUMBER = re.compile(r"^[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")

class SopcastArgumentParser(argparse.ArgumentParser):
    """Argument parser that exits with status 1 on usage errors"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n"%(self.prog, message))

def parse_override(text):
    """Split a ``key=value`` override; the value is parsed as YAML scalar

    Keys are dotted paths below the ``sopcast`` root node, e.g.,
    ``forecast.short.window=36``.
    """
    key, sep, value = text.partition("=")
    key = key.strip()
    if not sep or not key:
        raise argparse.ArgumentTypeError(
            "expected KEY=VALUE, got %r"%text)
    if not key.startswith("sopcast."):
        key = "sopcast." + key
    try:
        parsed = yaml.safe_load(value)
    except yaml.YAMLError as exc:
        raise argparse.ArgumentTypeError(
            "cannot parse value of %s: %s"%(key, exc))
    if isinstance(parsed, str) and _NUMBER.match(value.strip()):
        parsed = float(parsed)
    return key, parsed

class SopcastScriptBase(object):
    """Base class for all sopcast CLI applications.

    Defines the common functionality for simple scripts and scripts with
    sub-commands that are used to access functionality from the library without
    writing additional python scripts.
    """

    #: Description of the CLI app used in help messages
    description = "sopcast CLI Application"
    #: Epilog for help messages
    epilog = "sopcast %s"%version

    #: Whether the common options belong to the main parser
    common_on_main = True

    script_levels = ["INFO", "DEBUG"]
    lib_levels = ["WARNING", "INFO", "DEBUG"]

    def __init__(self, name=None, args=None):
        """
        Args:
            name (str): Custom name used in messages
            args: Arguments (list or whitespace separated string) used
                instead of ``sys.argv``
        """
        #: Custom name when invoked from a python interface instead of command
        #: line
        self.name = name
        #: Options shared by the application and every sub-command
        self.common = self.common_options()
        #: Instance of the ArgumentParser used to parse command line arguments
        self.parser = SopcastArgumentParser(
            description=self.description,
            epilog=self.epilog,
            prog=name,
            parents=[self.common] if self.common_on_main else [])
        self.cli_options()
        if isinstance(args, str):
            args = args.split()
        #: Arguments provided by user at the command line
        self.args = self.parser.parse_args(args)
        #: Configuration used by this invocation
        self.cfg = None

    def common_options(self):
        """Parser holding the configuration, seed and logging options"""
        common = SopcastArgumentParser(add_help=False)
        common.add_argument(
            '-c', '--config', default=None,
            help="YAML configuration file merged over the defaults")
        common.add_argument(
            '-s', '--set', dest='overrides', action='append', default=[],
            type=parse_override, metavar="KEY=VALUE",
            help="override a configuration value (repeatable)")
        common.add_argument(
            '--seed', type=int, default=None,
            help="master seed (default: sopcast.seed)")
        verbosity = common.add_mutually_exclusive_group(required=False)
        verbosity.add_argument(
            '--quiet', action='store_true',
            help="disable informational messages to screen")
        verbosity.add_argument(
            '-v', '--verbose', action='count', default=0,
            help="increase verbosity of logging. Default: No")
        dolog = common.add_mutually_exclusive_group(required=False)
        dolog.add_argument('--no-log', action='store_true',
                           help="disable logging of script to file.")
        dolog.add_argument('--cli-logs', default=None,
                           help="name of the log file.")
        return common

    def cli_options(self):
        """Setup the command line options and arguments"""
        self.parser.add_argument(
            '--version', action='version',
            version="sopcast %s"%version)

    def load_config(self):
        """Merge the ``--config`` file, ``--set`` overrides and ``--seed``"""
        args = self.args
        cfg = config.get_config()
        if args.config:
            config.load_config_file(args.config, cfg)
        for key, value in args.overrides:
            cfg.set_path(key, value)
        if args.seed is not None:
            cfg.sopcast.seed = args.seed
        return cfg

    def __call__(self):
        """Execute the CLI application"""
        args = self.args
        self.cfg = self.load_config()
        log_to_file = self.cfg.sopcast.logging.log_to_file
        if args.cli_logs:
            log_to_file = True
        elif args.no_log:
            log_to_file = False
        self.setup_logging(log_to_file, args.cli_logs, args.verbose,
                           args.quiet)
        _lgr.info("sopcast %s", version)

    def setup_logging(self, log_to_file=True,
                      log_file=None,
                      verbose_level=0, quiet=False):
        """Setup logging for the script.

        Args:
            log_to_file (bool): If True, script will log to file
            log_file (path): Filename to log
            verbose_level (int): Level of verbosity
            quiet (bool): Only show errors on the console
        """
        script_levels = self.script_levels
        lib_levels = self.lib_levels
        log_cfg = self.cfg.sopcast.logging
        lggr_cfg = log_cfg.pylogger_options
        if quiet:
            lggr_cfg.handlers.console_sopcast.level = "ERROR"
            lggr_cfg.handlers.console_script.level = "ERROR"
        else:
            lggr_cfg.handlers.console_sopcast.level = (
                lib_levels[min(verbose_level, len(lib_levels)-1)])
            lggr_cfg.handlers.console_script.level = (
                script_levels[min(verbose_level, len(script_levels)-1)])
        log_cfg.log_to_file = log_to_file
        if log_to_file:
            log_cfg.log_file = (log_file or log_cfg.log_file)
        config.configure_logging(log_cfg)

        rcfiles = config.rcfiles_loaded()
        msg = ("Loaded configuration from files = %s"%rcfiles
               if rcfiles else
               "No configuration found; using defaults.")
        _lgr.debug(msg)

class SopcastSubCmdScript(SopcastScriptBase):
    """A CLI app with sub-commands."""

    common_on_main = False

    def cli_options(self):
        """Setup sub-parsers."""
        super(SopcastSubCmdScript, self).cli_options()
        self.subparsers = self.parser.add_subparsers(
            dest="command", metavar="COMMAND",
            help="Choose from one of the following sub-commands; use -h to see sub-command options")
        self.subparsers.required = True

    def add_subcommand(self, name, description, help_text):
        """Create a sub-command parser carrying the common options"""
        return self.subparsers.add_parser(
            name, description=description, help=help_text,
            parents=[self.common])

    def __call__(self):
        """Execute sub-command

        Returns:
            int: 0 on success, 2 on data, validation or missing file errors
        """
        try:
            super(SopcastSubCmdScript, self).__call__()
            self.args.func()
        except (SopcastError, OSError) as exc:
            _lgr.error("%s", exc)
            return 2
        return 0
