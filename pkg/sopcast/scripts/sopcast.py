# -*- coding: utf-8 -*-

"""\
sopcast command
---------------

"""

import sys
import os
import shutil
import logging
from collections import OrderedDict

from ..utils import osutils
from ..data.series import ema_denoise
from ..data.windows import make_windows
from ..io import csvfiles
from ..wavelet import dwt
from ..model.correlation import band_correlations
from ..post.plots import ReportPlot
from ..run import pipeline
from ..run.benchmark import run_benchmark, scale_series
from ..data import synth
from .core import SopcastSubCmdScript

_lgr = logging.getLogger(__name__)

class SopcastCmd(SopcastSubCmdScript):
    """CLI interface to sopcast.

    Provides command-line access to the forecasting pipeline without writing
    custom scripts. Every sub-command reads the merged configuration; flags
    override configuration values.

    Tasks defined:
        - cfg       - Dump the merged configuration
        - synth     - Write a synthetic SOP/weather dataset
        - train     - Train and save the short- and long-term forecasters
        - forecast  - Forecast from saved forecasters
        - eval      - Run the benchmark and write the evaluation reports
        - decompose - Dump the wavelet pyramid of a SOP window
        - correlate - Write the band-wise SOP/weather correlations
    """

    description = "SOP change forecasting"

    def cli_options(self):
        """Setup sub-commands for the sopcast application"""
        super(SopcastCmd, self).cli_options()
        cfg = self.add_subcommand(
            "cfg", "dump the merged sopcast configuration",
            "dump sopcast configuration")
        synth_cmd = self.add_subcommand(
            "synth", "Generate synthetic SOP (1 s) and weather (30 min) "
            "CSV files", "write a synthetic dataset")
        train = self.add_subcommand(
            "train", "Train the short-term (wind gust) and long-term "
            "(temperature, humidity) forecasters on a dataset",
            "train forecasters")
        forecast = self.add_subcommand(
            "forecast", "Forecast SOP change with saved forecasters",
            "forecast SOP change")
        evaluate = self.add_subcommand(
            "eval", "Compare all forecasting methods on a chronological "
            "train/test split", "run the benchmark")
        decompose = self.add_subcommand(
            "decompose", "Multilevel db5 decomposition of a SOP window",
            "dump a wavelet pyramid")
        correlate = self.add_subcommand(
            "correlate", "Pearson correlation of SOP and weather per "
            "wavelet band", "write band correlations")

        # Configuration action
        cfg.add_argument(
            '-e', '--expert-mode', action='store_true',
            help="Dump the logging options as well")
        cfg.add_argument(
            '-f', '--config-file', default=None,
            help="Write to file instead of standard output")
        cfg.add_argument(
            '-b', '--no-backup', action='store_true',
            help="Overwrite existing config without saving a backup")
        cfg.set_defaults(func=self.write_config)

        # Synthetic data
        synth_cmd.add_argument(
            '-o', '--out', default=None,
            help="output directory (default: paths.output_dir)")
        synth_cmd.add_argument(
            '-d', '--days', type=float, default=None,
            help="simulated duration in days (default: synth.duration_days)")
        synth_cmd.set_defaults(func=self.write_synthetic)

        for sub in (train, forecast, evaluate, correlate):
            self.data_options(sub)
        decompose.add_argument(
            '--sop', default=None,
            help="SOP CSV file (default: paths.sop_csv)")

        train.add_argument(
            '-o', '--out', default=None,
            help="directory for the forecaster files "
            "(default: paths.output_dir)")
        train.set_defaults(func=self.train_models)

        forecast.add_argument(
            '--mode', choices=pipeline.FORECAST_MODES, default="short",
            help="forecast scale; adaptive fuses both (default: short)")
        forecast.add_argument(
            '-m', '--model-dir', default=None,
            help="directory holding the forecaster files "
            "(default: paths.output_dir)")
        forecast.add_argument(
            '--at', default=None,
            help="timestamp of the first forecast value "
            "(default: latest possible)")
        forecast.add_argument(
            '-o', '--output', default=None,
            help="forecast CSV (default: <output_dir>/forecast_<mode>.csv)")
        forecast.set_defaults(func=self.forecast)

        evaluate.add_argument(
            '--synthetic', action='store_true',
            help="evaluate on synthetic data generated with --seed")
        evaluate.add_argument(
            '--seeds', type=int, nargs='+', default=None,
            help="training seeds (default: harness.seeds)")
        evaluate.add_argument(
            '-o', '--out', default=None,
            help="report directory (default: paths.output_dir)")
        evaluate.add_argument(
            '--plot', action='store_true',
            help="write forecast overlay figures next to the reports")
        evaluate.set_defaults(func=self.evaluate)

        decompose.add_argument(
            '-l', '--levels', type=int, default=None,
            help="decomposition depth (default: forecast.short.levels)")
        decompose.add_argument(
            '-n', '--length', type=int, default=None,
            help="number of trailing samples; 0 uses the whole series "
            "(default: forecast.short.window)")
        decompose.add_argument(
            '-o', '--output', default=None,
            help="JSON output (default: standard output)")
        decompose.set_defaults(func=self.decompose)

        correlate.add_argument(
            '--scale', choices=("short", "long"), default="short",
            help="window geometry used for the analysis (default: short)")
        correlate.add_argument(
            '-o', '--output', default=None,
            help="CSV output (default: <output_dir>/correlations_<scale>.csv)")
        correlate.add_argument(
            '--plot', action='store_true',
            help="write a bar chart next to the CSV")
        correlate.set_defaults(func=self.correlate)

    @staticmethod
    def data_options(parser):
        """Input file options shared by the data sub-commands"""
        parser.add_argument(
            '--sop', default=None,
            help="SOP CSV file (default: paths.sop_csv)")
        parser.add_argument(
            '--weather', default=None,
            help="weather CSV file (default: paths.weather_csv)")

    @property
    def node(self):
        """The ``sopcast`` node of the merged configuration"""
        return self.cfg.sopcast

    def output_dir(self, value=None):
        return osutils.ensure_directory(value or self.node.paths.output_dir)

    def load_data(self):
        args = self.args
        return pipeline.load_data(args.sop, args.weather, self.cfg)

    def write_config(self):
        """Dump the configuration file"""
        args = self.args
        cfg = self.cfg
        if not args.expert_mode:
            _ = cfg.sopcast.logging.pop('pylogger_options')

        # Backup existing configuration if necessary
        if args.config_file and os.path.exists(args.config_file):
            if not args.no_backup:
                bak_file = osutils.backup_file(args.config_file)
                shutil.copy(args.config_file, bak_file)
                _lgr.info("Existing configuration saved to: %s", bak_file)
            else:
                _lgr.warning("Overwriting existing configuration")

        if args.config_file:
            with open(args.config_file, 'w', encoding="utf-8") as fh:
                cfg.write_config(fh)
            _lgr.info("Configuration written to file: %s", args.config_file)
        else:
            cfg.write_config(sys.stdout)

    def write_synthetic(self):
        """Write the synthetic dataset"""
        args = self.args
        if args.days is not None:
            self.node.synth.duration_days = args.days
        sop_file, wtr_file = pipeline.synthesize(
            self.output_dir(args.out), self.cfg)
        _lgr.info("Synthetic data (seed %s): %s, %s",
                  self.node.seed, sop_file, wtr_file)

    def train_models(self):
        """Train and save both forecasters"""
        sop, weather = self.load_data()
        outdir = self.output_dir(self.args.out)
        pipeline.train_bundles(sop, weather, self.cfg, outdir=outdir)
        _lgr.info("Forecasters written to %s", outdir)

    def forecast(self):
        """Forecast with saved forecasters"""
        args = self.args
        sop, weather = self.load_data()
        model_dir = osutils.abspath(args.model_dir or
                                    self.node.paths.output_dir)
        outfile = args.output or os.path.join(
            self.output_dir(), "forecast_%s.csv"%args.mode)
        pipeline.run_forecast(args.mode, model_dir, sop, weather, outfile,
                              args.at, self.cfg)

    def evaluate(self):
        """Run the benchmark and write the reports"""
        args = self.args
        desc = OrderedDict()
        if args.synthetic:
            scfg = synth.SynthConfig.from_config(self.node.synth)
            sop, weather = synth.generate(scfg, self.node.seed)
            desc["source"] = "synthetic"
            desc["data_seed"] = self.node.seed
            desc["duration_days"] = scfg.duration_days
        else:
            sop, weather = self.load_data()
            desc["source"] = "files"
            desc["sop_csv"] = os.path.basename(
                args.sop or self.node.paths.sop_csv)
            desc["weather_csv"] = os.path.basename(
                args.weather or self.node.paths.weather_csv)
        reports = run_benchmark(sop, weather, self.cfg, args.seeds, desc)
        outdir = self.output_dir(args.out)
        plotter = ReportPlot(outdir) if args.plot else None
        for report in reports:
            report.write(outdir)
            print(report.render_table())
            if plotter is not None:
                plotter.plot_overlay(
                    report, plotfile="overlay_%s.png"%report.scale)

    def decompose(self):
        """Dump the wavelet pyramid of the trailing SOP samples"""
        args = self.args
        short = self.node.forecast.short
        levels = args.levels or short.levels
        length = short.window if args.length is None else args.length
        sop_file = osutils.abspath(args.sop or self.node.paths.sop_csv)
        if not osutils.path_exists(sop_file):
            raise FileNotFoundError("Input file not found: %s"%sop_file)
        sop = csvfiles.read_sop_csv(sop_file)
        values = sop.values[-length:] if length else sop.values
        pyramid = dwt.wavedec(values, levels)
        if args.output:
            pyramid.write_json(args.output)
            _lgr.info("Wrote %d-level pyramid of %d samples to %s",
                      levels, values.size, args.output)
        else:
            sys.stdout.write(pyramid.encode(indent=2) + "\n")

    def correlate(self):
        """Write the band correlations"""
        args = self.args
        fcfg = pipeline.forecast_configs(self.cfg)[args.scale]
        sop, weather = self.load_data()
        denoised = ema_denoise(sop, self.node.denoise.alpha)
        sop_s, wtr_s = scale_series(denoised, weather, fcfg)
        data = make_windows(sop_s, wtr_s, fcfg.window, fcfg.horizon,
                            fcfg.stride, exo_span=fcfg.exo_span)
        corr = band_correlations(data, levels=fcfg.levels)
        outfile = args.output or os.path.join(
            self.output_dir(), "correlations_%s.csv"%args.scale)
        corr.write_csv(outfile)
        _lgr.info("Band correlations written to %s", outfile)
        if args.plot:
            plotter = ReportPlot(os.path.dirname(osutils.abspath(outfile)))
            plotter.plot_correlations(
                corr, plotfile="correlations_%s.png"%args.scale)

def main(argv=None):
    """Run sopcast command

    Returns:
        int: Exit status; 0 on success, 1 on usage errors, 2 on data errors
    """
    try:
        cmd = SopcastCmd(args=argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return cmd()

if __name__ == "__main__":
    sys.exit(main())
