#!/usr/bin/python

"""The main module: experiment configuration, runner and the bll command."""

import argparse
import copy
import json
import logging
import os
import sys

from borglev.experiments import EXPERIMENTS, Workspace, get_experiment
from borglev.input_output import (table_writer, write_summary, print_config,
                                  get_outputdir, get_cachedir)
from borglev.mesh import TRACE_MODES
from borglev.isozaki import CGO_DATA
from borglev.exceptions import BorglevError, ConfigError, ExperimentError

logger = logging.getLogger(__name__)

DEFAULTS = {
    "experiment": "spectrum",
    "n": 3,
    "N": 16,
    "q1": {"kind": "bump", "amplitude": 5.0},
    "q2": {"kind": "zero"},
    "K": 10,
    "tol": 1e-12,
    "dense_limit": 2000,
    "trace_mode": "variational",
    "cgo_data": "lattice",
    "lambdas": [-1e2, -1e3, -1e4],
    "lam": -200.0,
    "m": 8,
    "m_list": [8, 16, 32, 64],
    "xi": None,
    "eta": None,
    "k_max": 2,
    "k0": 10,
    "derivative_order": 1,
    "weight_eps": 0.0,
    "weyl_range": [100, 300],
    "weyl_boundary_correction": True,
    "refine_N": [16, 24, 32],
    "trials": 20,
    "seed": 1234,
    "threads": 1,
    "verbose": False,
    "out": None,
    "cache": None,
}

ALL_ORDER = list(EXPERIMENTS)


class ExperimentConfig(object):
    """
    Validated experiment configuration; every key of DEFAULTS is an
    attribute
    """
    def __init__(self, settings):
        self._settings = settings
        for key, value in settings.items():
            setattr(self, key, value)

    def as_dict(self):
        return copy.deepcopy(self._settings)

    def replace(self, **changes):
        settings = self.as_dict()
        settings.update(changes)
        return make_config(settings)


class ReportBundle(object):
    """
    Outcome of run_experiment

    Attributes:
        experiment (str): experiment id
        outdir (str): directory holding the tables and summary.json
        tables (list): paths of written CSV tables
        checks (list): Check tuples
        summary (dict): what was written to summary.json
        passed (bool): True if every check passed
        parts (list): sub-bundles of an "all" run
    """
    def __init__(self, experiment, outdir, tables, checks, summary,
                 parts=()):
        self.experiment = experiment
        self.outdir = outdir
        self.tables = tables
        self.checks = checks
        self.summary = summary
        self.parts = list(parts)
        self.passed = all(c.passed for c in checks) and \
            all(p.passed for p in self.parts)


def _require(condition, message):
    if not condition:
        raise ConfigError(message)


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _check_descriptor(name, descriptor):
    _require(isinstance(descriptor, dict) and "kind" in descriptor,
             "{} must be an object with a 'kind' key".format(name))


def make_config(mapping):
    """
    Merge a mapping over DEFAULTS and validate it

    Args:
        mapping (dict): user settings

    Returns:
        ExperimentConfig: validated configuration
    """
    unknown = sorted(set(mapping) - set(DEFAULTS))
    if unknown:
        raise ConfigError("unknown config key(s): {}".format(
            ", ".join(repr(k) for k in unknown)))
    settings = copy.deepcopy(DEFAULTS)
    settings.update(copy.deepcopy(mapping))

    _require(settings["experiment"] in EXPERIMENTS or
             settings["experiment"] == "all",
             "unknown experiment {!r}".format(settings["experiment"]))
    _require(settings["n"] in (2, 3), "n must be 2 or 3")
    _require(isinstance(settings["N"], int) and settings["N"] >= 4,
             "N must be an integer >= 4")
    _check_descriptor("q1", settings["q1"])
    _check_descriptor("q2", settings["q2"])
    _require(settings["trace_mode"] in TRACE_MODES,
             "trace_mode must be one of {}".format(", ".join(TRACE_MODES)))
    _require(settings["cgo_data"] in CGO_DATA,
             "cgo_data must be one of {}".format(", ".join(CGO_DATA)))
    for key in ("K", "m", "k_max", "k0", "derivative_order", "trials",
                "threads", "dense_limit"):
        _require(isinstance(settings[key], int) and settings[key] >= 1,
                 "{} must be a positive integer".format(key))
    _require(settings["m"] >= 2, "m must be at least 2")
    for key in ("lambdas", "m_list", "refine_N"):
        _require(isinstance(settings[key], list) and settings[key] and
                 all(_is_number(x) for x in settings[key]),
                 "{} must be a non-empty list of numbers".format(key))
    _require(all(lam < 0 for lam in settings["lambdas"]),
             "lambdas must be negative")
    _require(_is_number(settings["lam"]), "lam must be a number")
    _require(_is_number(settings["tol"]) and settings["tol"] > 0,
             "tol must be positive")
    _require(_is_number(settings["weight_eps"]) and
             settings["weight_eps"] >= 0, "weight_eps must be >= 0")
    _require(isinstance(settings["weyl_range"], list) and
             len(settings["weyl_range"]) == 2,
             "weyl_range must be [k_lo, k_hi]")
    for key in ("xi", "eta"):
        _require(settings[key] is None or
                 (isinstance(settings[key], list) and
                  len(settings[key]) == settings["n"]),
                 "{} must be null or a list of n numbers".format(key))
    return ExperimentConfig(settings)


def load_config(path):
    """
    Read a JSON config file

    Args:
        path (str): file name

    Returns:
        ExperimentConfig: validated configuration
    """
    try:
        with open(path) as source:
            mapping = json.load(source)
    except ValueError as err:
        raise ConfigError("{}: not valid JSON: {}".format(path, err))
    if not isinstance(mapping, dict):
        raise ConfigError("{}: config must be a JSON object".format(path))
    return make_config(mapping)


def _cachedir(cfg):
    if cfg.cache is not None:
        return cfg.cache
    if "BORGLEV_CACHE" in os.environ:
        return get_cachedir()
    return None


def _run_single(cfg, experiment, outdir, ws):
    logger.info("running %s", experiment)
    try:
        outcome = get_experiment(experiment)(cfg, ws)
    except BorglevError as err:
        raise ExperimentError(experiment, err) from err

    paths = []
    for name in sorted(outcome.tables):
        table = outcome.tables[name]
        writer = table_writer(outdir, name + ".csv")
        writer.write_header(table.title, table.columns, table.notes)
        writer.write(*table.rows)
        writer.finish()
        paths.append(os.path.join(outdir, name + ".csv"))

    checks = list(outcome.checks)
    for check in checks:
        if not check.passed:
            logger.warning("%s: check %s failed, value %.6e, bound %.6e",
                           experiment, check.name, check.value, check.bound)
    summary = {"experiment": experiment,
               "config": cfg.as_dict(),
               "checks": [dict(c._asdict()) for c in checks],
               "values": outcome.values,
               "passed": all(c.passed for c in checks)}
    write_summary(outdir, summary)
    return ReportBundle(experiment, outdir, paths, checks, summary)


def run_experiment(cfg):
    """
    Run one experiment, or all of them in a fixed order

    Writes one CSV per table and summary.json into <out>/<experiment>/.

    Args:
        cfg (ExperimentConfig): configuration

    Returns:
        ReportBundle: written tables, checks and the summary
    """
    if cfg.verbose:
        print_config(**cfg.as_dict())
    outroot = cfg.out if cfg.out is not None else get_outputdir()
    ws = Workspace(cfg, _cachedir(cfg))
    if cfg.experiment != "all":
        return _run_single(cfg, cfg.experiment,
                           os.path.join(outroot, cfg.experiment), ws)
    parts = [_run_single(cfg, name, os.path.join(outroot, name), ws)
             for name in ALL_ORDER]
    summary = {"experiment": "all",
               "parts": dict((p.experiment, p.passed) for p in parts),
               "passed": all(p.passed for p in parts)}
    outdir = os.path.join(outroot, "all")
    write_summary(outdir, summary)
    return ReportBundle("all", outdir, [], [], summary, parts)


def main(argv=None):
    """
    bll <experiment> [--config FILE] [--out DIR] [--cache DIR] [--threads K]

    Returns:
        int: 0 if every check passed, 2 if a check failed, 1 on errors
    """
    parser = argparse.ArgumentParser(
        prog="bll", description="Borg-Levinson inverse spectral lab")
    parser.add_argument("experiment", choices=ALL_ORDER + ["all"],
                        help="experiment id")
    parser.add_argument("--config", action="store", dest="config",
                        default=None, help="JSON config file")
    parser.add_argument("--out", action="store", dest="out", default=None,
                        help="output directory")
    parser.add_argument("--cache", action="store", dest="cache",
                        default=None, help="spectral cache directory")
    parser.add_argument("--threads", action="store", dest="threads",
                        type=int, default=None,
                        help="threads for independent sweep points")
    parser.add_argument("--verbose", action="store_true",
                        help="print the configuration and progress")
    options = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if options.verbose
                        else logging.WARNING)
    try:
        if options.config is not None:
            cfg = load_config(options.config)
        else:
            cfg = make_config({})
        changes = {"experiment": options.experiment}
        for key in ("out", "cache", "threads"):
            if getattr(options, key) is not None:
                changes[key] = getattr(options, key)
        if options.verbose:
            changes["verbose"] = True
        cfg = cfg.replace(**changes)
        bundle = run_experiment(cfg)
    except (BorglevError, IOError) as err:
        logger.error("%s", err)
        return 1
    return 0 if bundle.passed else 2


if __name__ == "__main__":
    sys.exit(main())
