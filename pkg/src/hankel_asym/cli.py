"""Command line front end.

    hankel-asym predict --builtin hilbert_psi --beta 0.9
    hankel-asym verify --builtin indicator_eta --beta 0.9 --nmax 4096 --out eta.csv
    hankel-asym square --beta 0.9 --format json

Exit status is 0 on success, 2 for invalid input and 3 when a numerical
routine fails.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass

from . import reports
from .asymptotics import gamma_exponent
from .detcalc import (
    ConvergenceReport,
    GridSpec,
    TruncationCache,
    corollary_square_check,
    log_det_direct,
    slope_estimate,
    verify,
    verify_traces,
)
from .errors import ConfigError, HankelAsymError
from .hankel import MAX_DIMENSION
from .selftest import run_selftest
from .symbol import Symbol, builtin, load_symbol

COMMANDS = ("predict", "compute", "verify", "traces", "square", "selftest")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


@dataclass
class RunConfig:
    command: str
    symbol: Symbol | None = None
    beta: complex = 0j
    grid: GridSpec | None = None
    output_path: str | None = None
    format: str = "csv"
    k_max: int = 6
    diagnostic: bool = False
    dump_matrix: str | None = None
    plot_path: str | None = None


def parse_beta(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise ConfigError(f"--beta expects RE or RE,IM, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"--beta expects numbers, got {text!r}") from None
    beta = complex(vals[0], vals[1] if len(vals) == 2 else 0.0)
    if not (math.isfinite(beta.real) and math.isfinite(beta.imag)):
        raise ConfigError("--beta must be finite")
    return beta


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hankel-asym", description="Log-determinant and trace asymptotics of Hankel matrices with jump symbols.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", metavar="NAME", help="hilbert_psi or indicator_eta")
    src.add_argument("--symbol", metavar="FILE", help="symbol JSON file")
    p.add_argument("--beta", default="0", help="RE or RE,IM (default 0)")
    p.add_argument("--nmin", type=int, default=64)
    p.add_argument("--nmax", type=int, default=4096, help="grid doubles from nmin up to nmax")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--diagnostic", action="store_true", help="allow |beta| = 1")
    p.add_argument("--dump-matrix", metavar="PATH", help="write the largest truncation as re,im CSV")
    p.add_argument("--plot", metavar="PATH", help="write logN vs value as two columns for gnuplot")
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command, output_path=ns.out, format=ns.format, k_max=ns.kmax,
                    diagnostic=ns.diagnostic, dump_matrix=ns.dump_matrix, plot_path=ns.plot)
    if ns.command == "selftest":
        return cfg
    cfg.beta = parse_beta(ns.beta)
    if ns.command != "square":
        if ns.builtin:
            cfg.symbol = builtin(ns.builtin)
        elif ns.symbol:
            try:
                cfg.symbol = load_symbol(ns.symbol)
            except OSError as exc:
                raise ConfigError(str(exc)) from exc
        else:
            raise ConfigError(f"{ns.command} needs --builtin or --symbol")
    if ns.command != "predict":
        if ns.nmax > MAX_DIMENSION:
            raise ConfigError(f"--nmax above {MAX_DIMENSION}")
        cfg.grid = GridSpec.dyadic(ns.nmin, ns.nmax)
    if ns.kmax < 1:
        raise ConfigError("--kmax must be >= 1")
    r = abs(cfg.beta)
    if r > 1 or (r == 1 and not cfg.diagnostic):
        raise ConfigError(f"|beta| = {r:g} needs to be < 1" + ("" if r > 1 else " (or pass --diagnostic)"))
    if ns.command == "square" and (cfg.beta.imag != 0 or cfg.beta.real < 0 or r >= 1):
        raise ConfigError("square needs a real beta in [0, 1)")
    if ns.command in ("verify", "compute", "traces") and r >= 1:
        raise ConfigError(f"{ns.command} needs |beta| < 1")
    return cfg


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _emit_report(rep: ConvergenceReport, cfg: RunConfig, path=None):
    path = path if path is not None else cfg.output_path
    if cfg.format == "json":
        _emit(reports.dumps(reports.report_to_dict(rep)), path)
    else:
        _emit(reports.report_to_csv(rep), path)


def _emit_plot(rep: ConvergenceReport, path):
    if path:
        xs = [math.log(n) for n, _ in rep.per_n]
        _emit(reports.two_column(xs, [v.real for _, v in rep.per_n]), path)


def _suffixed(path, tag):
    root, ext = os.path.splitext(path)
    return f"{root}.{tag}{ext}"


def run(cfg: RunConfig) -> int:
    if cfg.command == "selftest":
        return EXIT_OK if run_selftest() else EXIT_NUMERIC

    if cfg.command == "predict":
        pred = gamma_exponent(cfg.symbol, cfg.beta, diagnostic=cfg.diagnostic)
        _emit(reports.dumps(reports.prediction_to_dict(cfg.symbol, pred, cfg.k_max)), cfg.output_path)
        return EXIT_OK

    cache = TruncationCache()
    if cfg.command == "compute":
        samples = []
        for n in cfg.grid.n_values:
            samples.append((n, log_det_direct(cache.get(cfg.symbol, n), cfg.beta)))
        if len(samples) >= 2:
            rep = slope_estimate(samples, label=f"{cfg.symbol.symbol_id} beta={cfg.beta}")
        else:
            rep = ConvergenceReport(per_n=samples, slopes=[])
        _emit_report(rep, cfg)
        _emit_plot(rep, cfg.plot_path)
    elif cfg.command == "verify":
        rep = verify(cfg.symbol, cfg.beta, cfg.grid, cache=cache)
        _emit_report(rep, cfg)
        _emit_plot(rep, cfg.plot_path)
    elif cfg.command == "traces":
        reps = verify_traces(cfg.symbol, cfg.k_max, cfg.grid, cache=cache)
        if cfg.format == "json":
            doc = {"schema_version": reports.SCHEMA_VERSION,
                   "reports": [reports.report_to_dict(r) for r in reps]}
            _emit(reports.dumps(doc), cfg.output_path)
        elif cfg.output_path:
            for k, r in enumerate(reps, start=1):
                _emit_report(r, cfg, _suffixed(cfg.output_path, f"k{k}"))
        else:
            for k, r in enumerate(reps, start=1):
                sys.stdout.write(f"# k={k}\n")
                _emit_report(r, cfg)
        if cfg.plot_path:
            for k, r in enumerate(reps, start=1):
                _emit_plot(r, _suffixed(cfg.plot_path, f"k{k}"))
    elif cfg.command == "square":
        rep = corollary_square_check(cfg.beta.real, cfg.grid, cache=cache)
        _emit_report(rep, cfg)
        _emit_plot(rep, cfg.plot_path)

    if cfg.dump_matrix:
        sym = cfg.symbol if cfg.symbol is not None else builtin("hilbert_psi")
        h = cache.get(sym, cfg.grid.n_values[-1])
        _emit(reports.matrix_to_csv(h.entries), cfg.dump_matrix)
    return EXIT_OK


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        with warnings.catch_warnings():
            if cfg.diagnostic:
                warnings.simplefilter("always")
            return run(cfg)
    except HankelAsymError as exc:
        code = EXIT_CONFIG if isinstance(exc, ValueError) else EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
