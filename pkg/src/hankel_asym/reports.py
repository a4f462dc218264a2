"""CSV and JSON serialisation of predictions and convergence reports.

Floats are written with 17 significant digits so output is reproducible
byte for byte; complex values become re/im pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .asymptotics import AsymptoticPrediction, mu_k
from .detcalc import ConvergenceReport
from .errors import ConfigError

SCHEMA_VERSION = 1

CSV_HEADER = ["N", "logN", "re_logdet", "im_logdet", "slope_re", "slope_im", "pred_re", "pred_im", "rel_err"]


def fmt(x) -> str:
    return format(float(x), ".17g")


def _pair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _unpair(p):
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise ConfigError(f"expected [re, im], got {p!r}")
    return complex(float(p[0]), float(p[1]))


def report_rows(rep: ConvergenceReport):
    rows = []
    for i, (n, v) in enumerate(rep.per_n):
        row = [str(n), fmt(math.log(n)), fmt(v.real), fmt(v.imag)]
        if i == 0:
            row += ["", "", "", "", ""]
        else:
            s = rep.slopes[i - 1]
            row += [fmt(s.real), fmt(s.imag)]
            if rep.predicted_slope is None:
                row += ["", "", ""]
            else:
                p = rep.predicted_slope
                err = abs(s - p) / max(abs(p), 1e-12)
                row += [fmt(p.real), fmt(p.imag), fmt(err)]
        rows.append(row)
    return rows


def report_to_csv(rep: ConvergenceReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(report_rows(rep))
    return buf.getvalue()


def report_to_dict(rep: ConvergenceReport) -> dict:
    d = {
        "schema_version": SCHEMA_VERSION,
        "label": rep.label,
        "per_n": [{"N": n, "logdet": _pair(v)} for n, v in rep.per_n],
        "slopes": [_pair(s) for s in rep.slopes],
        "predicted_slope": None if rep.predicted_slope is None else _pair(rep.predicted_slope),
        "final_rel_err": rep.final_rel_err,
        "trend_improving": rep.trend_improving,
    }
    if rep.diagnostics:
        d["diagnostics"] = rep.diagnostics
    return d


def report_from_dict(d: dict) -> ConvergenceReport:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {d.get('schema_version')!r}")
    try:
        pred = d["predicted_slope"]
        return ConvergenceReport(
            per_n=[(int(e["N"]), _unpair(e["logdet"])) for e in d["per_n"]],
            slopes=[_unpair(s) for s in d["slopes"]],
            predicted_slope=None if pred is None else _unpair(pred),
            final_rel_err=d["final_rel_err"],
            trend_improving=d["trend_improving"],
            label=d.get("label", ""),
            diagnostics=d.get("diagnostics", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed report: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def prediction_to_dict(sym, pred: AsymptoticPrediction, k_max: int = 6) -> dict:
    mus = [mu_k(sym, k) for k in range(1, k_max + 1)]
    return {
        "schema_version": SCHEMA_VERSION,
        "symbol": sym.symbol_id,
        "beta": _pair(pred.beta),
        "exponent": _pair(pred.exponent),
        "gamma_raw": _pair(pred.gamma_raw),
        "linear": _pair(pred.linear_part),
        "quadratic": _pair(pred.quadratic_part),
        "mu": [{"k": m.k, "re": m.mu.real, "im": m.mu.imag} for m in mus],
    }


def matrix_to_csv(a) -> str:
    """Row-major dump, each entry as an "re,im" pair."""
    a = np.asarray(a, dtype=complex)
    lines = []
    for row in a:
        lines.append(",".join(f"{fmt(z.real)},{fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def two_column(xs, ys) -> str:
    """Whitespace separated columns that gnuplot reads directly."""
    return "".join(f"{fmt(x)} {fmt(y)}\n" for x, y in zip(xs, ys))
