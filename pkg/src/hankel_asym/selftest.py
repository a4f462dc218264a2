"""Quick invariant checks, run by ``hankel-asym selftest``.

Everything here finishes in a few seconds; the slow slope experiments live
in the acceptance tests instead.
"""

from __future__ import annotations

import math

import numpy as np

from . import asymptotics, detcalc, hankel, special
from .symbol import CirclePoint, builtin, fourier_coefficient, fourier_coefficient_quad, model_symbol


def _check_constants():
    g = asymptotics.gamma_exponent(builtin("hilbert_psi"), 1, diagnostic=True).exponent
    return max(abs(g - 0.375), abs(special.series_S(1) - 0.375), abs(special.series_T(1) - 0.125)) < 1e-10


def _check_series_closed_forms():
    pts = [r * np.exp(1j * t) for r in (0.3, 0.9, 1.0) for t in np.linspace(0, 2 * math.pi, 8, endpoint=False)]
    err = max(max(abs(special.series_S(v) - special.closed_S(v)), abs(special.series_T(v) - special.closed_T(v)))
              for v in pts)
    return err < 1e-10


def _check_coefficients():
    err = 0.0
    for name in ("hilbert_psi", "indicator_eta"):
        sym = builtin(name)
        for k in (0, 1, 2, 5, 16):
            err = max(err, abs(fourier_coefficient(sym, k) - fourier_coefficient_quad(sym, k)))
    return err < 1e-8


def _check_routes():
    err = 0.0
    for name in ("hilbert_psi", "indicator_eta"):
        h = hankel.truncate(builtin(name), 64)
        for beta in (0.3, 0.9, 0.5j, -0.7):
            err = max(err, abs(detcalc.log_det_direct(h, beta) - detcalc.log_det_series(h, beta)))
    return err < 1e-9


def _check_conjugation():
    n = 32
    base = hankel.truncate(builtin("hilbert_psi"), n).entries / 1j
    err = 0.0
    for theta in (0.4, math.pi / 2, math.pi):
        z = CirclePoint(theta)
        d = z.z ** np.arange(n)
        want = d[:, None] * base * d[None, :]
        got = hankel.truncate(model_symbol(z), n).entries
        err = max(err, np.max(np.abs(got - want)))
    return err < 1e-14


def _check_norms():
    return all(hankel.spectral_norm(hankel.truncate(builtin(name), 256)) <= 1 + 1e-8
               for name in ("hilbert_psi", "indicator_eta"))


def _check_series_duality():
    err = 0.0
    for name in ("hilbert_psi", "indicator_eta"):
        sym = builtin(name)
        for beta in (0.1, -0.5, 0.9, 0.5j, 0.3 + 0.4j):
            ex = asymptotics.gamma_exponent(sym, beta).exponent
            err = max(err, abs(asymptotics.mu_series_sum(sym, beta) + ex))
    return err < 1e-8


CHECKS = [
    ("exact constants", _check_constants),
    ("series closed forms", _check_series_closed_forms),
    ("fourier coefficients vs quadrature", _check_coefficients),
    ("log det routes agree", _check_routes),
    ("model symbol conjugation", _check_conjugation),
    ("spectral norm <= 1", _check_norms),
    ("trace series equals exponent", _check_series_duality),
]


def run_selftest(stream=None):
    """Run every check, print one line each, return True if all pass."""
    ok = True
    for name, fn in CHECKS:
        try:
            passed = bool(fn())
        except Exception as exc:  # report and keep going
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}", file=stream)
    return ok
