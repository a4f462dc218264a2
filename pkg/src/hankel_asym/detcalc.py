"""log det(I_N - beta H_N) on grids of N, and empirical log N slopes."""

from __future__ import annotations

import json
import math
import os
import threading
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .asymptotics import gamma_exponent, mu_k
from .errors import ConfigError, DomainError, InsufficientData, SeriesNotConverged, SingularMatrix
from .hankel import HankelTruncation, compressed_square, hs_norm_sq, tail_hs, trace_powers, truncate
from .symbol import Symbol, hilbert_psi, symbol_to_dict

SINGULAR_TOL = 1e-14
MAX_SERIES_TERMS = 100_000
# rounding noise allowed when comparing successive slope errors
TREND_SLACK = 1e-12


@dataclass(frozen=True)
class GridSpec:
    n_values: tuple

    def __post_init__(self):
        vals = tuple(int(n) for n in self.n_values)
        if not vals:
            raise ConfigError("grid is empty")
        if min(vals) < 2:
            raise ConfigError("grid dimensions must be >= 2")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ConfigError("grid must be strictly increasing")
        object.__setattr__(self, "n_values", vals)

    @classmethod
    def dyadic(cls, n_min=64, n_max=4096):
        if n_min < 2 or n_max < n_min:
            raise ConfigError(f"bad dyadic range {n_min}..{n_max}")
        vals = []
        n = n_min
        while n <= n_max:
            vals.append(n)
            n *= 2
        return cls(tuple(vals))


DEFAULT_GRID = GridSpec.dyadic()


@dataclass
class ConvergenceReport:
    """Values on a grid of N with finite-difference slopes in log N.

    ``trend_improving`` is None when no prediction is attached and False when
    there are fewer than two slopes to compare.
    """

    per_n: list
    slopes: list
    predicted_slope: complex | None = None
    final_rel_err: float | None = None
    trend_improving: bool | None = None
    label: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def final_slope(self) -> complex:
        return self.slopes[-1]

    def slope_errors(self):
        if self.predicted_slope is None:
            return []
        return [abs(s - self.predicted_slope) for s in self.slopes]


def _thread_count():
    raw = os.environ.get("HANKEL_ASYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"HANKEL_ASYM_THREADS={raw!r} is not an integer") from None
    return max(1, n)


def _parallel_map(fn, items):
    workers = min(_thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


class TruncationCache:
    """Shares truncations (and so their spectra) between calls."""

    def __init__(self):
        self._store = {}
        self._lock = threading.Lock()

    def get(self, sym: Symbol, n: int) -> HankelTruncation:
        # the id rounds angles, so key on the exact serialised form
        key = (json.dumps(symbol_to_dict(sym), sort_keys=True), n)
        with self._lock:
            h = self._store.get(key)
        if h is None:
            h = truncate(sym, n)
            with self._lock:
                h = self._store.setdefault(key, h)
        return h

    def clear(self):
        with self._lock:
            self._store.clear()


def _check_beta(beta, diagnostic):
    r = abs(beta)
    if r < 1:
        return
    if not diagnostic:
        raise DomainError(f"|beta| = {r} must be < 1")
    warnings.warn(f"|beta| = {r} >= 1 is outside the validated range", RuntimeWarning, stacklevel=3)


def log_det_from_eigenvalues(lam, beta: complex) -> complex:
    factors = 1 - complex(beta) * np.asarray(lam)
    if factors.size and np.min(np.abs(factors)) < SINGULAR_TOL:
        raise SingularMatrix("I - beta H is numerically singular")
    return complex(np.sum(np.log(factors.astype(complex))))


def log_det_direct(h: HankelTruncation, beta: complex, diagnostic: bool = False) -> complex:
    """Sum of log(1 - beta lambda) over the spectrum, principal logarithm per factor."""
    beta = complex(beta)
    _check_beta(beta, diagnostic)
    if beta == 0:
        return 0j
    return log_det_from_eigenvalues(h.eigenvalues(), beta)


def log_det_series(h: HankelTruncation, beta: complex, tol: float = 1e-12) -> complex:
    """-sum_k beta^k Tr H^k / k, cut where the Hilbert-Schmidt tail bound drops below tol."""
    beta = complex(beta)
    r = abs(beta)
    if r >= 1:
        raise DomainError("log_det_series needs |beta| < 1")
    if beta == 0:
        return 0j
    hs = hs_norm_sq(h)
    lam = h.eigenvalues()
    total = -beta * complex(np.trace(h.entries))
    p = lam.copy()
    bk = beta
    for m in range(2, MAX_SERIES_TERMS + 1):
        p = p * lam
        bk = bk * beta
        total -= bk * complex(np.sum(p)) / m
        if hs * r ** (m + 1) / ((m + 1) * (1 - r)) < tol:
            return total
    raise SeriesNotConverged(f"trace series needs more than {MAX_SERIES_TERMS} terms")


def slope_estimate(samples, predicted: complex | None = None, label: str = "") -> ConvergenceReport:
    if len(samples) < 2:
        raise InsufficientData("need at least two samples")
    ns = [int(n) for n, _ in samples]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise InsufficientData("sample dimensions must be strictly increasing")
    per_n = [(int(n), complex(v)) for n, v in samples]
    slopes = [
        (v1 - v0) / (math.log(n1) - math.log(n0))
        for (n0, v0), (n1, v1) in zip(per_n, per_n[1:])
    ]
    rep = ConvergenceReport(per_n=per_n, slopes=slopes, label=label)
    if predicted is not None:
        predicted = complex(predicted)
        rep.predicted_slope = predicted
        rep.final_rel_err = abs(slopes[-1] - predicted) / max(abs(predicted), 1e-12)
        errs = rep.slope_errors()[-3:]
        slack = TREND_SLACK * max(1.0, abs(predicted))
        rep.trend_improving = len(errs) >= 2 and all(b <= a + slack for a, b in zip(errs, errs[1:]))
    return rep


def _spectra(sym, grid, cache):
    cache = cache if cache is not None else TruncationCache()

    def build(n):
        h = cache.get(sym, n)
        h.eigenvalues()
        return h

    return _parallel_map(build, list(grid.n_values))


def verify(sym: Symbol, beta: complex, grid: GridSpec = DEFAULT_GRID, cache=None,
           diagnostic: bool = False) -> ConvergenceReport:
    """Empirical slope of log det(I_N - beta H_N) against the predicted one."""
    beta = complex(beta)
    _check_beta(beta, diagnostic)
    pred = -gamma_exponent(sym, beta, diagnostic=diagnostic).exponent
    hs = _spectra(sym, grid, cache)
    samples = [(h.n, log_det_direct(h, beta, diagnostic=diagnostic)) for h in hs]
    return slope_estimate(samples, pred, label=f"{sym.symbol_id} beta={beta}")


def verify_traces(sym: Symbol, k_max: int, grid: GridSpec = DEFAULT_GRID, cache=None) -> list:
    """Per-k slope of Tr H_N^k against mu_k."""
    if k_max < 1:
        raise ConfigError("k_max must be >= 1")
    hs = _spectra(sym, grid, cache)
    traces = [trace_powers(h, k_max) for h in hs]
    reports = []
    for k in range(1, k_max + 1):
        samples = [(h.n, t[k - 1]) for h, t in zip(hs, traces)]
        reports.append(slope_estimate(samples, mu_k(sym, k).mu, label=f"{sym.symbol_id} k={k}"))
    return reports


def corollary_square_check(beta: float, grid: GridSpec = DEFAULT_GRID, cache=None,
                           k_discrepancy: int = 3) -> ConvergenceReport:
    """log det(I_N - beta^2 1_N H^2 1_N) for the Hilbert matrix H.

    ``diagnostics["discrepancy"]`` holds, per N, Tr M^k - Tr (H_N^2)^k for
    k = 1..k_discrepancy; ``diagnostics["tail_hs"]`` holds the closed form of
    the k = 1 entry.
    """
    beta = float(beta)
    if not 0 <= beta < 1:
        raise DomainError("corollary_square_check needs 0 <= beta < 1")
    hil = hilbert_psi()
    hs = _spectra(hil, grid, cache)

    def square_spectrum(n):
        return scipy.linalg.eigvalsh(compressed_square(n))

    sq = _parallel_map(square_spectrum, list(grid.n_values))
    samples = []
    discrepancy = []
    for h, mu in zip(hs, sq):
        samples.append((h.n, log_det_from_eigenvalues(mu, beta * beta) if beta else 0j))
        lam2 = np.abs(h.eigenvalues()) ** 2
        discrepancy.append([
            float(np.sum(mu**k) - np.sum(lam2**k)) for k in range(1, k_discrepancy + 1)
        ])
    pred = -math.asin(beta) ** 2 / math.pi**2
    rep = slope_estimate(samples, pred, label=f"compressed square beta={beta}")
    rep.diagnostics["discrepancy"] = discrepancy
    rep.diagnostics["tail_hs"] = [tail_hs(n) for n in grid.n_values]
    return rep
