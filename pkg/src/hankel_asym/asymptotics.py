"""Predicted log N coefficients built from a symbol's jump data."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SeriesNotConverged
from .special import arcsin_c, arcsin_sq_of_square, beta_half
from .symbol import CirclePoint, Symbol, jump_height

_ONE = CirclePoint(0.0)
_MINUS_ONE = CirclePoint(math.pi)
_BETA_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticPrediction:
    """log det(I_N - beta H_N(f)) ~ -exponent * log N.

    ``gamma_raw`` is the undivided value linear_part + quadratic_part and
    ``exponent = gamma_raw / (2 pi^2)``.
    """

    gamma_raw: complex
    exponent: complex
    linear_part: complex
    quadratic_part: complex
    beta: complex


@dataclass(frozen=True)
class TraceCoefficient:
    """Tr H_N(f)^k ~ mu * log N."""

    k: int
    mu: complex


def _paired_jumps(sym: Symbol):
    """Products kappa_z * kappa_conj(z) over jumps z off the real axis.

    Both members of a pair appear, so each pair contributes twice.
    """
    out = []
    for j in sym.jumps():
        z = j.location
        if z == _ONE or z == _MINUS_ONE:
            continue
        out.append(j.kappa * jump_height(sym, z.conj()))
    return out


def mu_k(sym: Symbol, k: int) -> TraceCoefficient:
    """Coefficient of log N in Tr H_N(f)^k.

    Odd k only sees the jumps at +1 and -1.  Even k sees every pair
    (z, conj z), using the principal power of kappa_z * kappa_conj(z).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    scale = (-1j) ** k * beta_half(k) / (2 * math.pi**2)
    k1 = jump_height(sym, _ONE)
    km1 = jump_height(sym, _MINUS_ONE)
    if k % 2:
        total = k1**k + km1**k
    else:
        half = k // 2
        total = (k1 * k1) ** half + (km1 * km1) ** half
        total += sum(p**half for p in _paired_jumps(sym))
    return TraceCoefficient(k, complex(total * scale))


def gamma_exponent(sym: Symbol, beta: complex, diagnostic: bool = False) -> AsymptoticPrediction:
    """Predicted decay exponent of det(I_N - beta H_N(f)).

    Requires |beta| < 1; ``diagnostic=True`` also admits |beta| = 1, where
    the formula is evaluated without any claim that it describes the
    determinant.
    """
    beta = complex(beta)
    r = abs(beta)
    if r > 1 + _BETA_EDGE_TOL:
        raise DomainError(f"|beta| = {r} > 1")
    if r >= 1 and not diagnostic:
        raise DomainError("|beta| = 1 needs diagnostic mode")
    k1 = jump_height(sym, _ONE)
    km1 = jump_height(sym, _MINUS_ONE)
    linear = math.pi * (arcsin_c(-1j * beta * k1) + arcsin_c(-1j * beta * km1))
    quadratic = arcsin_sq_of_square(-beta * beta * k1 * k1)
    quadratic += arcsin_sq_of_square(-beta * beta * km1 * km1)
    for p in _paired_jumps(sym):
        quadratic += arcsin_sq_of_square(-beta * beta * p)
    gamma_raw = complex(linear + quadratic)
    return AsymptoticPrediction(
        gamma_raw=gamma_raw,
        exponent=gamma_raw / (2 * math.pi**2),
        linear_part=complex(linear),
        quadratic_part=complex(quadratic),
        beta=beta,
    )


def mu_series_sum(sym: Symbol, beta: complex, tol: float = 1e-14, max_terms: int = 100_000) -> complex:
    """-sum_k beta^k mu_k / k, the predicted log N slope as a trace series."""
    beta = complex(beta)
    if abs(beta) >= 1:
        raise DomainError("mu_series_sum needs |beta| < 1")
    if beta == 0:
        return 0j
    total = 0j
    small = 0
    for k in range(1, max_terms + 1):
        term = beta**k * mu_k(sym, k).mu / k
        total += term
        # odd or even terms may vanish identically, so wait for two in a row
        small = small + 1 if abs(term) < tol else 0
        if small >= 2 and abs(beta) ** k < tol:
            return -total
    raise SeriesNotConverged(f"mu series not converged after {max_terms} terms")


def predicted_slope(sym: Symbol, beta: complex, diagnostic: bool = False) -> complex:
    return -gamma_exponent(sym, beta, diagnostic).exponent
