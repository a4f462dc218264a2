"""Symbols on the unit circle with finitely many jump discontinuities.

A symbol is either a named built-in or a finite combination

    f = sum_j a_j psi_{w_j} + sum_k t_k e^{ik theta}

where psi_w is the Hilbert-matrix symbol rotated so that it jumps at the
point w with height 1.  Jump locations are always the geometric points of
discontinuity of ``evaluate`` and ``kappa`` is (f(w+) - f(w-))/2 there.

Fourier coefficients use the convention

    fhat(k) = (1/2pi) int_0^{2pi} f(e^{it}) e^{-ikt} dt,

so a jump term a*psi_w contributes a * conj(w)^k / (i pi (k+1)).
``model_symbol(z)`` is defined by its Hankel matrix (1/i) U_z H U_z with
entries z^(n+m) / (i pi (n+m+1)); with the convention above that symbol
jumps at conj(z).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureNotConverged, SymbolError

TWO_PI = 2.0 * math.pi
_ANGLE_TOL = 1e-12

HILBERT_PSI = "hilbert_psi"
INDICATOR_ETA = "indicator_eta"
MODEL_PSI_Z = "model_psi_z"
BUILTINS = (HILBERT_PSI, INDICATOR_ETA, MODEL_PSI_Z)


def _normalize(theta):
    t = math.fmod(float(theta), TWO_PI)
    if t < 0:
        t += TWO_PI
    if t >= TWO_PI - _ANGLE_TOL:
        t = 0.0
    return t


@dataclass(frozen=True, eq=False)
class CirclePoint:
    """The point e^{i theta}; theta is stored reduced into [0, 2pi)."""

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta!r}")
        object.__setattr__(self, "theta", _normalize(self.theta))

    @classmethod
    def from_complex(cls, z) -> "CirclePoint":
        z = complex(z)
        if abs(abs(z) - 1.0) > 1e-9:
            raise ValueError(f"{z!r} is not on the unit circle")
        return cls(math.atan2(z.imag, z.real))

    @property
    def z(self) -> complex:
        return _unit(self.theta)

    def conj(self) -> "CirclePoint":
        return CirclePoint(-self.theta)

    def __eq__(self, other):
        if not isinstance(other, CirclePoint):
            return NotImplemented
        d = abs(self.theta - other.theta)
        return min(d, TWO_PI - d) <= _ANGLE_TOL

    __hash__ = None

    def __repr__(self):
        return f"CirclePoint({self.theta!r})"


def _quarter_turns(theta):
    """Number of quarter turns if theta is a multiple of pi/2, else None."""
    q = theta / (math.pi / 2)
    r = round(q)
    if abs(q - r) < 1e-14:
        return int(r) % 4
    return None


_QUARTER = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


def _unit(theta):
    q = _quarter_turns(theta)
    if q is not None:
        return _QUARTER[q]
    return complex(math.cos(theta), math.sin(theta))


def _unit_powers(theta, k):
    """e^{i k theta} for an integer array k, exact when theta is a multiple of pi/2."""
    q = _quarter_turns(theta)
    if q is not None:
        return np.array(_QUARTER)[(q * np.asarray(k)) % 4]
    return np.exp(1j * theta * np.asarray(k, dtype=float))


@dataclass(frozen=True)
class JumpSpec:
    location: CirclePoint
    kappa: complex


@dataclass(frozen=True)
class Symbol:
    """An immutable symbol.

    ``jump_terms`` holds (a, w) pairs meaning a * psi_w.  For the built-in
    indicator symbol it records the jump data only and the values come from
    closed forms.  ``smooth_part`` holds (k, t_k) trigonometric coefficients.
    """

    jump_terms: tuple = ()
    smooth_part: tuple = ()
    builtin_tag: str | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        terms = tuple((complex(a), w if isinstance(w, CirclePoint) else CirclePoint(w))
                      for a, w in self.jump_terms)
        smooth = tuple((int(k), complex(t)) for k, t in self.smooth_part)
        object.__setattr__(self, "jump_terms", terms)
        object.__setattr__(self, "smooth_part", smooth)
        if self.builtin_tag is not None and self.builtin_tag not in BUILTINS:
            raise SymbolError(f"unknown builtin {self.builtin_tag!r}")
        locs = [w for _, w in terms]
        for i, w in enumerate(locs):
            if any(w == other for other in locs[i + 1:]):
                raise SymbolError(f"jump location {w!r} appears twice")
        ks = [k for k, _ in smooth]
        if len(set(ks)) != len(ks):
            raise SymbolError("repeated frequency in smooth part")

    @property
    def symbol_id(self) -> str:
        if self.name:
            return self.name
        if self.builtin_tag in (HILBERT_PSI, INDICATOR_ETA):
            return self.builtin_tag
        parts = [f"{a.real:.6g}{a.imag:+.6g}i@{w.theta:.6g}" for a, w in self.jump_terms]
        parts += [f"t{k}={t.real:.6g}{t.imag:+.6g}i" for k, t in self.smooth_part]
        tag = self.builtin_tag or "symbol"
        return f"{tag}[{','.join(parts)}]"

    def jumps(self) -> list[JumpSpec]:
        """The jump set with heights; terms with a zero coefficient are dropped."""
        return [JumpSpec(w, a) for a, w in self.jump_terms if a != 0]


def hilbert_psi() -> Symbol:
    """psi(e^{it}) = i pi^-1 e^{-it} (pi - t); its Hankel matrix is the Hilbert matrix."""
    # psi = i * psi_1: one jump at 1 of height i
    return Symbol(jump_terms=((1j, CirclePoint(0.0)),), builtin_tag=HILBERT_PSI)


def indicator_eta() -> Symbol:
    """eta(e^{it}) = 1 if cos t > 0 else 0; jumps at i (down) and -i (up)."""
    return Symbol(jump_terms=((-0.5, CirclePoint(math.pi / 2)), (0.5, CirclePoint(3 * math.pi / 2))),
                  builtin_tag=INDICATOR_ETA)


def model_symbol(z) -> Symbol:
    """The symbol of (1/i) U_z H U_z, Hankel entries z^(n+m) / (i pi (n+m+1)).

    Its single jump, of height 1, sits at conj(z).
    """
    p = z if isinstance(z, CirclePoint) else CirclePoint.from_complex(z)
    return Symbol(jump_terms=((1.0, p.conj()),), builtin_tag=MODEL_PSI_Z)


def builtin(name: str) -> Symbol:
    if name == HILBERT_PSI:
        return hilbert_psi()
    if name == INDICATOR_ETA:
        return indicator_eta()
    raise SymbolError(f"unknown builtin symbol {name!r}")


# -- pointwise values ------------------------------------------------------------

def _psi(t):
    """Hilbert symbol at e^{it} for t in [0, 2pi)."""
    return 1j / math.pi * np.exp(-1j * t) * (math.pi - t)


def _reduce(theta):
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    return np.where(t >= TWO_PI - _ANGLE_TOL, 0.0, t)


def evaluate(sym: Symbol, theta):
    """f(e^{i theta}).  At a jump the right (counter-clockwise) limit is returned."""
    t = _reduce(theta)
    if sym.builtin_tag == INDICATOR_ETA:
        on = (t < math.pi / 2 - _ANGLE_TOL) | (t >= 3 * math.pi / 2 - _ANGLE_TOL)
        out = on.astype(complex)
    else:
        out = np.zeros(np.shape(t), dtype=complex)
        for a, w in sym.jump_terms:
            # a * psi_w(e^{it}) = (a/i) psi(e^{i(t - arg w)})
            s = _reduce(t - w.theta)
            out = out + (a / 1j) * _psi(s)
        for k, c in sym.smooth_part:
            out = out + c * np.exp(1j * k * t)
    return complex(out) if np.ndim(out) == 0 else out


def jump_height(sym: Symbol, z) -> complex:
    """kappa_z(f) = (f(z+) - f(z-))/2, read off the declared jump data (0 off the jump set)."""
    p = z if isinstance(z, CirclePoint) else CirclePoint.from_complex(z)
    for a, w in sym.jump_terms:
        if w == p:
            return a
    return 0j


# -- Fourier coefficients ----------------------------------------------------------

def fourier_coefficients(sym: Symbol, count: int) -> np.ndarray:
    """fhat(0), ..., fhat(count-1) from closed forms."""
    k = np.arange(count)
    if sym.builtin_tag == HILBERT_PSI:
        return (1.0 / (math.pi * (k + 1))).astype(complex)
    if sym.builtin_tag == INDICATOR_ETA:
        out = np.zeros(count, dtype=complex)
        if count:
            out[0] = 0.5
        odd = k[k % 2 == 1]
        # sin(pi k/2)/(pi k) is exactly zero for even k
        out[odd] = np.where(odd % 4 == 1, 1.0, -1.0) / (math.pi * odd)
        return out
    out = np.zeros(count, dtype=complex)
    for a, w in sym.jump_terms:
        out += a * _unit_powers(-w.theta, k) / (1j * math.pi * (k + 1))
    for kk, c in sym.smooth_part:
        if 0 <= kk < count:
            out[kk] += c
    return out


def fourier_coefficient(sym: Symbol, k: int) -> complex:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return complex(fourier_coefficients(sym, k + 1)[k])


def _breakpoints(sym: Symbol):
    return sorted({w.theta for _, w in sym.jump_terms})


def _arc_integral(sym, k, lo, hi, panels):
    nodes, weights = np.polynomial.legendre.leggauss(32)
    edges = np.linspace(lo, hi, panels + 1)
    half = np.diff(edges) / 2
    t = ((edges[:-1] + half)[:, None] + half[:, None] * nodes[None, :]).ravel()
    wts = (half[:, None] * weights[None, :]).ravel()
    return complex(np.sum(wts * evaluate(sym, t) * np.exp(-1j * k * t)))


def fourier_coefficient_quad(sym: Symbol, k: int, *, tol: float = 1e-8) -> complex:
    """fhat(k) by direct quadrature of ``evaluate``; validation path only.

    The circle is cut at every jump, each arc is integrated with composite
    32-point Gauss-Legendre using at least max(32, 4k) nodes, and the result
    is compared against a run with twice as many panels.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    cuts = _breakpoints(sym)
    if not cuts:
        arcs = [(0.0, TWO_PI)]
    else:
        arcs = [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)]
        arcs.append((cuts[-1], cuts[0] + TWO_PI))
    panels = max(1, math.ceil(max(32, 4 * k) / 32))
    coarse = sum(_arc_integral(sym, k, lo, hi, panels) for lo, hi in arcs) / TWO_PI
    fine = sum(_arc_integral(sym, k, lo, hi, 2 * panels) for lo, hi in arcs) / TWO_PI
    if abs(fine - coarse) > tol:
        raise QuadratureNotConverged(
            f"fhat({k}) refinement levels differ by {abs(fine - coarse):.3g}")
    return fine


# -- validation and serialization ------------------------------------------------------

def sup_norm(sym: Symbol, n_grid: int = 4096) -> float:
    """max |f| over an equispaced grid plus both one-sided values at every jump."""
    theta = np.arange(n_grid) * (TWO_PI / n_grid)
    extra = [w.theta for _, w in sym.jump_terms]
    if extra:
        e = np.array(extra)
        theta = np.concatenate([theta, e, e - 1e-9])
    return float(np.max(np.abs(evaluate(sym, theta))))


def check_symbol(sym: Symbol, bound_tol: float = 1e-9, n_grid: int = 4096) -> None:
    """Raise SymbolError unless |f| <= 1 on the grid and every |kappa| <= 1."""
    for j in sym.jumps():
        if abs(j.kappa) > 1 + bound_tol:
            raise SymbolError(f"jump height {j.kappa} at {j.location!r} exceeds 1 in modulus")
    s = sup_norm(sym, n_grid)
    if s > 1 + bound_tol:
        raise SymbolError(f"sup |f| = {s:.12g} exceeds 1")


def symbol_from_dict(d: dict) -> Symbol:
    if not isinstance(d, dict):
        raise SymbolError("symbol JSON must be an object")
    if "builtin" in d:
        return builtin(d["builtin"])
    try:
        jumps = tuple((complex(float(j["re"]), float(j.get("im", 0.0))), CirclePoint(float(j["theta"])))
                      for j in d.get("jumps", []))
        trig = tuple((int(t["k"]), complex(float(t["re"]), float(t.get("im", 0.0))))
                     for t in d.get("trig", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise SymbolError(f"malformed symbol JSON: {exc}") from exc
    sym = Symbol(jump_terms=jumps, smooth_part=trig)
    check_symbol(sym)
    return sym


def symbol_to_dict(sym: Symbol) -> dict:
    if sym.builtin_tag in (HILBERT_PSI, INDICATOR_ETA):
        return {"builtin": sym.builtin_tag}
    return {
        "jumps": [{"theta": w.theta, "re": a.real, "im": a.imag} for a, w in sym.jump_terms],
        "trig": [{"k": k, "re": t.real, "im": t.imag} for k, t in sym.smooth_part],
    }


def load_symbol(path) -> Symbol:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SymbolError(f"{path}: {exc}") from exc
    return symbol_from_dict(data)
