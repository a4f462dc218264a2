"""Special functions and power series behind the asymptotic exponents.

The closed forms (principal-branch arcsin and its square) are what the
predictions use.  The power series

    S(v) = sum_{m>=1} v^m B(m/2, 1/2) / (2 pi^2 m)
    T(v) = sum_{m>=1} v^(2m) B(m, 1/2) / (4 pi^2 m)

and the sech integrals are independent routes used to cross-check them.

On the unit circle the series terms only decay like m^(-3/2), so plain
partial sums cannot reach double precision.  After a direct block of terms
the remaining tail is evaluated analytically: by an Euler (repeated
summation-by-parts) expansion when the argument is away from 1, and by
Euler-Maclaurin when it is close to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import bernoulli, loggamma

from .errors import DomainError, SeriesNotConverged

_LOG_SQRT_PI = 0.5 * math.log(math.pi)

# first index handled by the analytic tail on (or near) the unit circle
_TAIL_START = 2**15
# |1 - w| * start above which the Euler expansion is used instead of Euler-Maclaurin
_EULER_THRESHOLD = 200.0
_EULER_MAX_ORDER = 24
# above this real part, log Gamma(x) - log Gamma(x + 1/2) uses its asymptotic series
_RATIO_ASYMPTOTIC_FROM = 64.0


def _ratio_coefficients(n_max=11):
    # log G(x) - log G(x+1/2) ~ -log(x)/2 + sum_n c_n x^-n, with
    # c_n = (-1)^(n+1) (B_{n+1}(0) - B_{n+1}(1/2)) / (n(n+1)) and B_j(1/2) = (2^(1-j) - 1) B_j
    b = bernoulli(n_max + 1)
    out = []
    for n in range(1, n_max + 1):
        j = n + 1
        diff = b[j] * (2.0 - 2.0 ** (1 - j))
        out.append((n, (-1) ** (n + 1) * diff / (n * (n + 1))))
    return [(n, c) for n, c in out if c != 0.0]


_RATIO_COEFS = _ratio_coefficients()


def _log_gamma_ratio_half(x):
    """log Gamma(x) - log Gamma(x + 1/2), accurate for large |x| (real or complex)."""
    x = np.asarray(x)
    big = x.real >= _RATIO_ASYMPTOTIC_FROM
    out = np.empty(x.shape, dtype=complex if np.iscomplexobj(x) else float)
    small = ~big
    if np.any(small):
        xs = x[small]
        out[small] = loggamma(xs) - loggamma(xs + 0.5)
    if np.any(big):
        xb = x[big]
        inv = 1.0 / xb
        acc = np.zeros_like(xb)
        for n, c in reversed(_RATIO_COEFS):
            acc = acc + c * inv**n
        out[big] = -0.5 * np.log(xb) + acc
    return out


@dataclass(frozen=True)
class SeriesEvalConfig:
    max_terms: int = 10**6
    abs_tol: float = 1e-14

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


DEFAULT_SERIES = SeriesEvalConfig()


def beta_half(k):
    """B(k/2, 1/2) = Gamma(k/2) Gamma(1/2) / Gamma((k+1)/2).  Accepts scalars or arrays."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 1):
        raise DomainError("beta_half needs k >= 1")
    val = np.exp(_log_gamma_ratio_half(k_arr / 2) + _LOG_SQRT_PI)
    return float(val) if val.ndim == 0 else val


def arcsin_c(w):
    """Principal-branch arcsin, -i log(i w + sqrt(1 - w^2))."""
    w = np.asarray(w, dtype=complex)
    val = -1j * np.log(1j * w + np.sqrt(1 - w * w))
    # on the real segment the value is real; drop the rounding residue
    on_segment = (w.imag == 0) & (np.abs(w.real) <= 1)
    val = np.where(on_segment, np.arcsin(np.clip(w.real, -1, 1)) + 0j, val)
    return complex(val) if val.ndim == 0 else val


# -- series coefficients ------------------------------------------------------

def _coef_S(m):
    # B(m/2, 1/2) / (2 pi^2 m); complex m is used on the rotated contour
    return np.exp(_log_gamma_ratio_half(m / 2) + _LOG_SQRT_PI) / (2 * math.pi**2 * m)


def _coef_T(m):
    return np.exp(_log_gamma_ratio_half(m) + _LOG_SQRT_PI) / (4 * math.pi**2 * m)


def _coef_arcsin_sq(m):
    # (m!)^2 4^m / ((2m)! m^2) / 2, rewritten as B(m, 1/2) / (2m) to avoid overflow
    return np.exp(_log_gamma_ratio_half(m) + _LOG_SQRT_PI) / (2 * m)


def _tail_euler(coef, w, start):
    """sum_{m>=start} coef(m) w^m = w^start/(1-w) * sum_j (w/(1-w))^j Delta^j coef(start)."""
    m = np.arange(start, start + _EULER_MAX_ORDER + 1, dtype=float)
    diffs = coef(m)
    q = w / (1 - w)
    total = 0j
    qj = 1.0 + 0j
    err = math.inf
    for j in range(_EULER_MAX_ORDER):
        term = qj * diffs[0]
        if abs(term) > err:
            # asymptotic expansion started to diverge
            break
        total += term
        err = abs(term)
        diffs = np.diff(diffs)
        qj *= q
    pref = w**start / (1 - w)
    return pref * total, abs(pref) * err


def _tail_euler_maclaurin(coef, w, start):
    """Tail for w near 1, treating f(x) = coef(x) w^x as a smooth function of x.

    The integral of f over [start, inf) is taken along the ray start + t*d
    with d chosen so that w^x decays without oscillating there.
    """
    L = complex(np.log(w))
    # |w| <= 1 up to rounding; a positive real part would only be noise
    L = complex(min(L.real, 0.0), L.imag)
    a = float(start)
    g0 = float(coef(np.array([a]))[0])
    gp, gm = coef(np.array([a + 1.0, a - 1.0]))
    dg = (gp - gm) / 2.0
    d = 1.0 + 0j if abs(L) == 0.0 else -np.conj(L) / abs(L)

    # t = a (1/tau^2 - 1) maps (0, 1] onto [0, inf).  The integrand is smooth on
    # [0, 1] but switches off sharply near tau ~ sqrt(|L| a), so panels are
    # graded geometrically around that point.
    edges = np.linspace(0.0, 1.0, 17)
    cut = math.sqrt(abs(L) * a)
    if 0.0 < cut < 1.0:
        edges = np.union1d(edges, cut * 2.0 ** np.arange(-6, 1 + math.ceil(-math.log2(cut))))
        edges = edges[edges <= 1.0]

    def ray_integral(order):
        nodes, weights = np.polynomial.legendre.leggauss(order)
        half = np.diff(edges) / 2
        tau = ((edges[:-1] + half)[:, None] + half[:, None] * nodes[None, :]).ravel()
        wts = (half[:, None] * weights[None, :]).ravel()
        t = a * (1.0 / (tau * tau) - 1.0)
        x = a + t * d
        vals = coef(x.astype(complex)) * np.exp(t * d * L) * d * 2 * a / tau**3
        return complex(np.sum(wts * vals))

    fine = ray_integral(32)
    quad_err = abs(fine - ray_integral(20))
    wa = np.exp(a * L)
    integral = fine * wa
    f0 = g0 * wa
    f1 = (dg + g0 * L) * wa
    tail = integral + f0 / 2 - f1 / 12
    err = abs(f1) * (abs(L) + 1.0 / a) ** 2 / 72.0 + quad_err * abs(wa)
    return tail, err


def _sum_power_series(coef, w, cfg):
    """sum_{m>=1} coef(m) w^m for |w| <= 1 and coef positive, smooth, decreasing."""
    w = complex(w)
    if abs(w) > 1.0:
        w = w / abs(w)
    r = abs(w)
    if r == 0.0:
        return 0j
    c1 = float(coef(np.array([1.0]))[0])
    if r < 1.0:
        need = (math.log(cfg.abs_tol) + math.log1p(-r) - math.log(c1)) / math.log(r)
        n_direct = max(1, math.ceil(need))
        if n_direct <= min(cfg.max_terms, _TAIL_START):
            m = np.arange(1, n_direct + 1, dtype=float)
            return complex(np.sum(coef(m) * w**m))
    start = min(_TAIL_START, cfg.max_terms) + 1
    m = np.arange(1, start, dtype=float)
    head = complex(np.sum(coef(m) * w**m))
    if abs(1 - w) * start >= _EULER_THRESHOLD:
        tail, err = _tail_euler(coef, w, start)
    else:
        tail, err = _tail_euler_maclaurin(coef, w, start)
    if not err <= cfg.abs_tol:
        raise SeriesNotConverged(
            f"series at w={w!r}: tail error estimate {err:.3g} exceeds {cfg.abs_tol:.3g}"
        )
    return head + tail


def _check_disk(v, name):
    v = complex(v)
    if abs(v) > 1 + 1e-12:
        raise DomainError(f"{name} requires |v| <= 1, got |v| = {abs(v):.17g}")
    return v


def arcsin_sq_of_square(u, cfg: SeriesEvalConfig = DEFAULT_SERIES):
    """arcsin(v)^2 where v^2 = u, without choosing a square root.

    Uses the even series (1/2) sum (m!)^2 4^m u^m / ((2m)! m^2) for |u| <= 1,
    so the value is the same for both roots.  Outside the disk it falls back
    to the principal root.
    """
    u = complex(u)
    if abs(u) > 1 + 1e-12:
        return arcsin_c(np.sqrt(u)) ** 2
    return _sum_power_series(_coef_arcsin_sq, u, cfg)


def series_S(v, cfg: SeriesEvalConfig = DEFAULT_SERIES):
    """sum_{m>=1} v^m B(m/2,1/2)/(2 pi^2 m) = arcsin(v)/(2 pi) + arcsin(v)^2/(2 pi^2)."""
    v = _check_disk(v, "series_S")
    return _sum_power_series(_coef_S, v, cfg)


def series_T(v, cfg: SeriesEvalConfig = DEFAULT_SERIES):
    """sum_{m>=1} v^(2m) B(m,1/2)/(4 pi^2 m) = arcsin(v)^2/(2 pi^2)."""
    v = _check_disk(v, "series_T")
    return _sum_power_series(_coef_T, v * v, cfg)


def closed_S(v):
    a = arcsin_c(v)
    return a / (2 * math.pi) + a * a / (2 * math.pi**2)


def closed_T(v):
    a = arcsin_c(v)
    return a * a / (2 * math.pi**2)


# -- sech integrals ------------------------------------------------------------

def _sech(x):
    e = np.exp(-np.abs(x))
    return 2 * e / (1 + e * e)


def sech_integral(m: int) -> float:
    """(1/pi) int_0^inf sech(pi u)^m du by quadrature; should equal B(m/2,1/2)/(2 pi^2)."""
    if m < 1:
        raise DomainError("sech_integral needs m >= 1")
    # sech(x)^m <= 2^m e^{-m x}; cut where that drops below 1e-18
    upper = (m * math.log(2.0) + 18 * math.log(10.0)) / (m * math.pi)
    val, _ = integrate.quad(lambda u: _sech(math.pi * u) ** m, 0.0, upper,
                            epsabs=1e-15, epsrel=1e-13, limit=200)
    return val / math.pi


def _log_one_minus_v_sech(x, v):
    if x > 1.0:
        return math.log1p(-v * float(_sech(x)))
    # 1 - v sech x = (2 sinh^2(x/2) + 1 - v) / cosh x, free of cancellation at v = 1
    return math.log(2 * math.sinh(x / 2) ** 2 + (1 - v)) - math.log(math.cosh(x))


def log_integral(v: float) -> float:
    """(1/pi) int_0^inf log(1 - v sech(pi u)) du, which equals -S(v) for |v| <= 1."""
    v = float(v)
    if abs(v) > 1:
        raise DomainError("log_integral requires |v| <= 1")
    if v == 0.0:
        return 0.0
    split = 1.0 / math.pi
    # log sech(pi u) < -44 beyond this point, contribution < 1e-19
    upper = 15.0
    # u = t^2 on [0, split] tames the log singularity at u = 0 when v = 1
    head, _ = integrate.quad(
        lambda t: 2 * t * _log_one_minus_v_sech(math.pi * t * t, v),
        0.0, math.sqrt(split), epsabs=1e-15, epsrel=1e-13, limit=200)
    rest, _ = integrate.quad(
        lambda u: _log_one_minus_v_sech(math.pi * u, v),
        split, upper, epsabs=1e-15, epsrel=1e-13, limit=200)
    return (head + rest) / math.pi
