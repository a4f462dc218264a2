"""Dense finite sections of Hankel matrices and the quantities built on them."""

from __future__ import annotations

import logging
import math

import numpy as np
import scipy.linalg
from scipy.special import digamma, polygamma

from .errors import DimensionTooLarge, EigensolverFailed
from .symbol import Symbol, fourier_coefficients

log = logging.getLogger(__name__)

MAX_DIMENSION = 8192


def _check_dimension(n):
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionTooLarge(f"dimension {n} outside [1, {MAX_DIMENSION}]")


class HankelTruncation:
    """The N x N section 1_N H(f) 1_N.

    ``entries`` is float64 when every Fourier coefficient is real (the matrix is
    then real symmetric) and complex128 otherwise.  Eigenvalues are computed
    on first use and kept.
    """

    def __init__(self, entries, symbol_id="", coefficients=None):
        entries = np.asarray(entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("entries must be a square matrix")
        if np.iscomplexobj(entries) and not np.any(entries.imag):
            entries = entries.real.copy()
        entries.setflags(write=False)
        self.entries = entries
        self.symbol_id = symbol_id
        self.coefficients = coefficients
        self._eigenvalues = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.entries)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues as a complex array; computed once per truncation."""
        if self._eigenvalues is None:
            try:
                if self.is_real:
                    lam = scipy.linalg.eigvalsh(self.entries).astype(complex)
                else:
                    # complex symmetric, not Hermitian
                    lam = scipy.linalg.eigvals(self.entries, check_finite=False)
            except (np.linalg.LinAlgError, ValueError) as exc:
                raise EigensolverFailed(str(exc)) from exc
            lam.setflags(write=False)
            self._eigenvalues = lam
        return self._eigenvalues

    def __repr__(self):
        return f"HankelTruncation(n={self.n}, symbol_id={self.symbol_id!r})"


def hankel_from_coefficients(c, n) -> np.ndarray:
    """N x N matrix with entries c[j + k]; c needs at least 2n - 1 values."""
    c = np.asarray(c)
    return scipy.linalg.hankel(c[:n], c[n - 1:2 * n - 1])


def truncate(sym: Symbol, n: int) -> HankelTruncation:
    _check_dimension(n)
    c = fourier_coefficients(sym, 2 * n - 1)
    if not np.any(c.imag):
        c = c.real
    return HankelTruncation(hankel_from_coefficients(c, n), sym.symbol_id, coefficients=c)


def trace_power(h: HankelTruncation, k: int, method: str = "auto", cross_check: bool = False) -> complex:
    """Tr H_N^k.

    k = 1 sums the diagonal.  Otherwise ``method="auto"`` uses the cached
    spectrum, falling back to repeated multiplication if the eigensolver
    fails; ``"eig"`` and ``"power"`` force one route.  With ``cross_check``
    both routes run and must agree to 1e-8 relative.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return complex(np.trace(h.entries))
    if method not in ("auto", "eig", "power"):
        raise ValueError(f"unknown method {method!r}")
    if method == "power":
        return _trace_power_direct(h, k)
    try:
        via_eig = complex(np.sum(h.eigenvalues() ** k))
    except EigensolverFailed:
        if method == "eig":
            raise
        log.warning("eigensolver failed for %r; using matrix powers", h)
        return _trace_power_direct(h, k)
    if cross_check:
        direct = _trace_power_direct(h, k)
        scale = max(abs(direct), np.finfo(float).tiny)
        if abs(via_eig - direct) > 1e-8 * scale:
            raise EigensolverFailed(
                f"Tr H^{k}: eigenvalue route {via_eig} vs matrix powers {direct}")
    return via_eig


def _trace_power_direct(h, k):
    return complex(np.trace(np.linalg.matrix_power(h.entries, k)))


def trace_powers(h: HankelTruncation, k_max: int) -> np.ndarray:
    """[Tr H^1, ..., Tr H^k_max] from one spectrum."""
    lam = h.eigenvalues()
    out = np.empty(k_max, dtype=complex)
    out[0] = np.trace(h.entries)
    p = lam.copy()
    for k in range(2, k_max + 1):
        p = p * lam
        out[k - 1] = np.sum(p)
    return out


def hs_norm_sq(h) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm."""
    a = h.entries if isinstance(h, HankelTruncation) else np.asarray(h)
    return float(np.sum(np.abs(a) ** 2))


def spectral_norm(h) -> float:
    a = h.entries if isinstance(h, HankelTruncation) else np.asarray(h)
    return float(np.linalg.norm(a, 2))


def compressed_square(n: int) -> np.ndarray:
    """1_N H^2 1_N for the Hilbert matrix H, from digamma / trigamma closed forms.

    M(j, k) = sum_{l>=0} 1 / (pi^2 (j+l+1)(k+l+1))
            = (digamma(j+1) - digamma(k+1)) / (pi^2 (j - k)),  j != k
            = trigamma(j+1) / pi^2,                             j == k
    """
    _check_dimension(n)
    j = np.arange(n, dtype=float)
    dg = digamma(j + 1)
    diff = j[:, None] - j[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        m = (dg[:, None] - dg[None, :]) / diff
    idx = np.arange(n)
    m[idx, idx] = polygamma(1, j + 1)
    return m / math.pi**2


def tail_hs(n: int) -> float:
    """||1_N H (1 - 1_N)||_2^2 = sum_{j<N} trigamma(j + N + 1) / pi^2 for the Hilbert matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(n, dtype=float)
    return float(np.sum(polygamma(1, j + n + 1)) / math.pi**2)
