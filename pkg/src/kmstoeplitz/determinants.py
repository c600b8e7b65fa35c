"""Determinants, Szego asymptotics, eigenvalue bounds and the density of states.

Determinants are returned as logarithms (with a separate sign where the
matrix is indefinite) so that ``b e^{2 k N}``-sized terms never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import DomainError
from .matrices import KmsParams, ThParams, build_c
from .spectrum import c_spectrum

__all__ = [
    "SzegoData",
    "det_c_exact",
    "det_c_recurrence",
    "recurrence_log_minors",
    "det_c_from_spectrum",
    "szego_data",
    "szego_symbol",
    "szego_tail_bound",
    "auto_truncation",
    "szego_estimate",
    "determinant_ratios",
    "gn_e_constancy",
    "det_m_exact",
    "det_m_bulk_formula",
    "eigenvalue_bounds",
    "dos_weight",
    "dos_cumulative",
    "dos_total_mass",
    "eigenvalue_counting",
]


def _log1m_exp2(kappa: float) -> float:
    """log(1 - e^{-2k})."""
    return math.log(-math.expm1(-2.0 * kappa))


def _log_2sinh(kappa: float) -> float:
    return kappa + _log1m_exp2(kappa)


def det_c_exact(p: KmsParams) -> float:
    """``log det C = N log(1 - e^{-2k})``."""
    return p.n * _log1m_exp2(p.kappa)


def recurrence_log_minors(p: KmsParams) -> np.ndarray:
    """``log ||A_j||`` for ``j = 0..N+1``.

    ``A_j`` is the trailing ``j x j`` block of ``(2 sinh k) C^{-1}``; the
    minors obey ``||A_{j+1}|| = V_j ||A_j|| - ||A_{j-1}||`` with
    ``V_j = 2 cosh k`` for ``j < N`` and ``e^k`` at ``j = N``.  The pair
    is rescaled as it grows so the recurrence stays finite for large N k.
    """
    k = p.kappa
    if p.n == 0:
        return np.array([0.0, _log_2sinh(k)])
    two_cosh = 2.0 * math.cosh(k)
    logs = [0.0, k]
    # true minors are (prev, cur) * e^{shift}
    prev, cur, shift = 1.0, math.exp(k), 0.0
    for j in range(1, p.n + 1):
        v = math.exp(k) if j == p.n else two_cosh
        prev, cur = cur, v * cur - prev
        logs.append(math.log(cur) + shift)
        if cur > 1e100:
            shift += math.log(cur)
            prev, cur = prev / cur, 1.0
    return np.array(logs)


def det_c_recurrence(p: KmsParams) -> float:
    """``log det C`` from ``(2 sinh k)^{N+1} / ||A_{N+1}||``."""
    if p.n == 0:
        return 0.0
    return p.order * _log_2sinh(p.kappa) - float(recurrence_log_minors(p)[-1])


def det_c_from_spectrum(p: KmsParams) -> float:
    """``sum_nu log Lambda_nu`` over the exact eigenvalues."""
    return math.fsum(math.log(m.eigenvalue) for m in c_spectrum(p))


@dataclass(frozen=True)
class SzegoData:
    """Fourier data of ``log phi``: ``nu_0`` and ``nu_l = e^{-k l} / l`` up to ``truncation``."""

    kappa: float
    nu0: float
    truncation: int

    def nu_l(self, l: int) -> float:
        if l == 0:
            return self.nu0
        l = abs(l)
        return math.exp(-self.kappa * l) / l


def szego_symbol(theta, kappa: float):
    """Generating density ``phi(theta) = sinh k / (cosh k - cos theta)``."""
    s = np.sin(0.5 * np.asarray(theta, dtype=float))
    e = math.exp(-kappa)
    return -math.expm1(-2.0 * kappa) / ((1.0 - e) ** 2 + 4.0 * e * s * s)


def szego_tail_bound(kappa: float, l_max: int) -> float:
    """Upper bound on ``sum_{l > l_max} l nu_l^2``."""
    x = math.exp(-2.0 * kappa * (l_max + 1))
    return x / ((l_max + 1) * -math.expm1(-2.0 * kappa))


def auto_truncation(kappa: float, tol: float = 1e-16) -> int:
    l_max = 1
    while szego_tail_bound(kappa, l_max) >= tol:
        l_max *= 2
    lo = l_max // 2
    while lo + 1 < l_max:
        mid = (lo + l_max) // 2
        if szego_tail_bound(kappa, mid) < tol:
            l_max = mid
        else:
            lo = mid
    return l_max


def szego_data(kappa: float, l_max: int | None = None, tol: float = 1e-16) -> SzegoData:
    if l_max is None:
        l_max = auto_truncation(kappa, tol)
    return SzegoData(kappa, _log1m_exp2(kappa), l_max)


def szego_estimate(p: KmsParams, l_max: int | None = None, tol: float = 1e-16) -> float:
    """Strong-limit estimate ``(N+1) nu_0 + sum_{l=1}^{L} l nu_l^2`` of ``log det C``."""
    data = szego_data(p.kappa, l_max, tol)
    tail = math.fsum(l * data.nu_l(l) ** 2 for l in range(1, data.truncation + 1))
    return p.order * data.nu0 + tail


def determinant_ratios(kappa: float, n_range) -> np.ndarray:
    """Oracle ratios ``det C_N / det C_{N-1}`` for each N in ``n_range`` (N >= 1)."""
    out = []
    for n in n_range:
        hi = oracle.lu_det(build_c(KmsParams(kappa, n)))[0]
        lo = oracle.lu_det(build_c(KmsParams(kappa, n - 1)))[0]
        out.append(math.exp(hi - lo))
    return np.array(out)


def gn_e_constancy(kappa: float, n_range=range(1, 21)) -> tuple[float, float]:
    """Constants ``(G, E)`` with ``det C_N = G^N E``, from oracle determinants.

    ``1 / phi(z)`` is a Laurent polynomial of degree one here, so
    ``G = det C_1 / det C_0`` and ``E = det C_1 / G``.  Callers check
    constancy with :func:`determinant_ratios` over ``n_range``.
    """
    d0 = math.exp(oracle.lu_det(build_c(KmsParams(kappa, 0)))[0])
    d1 = math.exp(oracle.lu_det(build_c(KmsParams(kappa, 1)))[0])
    g = d1 / d0
    return g, d1 / g


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def det_m_exact(t: ThParams) -> tuple[float, int]:
    """``(log|det M|, sign)``.

    ``T M`` is the identity except rows 0 and N, so
    ``det M = [(1 + alpha_0)^2 - alpha_N^2] / det T``, i.e.

        (a-b)^{N-1} (1 - e^{-2k})^N [(a+c)^2 - (b e^{Nk} + c e^{-Nk})^2].
    """
    if t.n == 0:
        entry = t.a + t.b + 2.0 * t.c
        return (math.log(abs(entry)) if entry else -math.inf), _sign(entry)
    ab = t.a - t.b
    corner = t.b * math.exp(t.n * t.kappa) + t.c * math.exp(-t.n * t.kappa)
    f1, f2 = t.a + t.c - corner, t.a + t.c + corner
    sign = _sign(ab) ** ((t.n - 1) % 2) * _sign(f1) * _sign(f2)
    if sign == 0:
        return -math.inf, 0
    log_abs = (t.n - 1) * math.log(abs(ab)) + t.n * _log1m_exp2(t.kappa)
    return log_abs + math.log(abs(f1)) + math.log(abs(f2)), sign


def det_m_bulk_formula(t: ThParams) -> tuple[float, int]:
    """``(a-b)^{N-1} (a+c)^2 (1 - e^{-2k})^N`` as ``(log|.|, sign)``.

    Drops the corner coupling ``(b e^{Nk} + c e^{-Nk})^2`` kept by
    :func:`det_m_exact`; it only approaches the true determinant when that
    term is negligible against ``(a+c)^2``.
    """
    ab = t.a - t.b
    ac = t.a + t.c
    sign = _sign(ab) ** ((t.n - 1) % 2) * (1 if ac else 0)
    if sign == 0:
        return -math.inf, 0
    return (t.n - 1) * math.log(abs(ab)) + 2.0 * math.log(abs(ac)) + t.n * _log1m_exp2(t.kappa), sign


def eigenvalue_bounds(kappa: float) -> tuple[float, float]:
    """Spectral envelope ``(tanh(k/2), coth(k/2))`` of the KMS matrix, reciprocal to each other."""
    lo = math.tanh(0.5 * kappa)
    return lo, 1.0 / lo


def dos_weight(lam, p: KmsParams):
    """Density of eigenvalues

        rho(L) = (N + 1 + L) sinh k / (pi L^2 sqrt(1 - (cosh k - sinh k / L)^2))

    on the open interval ``(tanh(k/2), coth(k/2))``.
    """
    lo, hi = eigenvalue_bounds(p.kappa)
    lam_arr = np.asarray(lam, dtype=float)
    if not np.all((lam_arr > lo) & (lam_arr < hi)):
        raise DomainError(f"eigenvalue argument outside ({lo}, {hi})")
    sh, ch = math.sinh(p.kappa), math.cosh(p.kappa)
    u = ch - sh / lam_arr
    rho = (p.order + lam_arr) * sh / (math.pi * lam_arr**2 * np.sqrt((1.0 - u) * (1.0 + u)))
    return float(rho) if rho.ndim == 0 else rho


def _substituted(p: KmsParams):
    # L = lo + (hi - lo) sin^2(theta) absorbs both inverse-square-root edges
    lo, hi = eigenvalue_bounds(p.kappa)
    width = hi - lo

    def integrand(theta):
        s, c = np.sin(theta), np.cos(theta)
        return dos_weight(lo + width * s * s, p) * 2.0 * width * s * c

    return integrand, lo, width


def dos_cumulative(lam, p: KmsParams, order: int = 64, panels: int = 4) -> float:
    """Integrated density ``int_{lower edge}^{lam} rho``."""
    integrand, lo, width = _substituted(p)
    frac = min(max((lam - lo) / width, 0.0), 1.0)
    theta_max = math.asin(math.sqrt(frac))
    if theta_max == 0.0:
        return 0.0
    return oracle.gauss_legendre(integrand, 0.0, theta_max, order, panels)


def dos_total_mass(p: KmsParams, order: int = 64, panels: int = 4) -> float:
    integrand, _, _ = _substituted(p)
    return oracle.gauss_legendre(integrand, 0.0, 0.5 * math.pi, order, panels)


def eigenvalue_counting(lam, eigenvalues) -> np.ndarray:
    """Number of ``eigenvalues`` not exceeding each ``lam``."""
    ev = np.sort(np.asarray(eigenvalues, dtype=float))
    return np.searchsorted(ev, np.asarray(lam, dtype=float), side="right")
