"""Exact eigen-decompositions.

The KMS matrix has eigenvectors ``cos(q j - phi(q))`` with eigenvalue
``sinh k / (cosh k - cos q)``; the admissible wavenumbers solve
``q N = nu pi + 2 phi(q)`` for ``nu = 0..N``.  The reflected Hankel matrix
shares those eigenvectors with parity-signed eigenvalues, the decaying
Hankel matrix is rank one, and the Toeplitz-Hankel matrix ``M`` is solved
from its even and odd boundary conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import oracle
from .errors import DomainError, NoRootError
from .inverse import solve_boundary_x
from .matrices import KmsParams, ThParams, build_m

__all__ = [
    "SpectralMode",
    "MSpectralMode",
    "phase_shift",
    "lambda_of_q",
    "solve_quantization",
    "c_spectrum",
    "reflected_hankel_spectrum",
    "decaying_hankel_spectrum",
    "m_spectrum",
]

Parity = Literal["even", "odd"]

# interior margin keeping q away from 0 and pi, where the cosine ansatz vanishes
Q_MARGIN = 1e-12
_PANELS_PER_MODE = 64


def _ro(values) -> np.ndarray:
    a = np.array(values, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SpectralMode:
    nu: int
    q: float
    phase_shift: float
    eigenvalue: float
    parity: Parity
    eigenvector: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "eigenvector", _ro(self.eigenvector))


@dataclass(frozen=True)
class MSpectralMode:
    nu: int
    q: float  # nan for oracle-only modes without a real wavenumber
    eigenvalue: float
    parity: Parity
    eigenvector: np.ndarray = field(repr=False)
    source: Literal["analytic_root", "oracle_fallback"] = "analytic_root"

    def __post_init__(self):
        object.__setattr__(self, "eigenvector", _ro(self.eigenvector))


def _check_q(q):
    q_arr = np.asarray(q, dtype=float)
    if not np.all((q_arr > 0.0) & (q_arr < math.pi)):
        raise DomainError("q must lie in the open interval (0, pi)")
    return q_arr


def phase_shift(q, kappa: float):
    """Boundary phase ``phi(q) = arccot(sin q / (cos q - e^{-k}))``.

    Taken on the continuous branch running from ``pi/2`` at ``q -> 0`` down
    to ``-pi/2`` at ``q -> pi``; since ``sin q > 0`` this is the
    two-argument arctangent of ``(cos q - e^{-k}, sin q)``.
    """
    q_arr = _check_q(q)
    out = np.arctan2(np.cos(q_arr) - math.exp(-kappa), np.sin(q_arr))
    return float(out) if out.ndim == 0 else out


def lambda_of_q(q, kappa: float):
    """``sinh k / (cosh k - cos q)``, evaluated without cancellation at small k or q."""
    e = math.exp(-kappa)
    s = np.sin(0.5 * np.asarray(q, dtype=float))
    out = -math.expm1(-2.0 * kappa) / ((1.0 - e) ** 2 + 4.0 * e * s * s)
    return float(out) if np.ndim(out) == 0 else out


def _quantization_residual(q: float, nu: int, p: KmsParams) -> float:
    return q * p.n - 2.0 * phase_shift(q, p.kappa) - nu * math.pi


def solve_quantization(nu: int, p: KmsParams, *, max_iter: int = 200) -> float:
    """Root of ``f(q) = q N - 2 phi(q) - nu pi`` in ``(0, pi)``.

    ``f' = N + 1 + Lambda(q) > 0`` so the root is unique.  Newton steps are
    kept inside a shrinking sign-change bracket; a step leaving the bracket
    is replaced by bisection.
    """
    n = p.n
    if not 0 <= nu <= n:
        raise ValueError(f"nu must lie in 0..{n}")
    lo_lim, hi_lim = Q_MARGIN, math.pi - Q_MARGIN
    if n == 0:
        lo, hi = lo_lim, hi_lim
    else:
        lo = min(max((nu - 1) * math.pi / n, lo_lim), hi_lim)
        hi = min(max((nu + 1) * math.pi / n, lo_lim), hi_lim)
    f_lo = _quantization_residual(lo, nu, p)
    f_hi = _quantization_residual(hi, nu, p)
    while f_lo > 0.0 and lo > lo_lim:
        lo = max(lo_lim, lo - 0.5 * math.pi / max(n, 1))
        f_lo = _quantization_residual(lo, nu, p)
    while f_hi < 0.0 and hi < hi_lim:
        hi = min(hi_lim, hi + 0.5 * math.pi / max(n, 1))
        f_hi = _quantization_residual(hi, nu, p)
    if f_lo > 0.0 or f_hi < 0.0:
        raise NoRootError(f"no sign change for nu={nu}, kappa={p.kappa}, N={n}")

    # |f| floor: rounding of q*N and nu*pi terms
    f_tol = max(1e-13, 8.0 * np.finfo(float).eps * (n + nu + 1) * math.pi)
    q = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f = _quantization_residual(q, nu, p)
        if abs(f) <= f_tol:
            return q
        if f < 0.0:
            lo = q
        else:
            hi = q
        step = f / (n + 1.0 + lambda_of_q(q, p.kappa))
        q_new = q - step
        if not lo < q_new < hi:
            q_new = 0.5 * (lo + hi)
        if q_new == q or hi - lo <= 4.0 * np.finfo(float).eps * q:
            return q_new
        q = q_new
    return q


def _unit(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return v


def c_spectrum(p: KmsParams) -> list[SpectralMode]:
    """All ``N + 1`` eigenpairs of the KMS matrix, ordered by ``nu`` (descending eigenvalue)."""
    if p.n == 0:
        q = math.acos(math.exp(-p.kappa))
        return [SpectralMode(0, q, 0.0, 1.0, "even", [1.0])]
    j = np.arange(p.order, dtype=float)
    modes = []
    for nu in range(p.order):
        q = solve_quantization(nu, p)
        phi = phase_shift(q, p.kappa)
        vec = _unit(np.cos(q * j - phi))
        parity: Parity = "even" if nu % 2 == 0 else "odd"
        modes.append(SpectralMode(nu, q, phi, lambda_of_q(q, p.kappa), parity, vec))
    return modes


def reflected_hankel_spectrum(p: KmsParams) -> list[SpectralMode]:
    """Eigenpairs of ``exp(-k|i + j - N|)``: same vectors, eigenvalue sign set by parity."""
    out = []
    for m in c_spectrum(p):
        sign = 1.0 if m.parity == "even" else -1.0
        out.append(SpectralMode(m.nu, m.q, m.phase_shift, sign * m.eigenvalue, m.parity, m.eigenvector))
    return out


def decaying_hankel_spectrum(p: KmsParams) -> tuple[float, np.ndarray]:
    """The one nonzero eigenpair of ``exp(-k(i + j))``; its null space is N-dimensional."""
    k = p.kappa
    value = math.expm1(-2.0 * k * p.order) / math.expm1(-2.0 * k)
    vec = np.exp(-k * np.arange(p.order, dtype=float))
    return value, _ro(vec / np.linalg.norm(vec))


# -- Toeplitz-Hankel ---------------------------------------------------------

def _boundary_functions(t: ThParams):
    """Even/odd boundary mismatch for ``cos / sin(q (j - N/2))``, scaled by ``2 (a-b) sinh k``."""
    x0, xn = solve_boundary_x(t)
    scale = (t.a - t.b) * math.exp(t.kappa) * -math.expm1(-2.0 * t.kappa)  # 2 (a-b) sinh k
    e = math.exp(-t.kappa)
    half = 0.5 * t.n

    def even(q):
        return scale * (x0 + xn) * np.cos(q * half) + np.cos(q * (half + 1.0)) - e * np.cos(q * half)

    def odd(q):
        return scale * (x0 - xn) * np.sin(q * half) + np.sin(q * (half + 1.0)) - e * np.sin(q * half)

    return even, odd


def _bisect(f, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(f, panels: int) -> list[float]:
    grid = np.linspace(Q_MARGIN, math.pi - Q_MARGIN, panels + 1)
    vals = f(grid)
    roots = []
    for i in range(panels):
        if vals[i] == 0.0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(_bisect(f, float(grid[i]), float(grid[i + 1]), float(vals[i])))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def _parity_of(v: np.ndarray) -> tuple[Parity, np.ndarray]:
    r = v[::-1]
    even, odd = 0.5 * (v + r), 0.5 * (v - r)
    if np.linalg.norm(even) >= np.linalg.norm(odd):
        return "even", _unit(even)
    return "odd", _unit(odd)


def _q_from_eigenvalue(lam: float, t: ThParams) -> float:
    # inverts Lambda = (a-b) sinh k / (cosh k - cos q)
    k = t.kappa
    cos_q = math.cosh(k) - (t.a - t.b) * math.sinh(k) / lam
    if -1.0 < cos_q < 1.0:
        return math.acos(cos_q)
    return math.nan


def m_spectrum(t: ThParams, *, residual_rtol: float = 1e-9) -> list[MSpectralMode]:
    """Eigenpairs of the Toeplitz-Hankel matrix ``M``.

    Real roots of the even and odd boundary conditions give modes
    ``cos[q (j - N/2)]`` and ``sin[q (j - N/2)]`` with
    ``1/Lambda = (coth k - cos q / sinh k) / (a - b)``.  The root scan is a
    heuristic; whatever it misses (typically evanescent edge modes at
    strong contrast) is filled from the dense oracle and flagged
    ``source="oracle_fallback"``.  Modes are ordered by descending
    eigenvalue, near-ties even parity first.
    """
    mat = np.asarray(build_m(t))
    norm_inf = float(np.abs(mat).sum(axis=1).max())
    tol = residual_rtol * norm_inf
    size = t.order
    found: list[tuple[float, float, Parity, np.ndarray, str]] = []

    if t.n == 0:
        found.append((float(mat[0, 0]), math.nan, "even", np.ones(1), "analytic_root"))
    else:
        even_f, odd_f = _boundary_functions(t)
        panels = _PANELS_PER_MODE * (t.n + 2)
        centred = np.arange(size, dtype=float) - 0.5 * t.n
        for parity, f, basis in (("even", even_f, np.cos), ("odd", odd_f, np.sin)):
            for q in _scan_roots(f, panels):
                vec = _unit(basis(q * centred))
                lam = (t.a - t.b) * lambda_of_q(q, t.kappa)
                if np.abs(mat @ vec - lam * vec).max() <= tol:
                    found.append((lam, q, parity, vec, "analytic_root"))

    if len(found) < size:
        dec = oracle.eig_symmetric(mat)
        for lam, vec in zip(dec.eigenvalues, dec.eigenvectors.T):
            parity, vec = _parity_of(vec)
            if any(p == parity and abs(lam - l0) <= tol for l0, _, p, _, _ in found):
                continue
            found.append((float(lam), _q_from_eigenvalue(float(lam), t), parity, vec, "oracle_fallback"))
            if len(found) == size:
                break

    found.sort(key=lambda m: -m[0])
    for i in range(len(found) - 1):
        a, b = found[i], found[i + 1]
        if abs(a[0] - b[0]) <= 1e-12 and a[2] == "odd" and b[2] == "even":
            found[i], found[i + 1] = b, a
    return [
        MSpectralMode(nu, q, lam, parity, vec, source)
        for nu, (lam, q, parity, vec, source) in enumerate(found[:size])
    ]
