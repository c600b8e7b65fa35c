"""Brute-force numerical ground truth.

Nothing in here knows about kappa, a, b or c: every routine sees raw matrix
entries or a raw integrand only.  These are the references the analytic
routines are checked against, so they are kept deliberately plain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NoConvergence, SingularMatrix

__all__ = [
    "EigenDecomposition",
    "eig_symmetric",
    "lu_det",
    "dense_inverse",
    "gauss_legendre",
    "periodic_trapezoid",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns


def _round_robin(m: int):
    """Yield ``m - 1`` rounds of disjoint index pairs covering all pairs of ``range(m)``."""
    players = list(range(m))
    for _ in range(m - 1):
        half = m // 2
        top, bottom = players[:half], players[half:][::-1]
        yield np.array(top), np.array(bottom)
        # circle method: keep players[0] fixed, rotate the rest
        players = [players[0], players[-1]] + players[1:-1]


def _fix_signs(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    for k in range(v.shape[1]):
        nz = np.flatnonzero(np.abs(v[:, k]) > tol)
        if nz.size and v[nz[0], k] < 0:
            v[:, k] = -v[:, k]
    return v


def eig_symmetric(a, *, tol: float = 1e-14, max_sweeps: int = 60) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Rotations are scheduled in round-robin order so each round applies
    ``n // 2`` disjoint plane rotations at once.  Iteration stops when the
    off-diagonal Frobenius mass drops below ``tol * ||A||_F`` or a whole
    sweep finds nothing left to annihilate.

    Raises
    ------
    InvalidParams
        Input not square or asymmetric beyond ``1e-12`` (relative).
    NoConvergence
        Sweep budget exhausted.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParams("matrix must be square")
    n = a.shape[0]
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise InvalidParams("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    if n < 2:
        return EigenDecomposition(np.diag(a).copy(), v)

    norm_f = float(np.linalg.norm(a))
    offdiag = ~np.eye(n, dtype=bool)
    m = n + (n % 2)  # pad to even; the dummy index n is skipped
    rounds = list(_round_robin(m))

    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a[offdiag]))
        if off <= tol * norm_f:
            break
        rotated = False
        for top, bottom in rounds:
            keep = (top < n) & (bottom < n)
            p, q = top[keep], bottom[keep]
            apq = a[p, q]
            app, aqq = a[p, p], a[q, q]
            small = np.abs(apq) <= 0.5 * _EPS * np.sqrt(np.abs(app * aqq)) + 1e-300
            a[p[small], q[small]] = 0.0
            a[q[small], p[small]] = 0.0
            act = ~small
            if not act.any():
                continue
            rotated = True
            p, q, apq, app, aqq = p[act], q[act], apq[act], app[act], aqq[act]
            theta = (aqq - app) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if not rotated:
            break
    else:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], _fix_signs(v[:, order]))


def lu_det(a) -> tuple[float, int]:
    """Log-absolute determinant and sign via Gaussian elimination with partial pivoting.

    A zero pivot gives ``(-inf, 0)``.
    """
    u = np.array(a, dtype=float)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidParams("matrix must be square")
    n = u.shape[0]
    sign = 1
    log_abs = 0.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(u[k:, k])))
        if u[piv, k] == 0.0:
            return -math.inf, 0
        if piv != k:
            u[[k, piv]] = u[[piv, k]]
            sign = -sign
        pk = u[k, k]
        if pk < 0:
            sign = -sign
        log_abs += math.log(abs(pk))
        if k + 1 < n:
            f = u[k + 1:, k] / pk
            u[k + 1:, k:] -= np.outer(f, u[k, k:])
    return log_abs, sign


def dense_inverse(a, *, pivot_tol: float = 1e-14) -> np.ndarray:
    """Gauss-Jordan inverse with partial pivoting.

    Raises SingularMatrix when a pivot falls below ``pivot_tol`` times the
    largest input entry.
    """
    w = np.array(a, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InvalidParams("matrix must be square")
    n = w.shape[0]
    scale = float(np.abs(w).max(initial=0.0))
    aug = np.hstack([w, np.eye(n)])
    for k in range(n):
        piv = k + int(np.argmax(np.abs(aug[k:, k])))
        if abs(aug[piv, k]) <= pivot_tol * scale:
            raise SingularMatrix(f"pivot {k} below threshold")
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
        aug[k] /= aug[k, k]
        f = aug[:, k].copy()
        f[k] = 0.0
        aug -= np.outer(f, aug[k])
    return aug[:, n:]


def gauss_legendre(f, lo: float, hi: float, order: int = 64, panels: int = 1) -> float:
    """Composite Gauss-Legendre quadrature of a vectorized integrand on ``[lo, hi]``."""
    x, wts = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        half = 0.5 * (right - left)
        mid = 0.5 * (right + left)
        total += half * float(np.dot(wts, f(mid + half * x)))
    return total


def periodic_trapezoid(f, points: int) -> float:
    """Trapezoid rule over one period ``[-pi, pi)``; spectrally accurate for smooth periodic ``f``."""
    theta = -np.pi + 2.0 * np.pi * np.arange(points) / points
    return float(np.mean(f(theta))) * 2.0 * np.pi
