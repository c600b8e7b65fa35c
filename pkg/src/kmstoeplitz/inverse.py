"""Closed-form inverses.

``C^{-1}`` is a nearest-neighbour hopping matrix with modified end sites,
``R^{-1}`` and ``L^{-1}`` are identity-minus-shift operators, and the
Toeplitz-Hankel matrix ``M`` is inverted by the same tridiagonal ``T``
plus four corner corrections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import SingularBoundarySystem
from .matrices import KmsParams, ThParams

__all__ = [
    "TridiagonalMatrix",
    "BorderedTridiagonal",
    "BidiagonalShift",
    "c_inverse",
    "r_inverse",
    "l_inverse",
    "t_matrix",
    "boundary_alpha",
    "solve_boundary_x",
    "m_inverse",
]

# relative threshold on the 2x2 corner determinant
_SINGULAR_RTOL = 1e-13


def _ro(values) -> np.ndarray:
    a = np.array(values, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix stored as its diagonal and off-diagonal."""

    order: int
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", _ro(self.diag))
        object.__setattr__(self, "offdiag", _ro(self.offdiag))
        if self.diag.shape != (self.order,) or self.offdiag.shape != (max(self.order - 1, 0),):
            raise ValueError("diag/offdiag lengths do not match order")

    def dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        if self.order > 1:
            out += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return out

    def scaled(self, factor: float) -> "TridiagonalMatrix":
        return TridiagonalMatrix(self.order, self.diag * factor, self.offdiag * factor)

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = self.diag * x
        if self.order > 1:
            y[:-1] += self.offdiag * x[1:]
            y[1:] += self.offdiag * x[:-1]
        return y


@dataclass(frozen=True)
class BorderedTridiagonal:
    """Tridiagonal base plus additive corrections confined to rows 0 and N."""

    base: TridiagonalMatrix
    first_row_correction: np.ndarray
    last_row_correction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "first_row_correction", _ro(self.first_row_correction))
        object.__setattr__(self, "last_row_correction", _ro(self.last_row_correction))

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def x0(self) -> float:
        return float(self.first_row_correction[0])

    @property
    def xn(self) -> float:
        return float(self.first_row_correction[-1])

    def dense(self) -> np.ndarray:
        out = self.base.dense()
        out[0] += self.first_row_correction
        if self.order > 1:
            out[-1] += self.last_row_correction
        return out


@dataclass(frozen=True)
class BidiagonalShift:
    """``I + shift_coefficient * S`` with ``S`` the one-step right (sub-diagonal) or left shift."""

    order: int
    shift_coefficient: float
    direction: Literal["right", "left"]

    def dense(self) -> np.ndarray:
        k = -1 if self.direction == "right" else 1
        return np.eye(self.order) + self.shift_coefficient * np.eye(self.order, k=k)


def _inv_2sinh(kappa: float) -> float:
    # 1 / (2 sinh k) without overflow for large k
    return math.exp(-kappa) / -math.expm1(-2.0 * kappa)


def c_inverse(p: KmsParams) -> TridiagonalMatrix:
    """Tridiagonal inverse of the KMS matrix.

    Interior diagonal ``coth k``, end sites ``e^k / (2 sinh k)``, hopping
    ``-1 / (2 sinh k)``.
    """
    if p.n == 0:
        return TridiagonalMatrix(1, [1.0], [])
    k = p.kappa
    one_minus = -math.expm1(-2.0 * k)
    edge = 1.0 / one_minus
    coth = (1.0 + math.exp(-2.0 * k)) / one_minus
    diag = np.full(p.order, coth)
    diag[0] = diag[-1] = edge
    return TridiagonalMatrix(p.order, diag, np.full(p.n, -_inv_2sinh(k)))


def r_inverse(p: KmsParams) -> BidiagonalShift:
    return BidiagonalShift(p.order, -math.exp(-p.kappa), "right")


def l_inverse(p: KmsParams) -> BidiagonalShift:
    return BidiagonalShift(p.order, -math.exp(-p.kappa), "left")


def t_matrix(t: ThParams) -> TridiagonalMatrix:
    """``c_inverse(kappa, N) / (a - b)``; inverts ``M`` away from rows 0 and N."""
    return c_inverse(t.kms).scaled(1.0 / (t.a - t.b))


def boundary_alpha(t: ThParams) -> np.ndarray:
    """Row 0 of ``T M - I``: alpha_i = (b e^{k i} + c e^{-k i}) / (a - b). Row N is its reversal."""
    i = np.arange(t.order, dtype=float)
    return _ro((t.b * np.exp(t.kappa * i) + t.c * np.exp(-t.kappa * i)) / (t.a - t.b))


def solve_boundary_x(t: ThParams) -> tuple[float, float]:
    """Corner corrections ``(x0, xN)`` of ``M^{-1} - T``.

    Solves ``[[a+c, B], [B, a+c]] (x0, xN) = -(c, b e^{Nk}) / (a - b)``
    with ``B = b e^{Nk} + c e^{-Nk}``, which is the condition
    ``M (x0, 0, ..., 0, xN) = -alpha`` restricted to its two free
    coefficients.
    """
    if t.b == 0.0 and t.c == 0.0:
        return 0.0, 0.0
    n, k = t.n, t.kappa
    grow = t.b * math.exp(n * k)
    big_b = grow + t.c * math.exp(-n * k)
    diag = t.a + t.c
    det = (diag - big_b) * (diag + big_b)
    if abs(det) <= _SINGULAR_RTOL * (abs(diag) + abs(big_b)) ** 2:
        raise SingularBoundarySystem(
            f"corner system determinant {det:.3g} is numerically zero"
        )
    r0 = -t.c / (t.a - t.b)
    r1 = -grow / (t.a - t.b)
    return (diag * r0 - big_b * r1) / det, (diag * r1 - big_b * r0) / det


def m_inverse(t: ThParams) -> BorderedTridiagonal:
    """Inverse of ``M`` as ``T`` plus corner entries ``x0`` (diagonal) and ``xN`` (anti-diagonal)."""
    if t.n == 0:
        entry = t.a + t.b + 2.0 * t.c
        if entry == 0.0:
            raise SingularBoundarySystem("1x1 Toeplitz-Hankel matrix is zero")
        return BorderedTridiagonal(TridiagonalMatrix(1, [1.0 / entry], []), [0.0], [0.0])
    x0, xn = solve_boundary_x(t)
    first = np.zeros(t.order)
    first[0], first[-1] = x0, xn
    return BorderedTridiagonal(t_matrix(t), first, first[::-1])
