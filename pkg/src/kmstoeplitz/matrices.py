"""Dense constructions of the KMS Toeplitz matrix and its relatives.

All matrices are indexed ``0..N`` and therefore have order ``N + 1``.
Entries are evaluated directly from the exponential formula so that these
arrays can serve as ground truth for the structured routines.  Returned
arrays are flagged read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams

__all__ = [
    "KmsParams",
    "ThParams",
    "build_c",
    "build_r",
    "build_l",
    "build_hankel_reflected",
    "build_hankel_decaying",
    "build_m",
]


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise InvalidParams("kappa must be > 0 and finite")
    return kappa


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidParams("n must be a non-negative integer")
    return int(n)


@dataclass(frozen=True)
class KmsParams:
    """Decay rate ``kappa`` and maximum index ``n`` (matrix order ``n + 1``)."""

    kappa: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kappa", _check_kappa(self.kappa))
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def order(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class ThParams:
    """Coefficients of the Toeplitz-Hankel matrix ``M``; requires ``a != b``."""

    a: float
    b: float
    c: float
    kappa: float
    n: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.a == self.b:
            raise InvalidParams("a must differ from b")
        object.__setattr__(self, "kappa", _check_kappa(self.kappa))
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def order(self) -> int:
        return self.n + 1

    @property
    def kms(self) -> KmsParams:
        return KmsParams(self.kappa, self.n)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _index_grid(n: int):
    idx = np.arange(n + 1, dtype=float)
    return idx[:, None], idx[None, :]


def build_c(p: KmsParams) -> np.ndarray:
    """C[i, j] = exp(-kappa |i - j|)."""
    i, j = _index_grid(p.n)
    return _frozen(np.exp(-p.kappa * np.abs(i - j)))


def build_r(p: KmsParams) -> np.ndarray:
    """Lower-triangular right-moving part: R[l, j] = exp(-kappa (l - j)) for l >= j."""
    i, j = _index_grid(p.n)
    diff = i - j
    r = np.where(diff >= 0, np.exp(-p.kappa * np.maximum(diff, 0.0)), 0.0)
    return _frozen(r)


def build_l(p: KmsParams) -> np.ndarray:
    """Upper-triangular left-moving part; ``C + I == R + L``."""
    return _frozen(np.ascontiguousarray(build_r(p).T))


def build_hankel_reflected(p: KmsParams) -> np.ndarray:
    """H~[i, j] = exp(-kappa |i + j - N|), i.e. ``C`` with its rows reversed."""
    i, j = _index_grid(p.n)
    return _frozen(np.exp(-p.kappa * np.abs(i + j - p.n)))


def build_hankel_decaying(p: KmsParams) -> np.ndarray:
    """Rank-one Hankel matrix H[i, j] = exp(-kappa (i + j))."""
    i, j = _index_grid(p.n)
    return _frozen(np.exp(-p.kappa * (i + j)))


def build_m(t: ThParams) -> np.ndarray:
    """Toeplitz-Hankel combination

        M = a exp(-k|i-j|) + b exp(k|i-j|) + c [exp(-k(i+j)) + exp(-k(2N-i-j))].
    """
    i, j = _index_grid(t.n)
    k = t.kappa
    d = np.abs(i - j)
    m = t.a * np.exp(-k * d) + t.b * np.exp(k * d)
    if t.c != 0.0:
        m = m + t.c * (np.exp(-k * (i + j)) + np.exp(-k * (2 * t.n - i - j)))
    return _frozen(m)
