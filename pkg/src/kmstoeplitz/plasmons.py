"""Plasmon branches of a stack of ``N + 1`` coupled 2-d electron layers.

Gaussian (CGS) units throughout: lengths in cm, mass in g, charge in esu,
frequencies in rad/s.  Lab inputs (angstrom, electron masses) are
converted once, in :func:`material_from_lab_units`.

Within RPA with ``D0 ~ n k^2 / (m* omega^2)`` the layer charges solve
``delta_rho = (2 pi n e^2 k / (eps m* omega^2)) C(k d) delta_rho``, so each
eigenvalue ``Lambda_nu`` of the KMS matrix at ``kappa = k d`` gives a branch
``omega_nu^2 = (2 pi n e^2 / (eps m*)) k Lambda_nu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .determinants import det_c_exact, det_m_exact
from .errors import InvalidParams, MissingContrastParams
from .matrices import KmsParams, ThParams
from .spectrum import c_spectrum, m_spectrum

__all__ = [
    "ELEMENTARY_CHARGE_ESU",
    "ELECTRON_MASS_G",
    "ANGSTROM_CM",
    "MaterialParams",
    "PlasmonBranch",
    "material_from_lab_units",
    "plasma_prefactor",
    "plasmon_frequency",
    "omega_2d",
    "omega_3d",
    "default_k_grid",
    "plasmon_branches",
    "contrast_branches",
    "geometric_mean_frequency",
    "geometric_mean_sumrule",
    "contrast_mapping",
    "gm_correction_factor",
    "gm_correction_factor_leading",
]

ELEMENTARY_CHARGE_ESU = 4.80320425e-10
ELECTRON_MASS_G = 9.1093837015e-28
ANGSTROM_CM = 1e-8


@dataclass(frozen=True)
class MaterialParams:
    """Layer material in CGS.  ``eps_0`` and ``slab_length_l`` are only needed for dielectric contrast."""

    d: float
    n2d: float
    m_star: float
    eps_m: float
    eps_0: float | None = None
    slab_length_l: float | None = None

    def __post_init__(self):
        if not (self.d > 0 and self.n2d > 0 and self.m_star > 0):
            raise InvalidParams("d, n2d and m_star must be > 0")
        if not self.eps_m >= 1:
            raise InvalidParams("eps_m must be >= 1")
        if self.eps_0 is not None and not self.eps_0 >= 1:
            raise InvalidParams("eps_0 must be >= 1")
        if self.slab_length_l is not None and not self.slab_length_l > 0:
            raise InvalidParams("slab length must be > 0")

    @property
    def has_contrast(self) -> bool:
        return self.eps_0 is not None and self.slab_length_l is not None


def material_from_lab_units(
    d_angstrom: float,
    density_cm2: float,
    mass_me: float,
    eps: float,
    eps0: float | None = None,
    slab_l_angstrom: float | None = None,
) -> MaterialParams:
    """Build :class:`MaterialParams` from angstrom / electron-mass inputs."""
    slab = None if slab_l_angstrom is None else slab_l_angstrom * ANGSTROM_CM
    return MaterialParams(
        d=d_angstrom * ANGSTROM_CM,
        n2d=density_cm2,
        m_star=mass_me * ELECTRON_MASS_G,
        eps_m=eps,
        eps_0=eps0,
        slab_length_l=slab,
    )


@dataclass(frozen=True)
class PlasmonBranch:
    nu: int
    k_grid: np.ndarray
    omega: np.ndarray


def plasma_prefactor(m: MaterialParams) -> float:
    """``sqrt(2 pi n e^2 / (eps m*))`` in rad s^-1 cm^{1/2}."""
    return math.sqrt(2.0 * math.pi * m.n2d * ELEMENTARY_CHARGE_ESU**2 / (m.eps_m * m.m_star))


def plasmon_frequency(k_par, lam, m: MaterialParams):
    """``omega = sqrt(2 pi n e^2 / (eps m*)) sqrt(k Lambda)``."""
    k_arr = np.asarray(k_par, dtype=float)
    if np.any(k_arr <= 0):
        raise InvalidParams("k_par must be > 0")
    out = plasma_prefactor(m) * np.sqrt(k_arr * np.asarray(lam, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def omega_2d(k_par, m: MaterialParams):
    """Isolated-layer plasmon (``Lambda = 1``)."""
    return plasmon_frequency(k_par, 1.0, m)


def omega_3d(m: MaterialParams) -> float:
    """Bulk plasmon of the infinite superlattice, ``sqrt(4 pi (n/d) e^2 / (eps m*))``."""
    return math.sqrt(4.0 * math.pi * (m.n2d / m.d) * ELEMENTARY_CHARGE_ESU**2 / (m.eps_m * m.m_star))


def default_k_grid(m: MaterialParams, kd_min: float = 1e-2, kd_max: float = 3.0, points: int = 60) -> np.ndarray:
    return np.geomspace(kd_min, kd_max, points) / m.d


def plasmon_branches(m: MaterialParams, n_layers_minus_1: int, k_grid=None) -> list[PlasmonBranch]:
    """Branch frequencies on ``k_grid`` (cm^-1), one :class:`PlasmonBranch` per ``nu``."""
    k_grid = default_k_grid(m) if k_grid is None else np.asarray(k_grid, dtype=float)
    lams = np.array([
        [mode.eigenvalue for mode in c_spectrum(KmsParams(k * m.d, n_layers_minus_1))]
        for k in k_grid
    ])
    omegas = plasmon_frequency(k_grid[:, None], lams, m)
    return [PlasmonBranch(nu, k_grid, omegas[:, nu]) for nu in range(n_layers_minus_1 + 1)]


def contrast_mapping(m: MaterialParams, k_par: float, n_layers_minus_1: int) -> tuple[float, float]:
    """Image-charge ratios ``(c/a, b/a)`` for an eps_0 / eps / eps_0 sandwich.

    With ``r = (eps - eps_0) / (eps + eps_0)`` and ``kappa = k d``:
    ``c/a = r exp[-kappa (L - N d) / d]`` and ``b/a = r^2 exp[-2 kappa L / d]``.
    """
    if not m.has_contrast:
        raise MissingContrastParams("contrast mapping needs eps_0 and slab_length_l")
    n = n_layers_minus_1
    if m.slab_length_l < n * m.d * (1.0 - 1e-12):
        raise InvalidParams("slab length must be >= N d")
    kappa = k_par * m.d
    r = (m.eps_m - m.eps_0) / (m.eps_m + m.eps_0)
    c_over_a = r * math.exp(-kappa * (m.slab_length_l - n * m.d) / m.d)
    b_over_a = r * r * math.exp(-2.0 * kappa * m.slab_length_l / m.d)
    return c_over_a, b_over_a


def _th_params(m: MaterialParams, k_par: float, n: int) -> ThParams:
    c_over_a, b_over_a = contrast_mapping(m, k_par, n)
    return ThParams(1.0, b_over_a, c_over_a, k_par * m.d, n)


def contrast_branches(m: MaterialParams, n_layers_minus_1: int, k_grid=None) -> list[PlasmonBranch]:
    """Branches with dielectric contrast, from the spectrum of ``M`` (``a = 1``)."""
    k_grid = default_k_grid(m) if k_grid is None else np.asarray(k_grid, dtype=float)
    lams = np.array([
        [mode.eigenvalue for mode in m_spectrum(_th_params(m, k, n_layers_minus_1))]
        for k in k_grid
    ])
    omegas = plasmon_frequency(k_grid[:, None], lams, m)
    return [PlasmonBranch(nu, k_grid, omegas[:, nu]) for nu in range(n_layers_minus_1 + 1)]


def geometric_mean_frequency(omegas) -> float:
    w = np.asarray(omegas, dtype=float)
    return math.exp(math.fsum(np.log(w)) / w.size)


def geometric_mean_sumrule(m: MaterialParams, n_layers_minus_1: int, k_par: float) -> float:
    """``sqrt(2 pi n e^2/(eps m*)) sqrt(k) (1 - e^{-2 k d})^{N / (2 (N+1))}``.

    Equal to the geometric mean of the ``N + 1`` branch frequencies since
    their squares multiply to ``det C`` times a constant.
    """
    n = n_layers_minus_1
    kappa = k_par * m.d
    log_det = det_c_exact(KmsParams(kappa, n))
    return plasma_prefactor(m) * math.sqrt(k_par) * math.exp(log_det / (2.0 * (n + 1)))


def gm_correction_factor(c_over_a: float, b_over_a: float, n_layers_minus_1: int, kappa: float) -> float:
    """Factor turning :func:`geometric_mean_sumrule` into the geometric mean with contrast.

    ``(det M / det C)^{1 / (2 (N+1))}`` with ``a = 1``:

        [(1 - b)^{N-1} ((1 + c)^2 - (b e^{N k} + c e^{-N k})^2)]^{1/(2(N+1))}
    """
    n = n_layers_minus_1
    log_m, sign = det_m_exact(ThParams(1.0, b_over_a, c_over_a, kappa, n))
    if sign <= 0:
        raise InvalidParams("contrast matrix is not positive definite; no real geometric mean")
    return math.exp((log_m - det_c_exact(KmsParams(kappa, n))) / (2.0 * (n + 1)))


def gm_correction_factor_leading(c_over_a: float, b_over_a: float, n_layers_minus_1: int) -> float:
    """``[(1 - b/a)^{N-1} (1 + c/a)^2]^{1/(N+1)} (1 - b/a)^{-1/2}``.

    Closed form without the corner coupling or kappa dependence.  It is
    not the exact ratio of geometric means; see :func:`gm_correction_factor`.
    """
    n = n_layers_minus_1
    one_b = 1.0 - b_over_a
    return (one_b ** (n - 1) * (1.0 + c_over_a) ** 2) ** (1.0 / (n + 1)) * one_b**-0.5
