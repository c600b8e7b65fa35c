"""Exact spectral toolkit for the KMS Toeplitz matrix exp(-kappa|i-j|), its
Toeplitz-Hankel extension, and the plasmon branches of layered 2-d electron gases."""

from .errors import (
    DomainError,
    InvalidParams,
    MissingContrastParams,
    NoConvergence,
    NoRootError,
    SingularBoundarySystem,
    SingularMatrix,
)
from .matrices import (
    KmsParams,
    ThParams,
    build_c,
    build_hankel_decaying,
    build_hankel_reflected,
    build_l,
    build_m,
    build_r,
)
from .inverse import (
    BidiagonalShift,
    BorderedTridiagonal,
    TridiagonalMatrix,
    boundary_alpha,
    c_inverse,
    l_inverse,
    m_inverse,
    r_inverse,
    solve_boundary_x,
    t_matrix,
)
from .spectrum import (
    MSpectralMode,
    SpectralMode,
    c_spectrum,
    decaying_hankel_spectrum,
    lambda_of_q,
    m_spectrum,
    phase_shift,
    reflected_hankel_spectrum,
    solve_quantization,
)
from .determinants import (
    det_c_exact,
    det_c_recurrence,
    det_m_exact,
    dos_weight,
    eigenvalue_bounds,
    gn_e_constancy,
    szego_estimate,
)

__version__ = "0.1.0"
