"""Exception types raised across the package."""


class InvalidParams(ValueError):
    """Parameters violate a construction precondition (e.g. kappa <= 0, a == b)."""


class DomainError(ValueError):
    """Argument outside the open interval on which a function is defined."""


class SingularBoundarySystem(ArithmeticError):
    """The 2x2 corner system for the Toeplitz-Hankel inverse is (near) singular."""


class NoRootError(RuntimeError):
    """A bracketing root search failed to find a sign change."""


class NoConvergence(RuntimeError):
    """An iterative oracle exhausted its iteration budget."""


class SingularMatrix(ArithmeticError):
    """Elimination hit a pivot below the singularity threshold."""


class MissingContrastParams(ValueError):
    """Dielectric-contrast mapping requested without eps_0 and slab length."""
