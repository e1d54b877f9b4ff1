"""Exception types shared across the package."""


class LieKernelError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(LieKernelError):
    pass


class JacobiError(LieKernelError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


class ParseError(LieKernelError):
    """Syntax error in the compact tuple notation; carries a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BindingError(LieKernelError):
    """Unbound or malformed parameter binding."""


class AdmissibilityError(LieKernelError):
    """Family parameters violate a table side constraint."""


class SubspaceError(LieKernelError):
    """Input subspace fails a structural precondition (not an ideal, ...)."""


class HodgeError(LieKernelError):
    """Hodge star not exactly computable (bad gram or irrational volume)."""


class G2Error(LieKernelError):
    """A three-form is not of the expected pointwise type."""


class MomentMapError(LieKernelError):
    """Multi-moment inversion unavailable (b2 != 0, non-closed input, ...)."""


class FlowError(LieKernelError):
    """Flow evaluated outside its maximal interval of definition."""
