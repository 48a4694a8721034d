"""Exception types shared across the package."""


class FFCodesError(Exception):
    """Base class for all package errors."""


class DimensionError(FFCodesError):
    """Operands live on different qubit counts or lattice dimensions."""


class EncodingError(FFCodesError):
    """Invalid Pauli label or 3-tuple group (e.g. 111)."""


class ExponentOverflowError(FFCodesError):
    """A Laurent monomial exceeded the configured exponent bound."""


class TruncationError(FFCodesError):
    """Torus side length too small for the monomials present."""


class ScaleError(FFCodesError):
    """Input exceeds a documented desk-scale size limit."""


class OrientationError(FFCodesError):
    """Missing edge sign, non-bipartite input, or inconsistent orientation."""


class InvariantError(FFCodesError):
    """A structural invariant (symmetry, skew-adjointness, Hermiticity) failed."""


class AmbiguousAfterCoarsening(FFCodesError):
    """Krausz decomposition stayed non-unique past the coarsening cap."""
