"""Domain exceptions shared across the package."""


class PseudoFermionError(Exception):
    """Base class for every error raised by pfkit."""


class NotHermitianError(PseudoFermionError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NotPositiveError(PseudoFermionError):
    """A matrix required to be positive definite is not."""


class SingularMatrixError(PseudoFermionError):
    """Inversion of a numerically singular matrix was requested."""


class FullRankError(PseudoFermionError):
    """A null vector was requested from a matrix of full numerical rank."""


class ZeroMatrixError(PseudoFermionError):
    """A null vector was requested from the zero matrix (every vector qualifies)."""


class NotPseudoFermionError(PseudoFermionError):
    """Operator pair violates the anticommutation rules {a,b}=1, a^2=b^2=0."""

    def __init__(self, residual_name: str, residual: float, tol: float):
        self.residual_name = residual_name
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"pair is not pseudo-fermionic: {residual_name} = {residual:.3e} "
            f"exceeds tol = {tol:.1e}"
        )


class VacuumNotFoundError(PseudoFermionError):
    """No annihilated vector exists: the operator has full numerical rank."""


class DegeneratePairingError(PseudoFermionError):
    """The two vacua are numerically orthogonal; biorthonormalization impossible."""


class NotFermionError(PseudoFermionError):
    """Operator fails the canonical anticommutation relations {c,c^†}=1, c^2=0."""


class NotIntertwinedError(PseudoFermionError):
    """Operator does not satisfy the required intertwining relation."""


class ComplexTraceError(PseudoFermionError):
    """Hamiltonian has a non-real trace; no Hermitian metric can intertwine it."""


class IncompatiblePayloadsError(PseudoFermionError):
    """Grassmann elements with non-composable payload kinds were multiplied."""


class ZeroParameterError(PseudoFermionError):
    """A model parameter that must be nonzero is zero."""


class ParameterOutOfRangeError(PseudoFermionError):
    """A model parameter lies outside its admissible range."""


class ExceptionalPointError(PseudoFermionError):
    """Model parameters sit at (or past) the degeneracy where closed forms blow up."""


class ConsistencyCheckError(PseudoFermionError):
    """An internal algebraic identity failed; indicates a bug, not bad input."""
