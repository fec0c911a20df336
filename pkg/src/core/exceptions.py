class BaseError(Exception):
    """Base exception class."""


class ConfigError(BaseError):
    """Error raised when a run configuration is malformed."""


class PolynomialError(BaseError):
    """Base error for polynomial operations."""


class DimensionMismatchError(PolynomialError):
    """Operands live in spaces of different dimension."""


class DegreeOverflowError(PolynomialError):
    """Polynomial degree exceeds the degree of the basis."""


class BasisError(PolynomialError):
    """Invalid monomial basis parameters."""


class GeneratorError(BaseError):
    """Base error for generator operations."""


class PolynomialPropertyError(GeneratorError):
    """Generator does not map Pol_k into Pol_k."""


class LinAlgError(BaseError):
    """Base error for dense numerical kernels."""


class NonFiniteInputError(LinAlgError):
    """Matrix contains NaN or infinite entries."""


class SpectralDecompositionError(LinAlgError):
    """Real Jordan decomposition could not be certified."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(
            f"{message} (reconstruction residual {residual:.3e}); "
            "supply the block structure and V explicitly through a Jordan override"
        )
        self.residual = residual


class MomentError(BaseError):
    """Base error for moment computations."""


class NegativeTimeError(MomentError):
    """Time argument is negative."""


class AssumptionError(BaseError):
    """Spectral assumption on the generator matrix does not hold."""

    def __init__(self, message: str, eigenvalues: list[complex]) -> None:
        super().__init__(message)
        self.eigenvalues = eigenvalues


class CubatureError(BaseError):
    """Base error for cubature constructions."""


class SingularMatrixError(CubatureError):
    """Matrix is singular or has the wrong shape."""


class LiftConstructionError(CubatureError):
    """Lifted rule construction failed its invariants."""


class SignedMeasureError(CubatureError):
    """Signed measure factorization is not possible."""


class StaticCubatureError(CubatureError):
    """Moment vector cannot be represented by a positive cubature."""


class DeltaSearchError(CubatureError):
    """No time step with a strictly positive transition matrix was found."""


class RuleVerificationError(CubatureError):
    """Rule fails its verification against the generator."""


class SimulationError(BaseError):
    """Base error for stochastic simulation."""


class InvalidRateMatrixError(SimulationError):
    """Matrix is not a transition rate matrix."""


class InvalidStochasticMatrixError(SimulationError):
    """Matrix is not row-stochastic."""


class EmptyEnsembleError(SimulationError):
    """Ensemble holds no usable paths."""
