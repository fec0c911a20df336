from src.core.exceptions import DimensionMismatchError
from src.polynomials import Polynomial
from src.schemas import ProcessSpec


def _check_dimension(spec: ProcessSpec, p: Polynomial) -> None:
    if p.d != spec.d:
        raise DimensionMismatchError(f"Polynomial lives in R^{p.d}, process in R^{spec.d}")


def apply_generator(spec: ProcessSpec, p: Polynomial) -> Polynomial:
    """Diffusion generator 𝒢p = b·∇p + ½ Σ a_ij ∂_i∂_j p, computed symbolically."""
    _check_dimension(spec, p)
    result = Polynomial.zero(spec.d)
    for i in range(spec.d):
        gradient = p.derivative(i)
        result += spec.drift[i] * gradient
        for j in range(spec.d):
            result += (spec.diffusion[i][j] * gradient.derivative(j)).scale(0.5)
    return result


def carre_du_champ(spec: ProcessSpec, p: Polynomial) -> Polynomial:
    """Γp = 𝒢p² - 2p𝒢p."""
    _check_dimension(spec, p)
    return apply_generator(spec, p * p) - (p * apply_generator(spec, p)).scale(2.0)
