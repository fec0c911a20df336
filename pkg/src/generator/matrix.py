import numpy as np

from src.core.exceptions import BasisError, PolynomialPropertyError
from src.core.logger import get_logger
from src.generator.operator import apply_generator
from src.polynomials import basis_indices, to_coordinates
from src.schemas import GeneratorMatrix, ProcessSpec

logger = get_logger(__name__)


def first_violation(spec: ProcessSpec, n: int) -> int | None:
    """Smallest degree k <= n of a monomial h with deg 𝒢h > k, if any."""
    basis = basis_indices(spec.d, n)
    for j in range(basis.size):
        h = basis.polynomial(j)
        if apply_generator(spec, h).degree > h.degree:
            return h.degree
    return None


def check_polynomial_property(spec: ProcessSpec, n: int) -> bool:
    return first_violation(spec, n) is None


def build_G(spec: ProcessSpec, n: int) -> GeneratorMatrix:  # noqa: N802
    """Matrix G_n of the generator on Pol_n; column k holds the coordinates of 𝒢h_k.

    Args:
        spec: Process specification
        n: Degree of the polynomial space, at least 1

    Returns:
        GeneratorMatrix with 𝒢H_n(x) = G^T H_n(x)

    Raises:
        BasisError: If n < 1
        PolynomialPropertyError: If 𝒢 raises the degree of some monomial of degree <= n
    """
    if n < 1:
        raise BasisError(f"Generator matrices need n >= 1, got {n}")
    degree = first_violation(spec, n)
    if degree is not None:
        raise PolynomialPropertyError(f"Process is not polynomial-preserving at degree {degree}")

    basis = basis_indices(spec.d, n)
    G = np.zeros((basis.size, basis.size))  # noqa: N806
    for k in range(basis.size):
        G[:, k] = to_coordinates(apply_generator(spec, basis.polynomial(k)), basis)
    logger.debug("Built G_%d of size %d", n, basis.size)
    return GeneratorMatrix(n=n, basis=basis, G=G)
