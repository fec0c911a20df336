from typing import Any, Self

from functools import cached_property
from itertools import product
from math import comb

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.exceptions import BasisError, DegreeOverflowError, DimensionMismatchError
from src.polynomials.polynomial import MultiIndex, Polynomial


class MonomialBasis(BaseModel):
    """Monomials of degree <= n in R^d, graded lexicographic order, constant first."""

    d: int = Field(..., ge=1, description="Dimension")
    n: int = Field(..., ge=0, description="Maximal total degree")
    indices: tuple[MultiIndex, ...] = Field(..., description="Exponent vectors in basis order")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_size(self) -> Self:
        if len(self.indices) != comb(self.d + self.n, self.n):
            raise ValueError(f"Basis of Pol_{self.n}(R^{self.d}) must have {comb(self.d + self.n, self.n)} elements")
        return self

    @property
    def size(self) -> int:
        return len(self.indices)

    @cached_property
    def exponents(self) -> np.ndarray:
        return np.array(self.indices, dtype=float).reshape(self.size, self.d)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([sum(alpha) for alpha in self.indices], dtype=int)

    @cached_property
    def positions(self) -> dict[MultiIndex, int]:
        return {alpha: j for j, alpha in enumerate(self.indices)}

    def polynomial(self, j: int) -> Polynomial:
        """The j-th basis monomial h_j."""
        return Polynomial.from_dict(self.d, {self.indices[j]: 1.0})

    def leading(self, k: int) -> int:
        """Number of basis elements of degree <= k (N_k)."""
        return comb(self.d + k, k)


def basis_indices(d: int, n: int) -> MonomialBasis:
    if d < 1:
        raise BasisError(f"Dimension must be at least 1, got {d}")
    if n < 0:
        raise BasisError(f"Degree must be nonnegative, got {n}")
    indices = [alpha for k in range(n + 1) for alpha in product(range(k + 1), repeat=d) if sum(alpha) == k]
    return MonomialBasis(d=d, n=n, indices=tuple(indices))


def eval_basis(x: Any, basis: MonomialBasis) -> np.ndarray:
    """H_n(x): basis monomials evaluated at one point, or at each row of a point array."""
    points = np.asarray(x, dtype=float)
    if points.shape[-1] != basis.d:
        raise DimensionMismatchError(f"Point has dimension {points.shape[-1]}, basis lives in R^{basis.d}")
    return np.prod(points[..., np.newaxis, :] ** basis.exponents, axis=-1)


def to_coordinates(p: Polynomial, basis: MonomialBasis) -> np.ndarray:
    if p.d != basis.d:
        raise DimensionMismatchError(f"Polynomial lives in R^{p.d}, basis in R^{basis.d}")
    if p.degree > basis.n:
        raise DegreeOverflowError(f"Polynomial of degree {p.degree} is not in Pol_{basis.n}")
    coordinates = np.zeros(basis.size)
    for term in p.terms:
        coordinates[basis.positions[term.alpha]] = term.c
    return coordinates


def from_coordinates(coordinates: Any, basis: MonomialBasis) -> Polynomial:
    values = np.asarray(coordinates, dtype=float)
    if values.shape != (basis.size,):
        raise DimensionMismatchError(f"Expected {basis.size} coordinates, got shape {values.shape}")
    return Polynomial.from_dict(basis.d, dict(zip(basis.indices, values.tolist(), strict=True)))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q
