from typing import Any, Self

from collections import defaultdict
from collections.abc import Mapping

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from src.core.exceptions import DimensionMismatchError

type MultiIndex = tuple[int, ...]


def graded_key(alpha: MultiIndex) -> tuple[int, MultiIndex]:
    """Sort key of the graded lexicographic order (constant monomial first)."""
    return sum(alpha), alpha


class Term(BaseModel):
    """Single monomial ``c * x^alpha``."""

    alpha: MultiIndex = Field(..., description="Exponent vector")
    c: float = Field(..., description="Coefficient")

    model_config = ConfigDict(frozen=True)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, alpha: MultiIndex) -> MultiIndex:
        if any(a < 0 for a in alpha):
            raise ValueError(f"Exponents must be nonnegative, got {alpha}")
        return alpha


class Polynomial(BaseModel):
    """Sparse real polynomial on R^d, kept in canonical graded-lex order without zero terms."""

    d: int = Field(..., ge=1, description="Dimension of the ambient space")
    terms: tuple[Term, ...] = Field(default=(), description="Nonzero terms in graded-lex order")

    model_config = ConfigDict(frozen=True)

    @field_validator("terms")
    @classmethod
    def canonicalize(cls, terms: tuple[Term, ...], info: ValidationInfo) -> tuple[Term, ...]:
        d = info.data.get("d")
        merged: dict[MultiIndex, float] = defaultdict(float)
        for term in terms:
            if d is not None and len(term.alpha) != d:
                raise ValueError(f"Exponent {term.alpha} does not have length {d}")
            merged[term.alpha] += term.c
        return tuple(Term(alpha=a, c=c) for a, c in sorted(merged.items(), key=lambda kv: graded_key(kv[0])) if c != 0.0)

    @classmethod
    def from_dict(cls, d: int, coefficients: Mapping[MultiIndex, float]) -> Self:
        return cls(d=d, terms=tuple(Term(alpha=tuple(a), c=float(c)) for a, c in coefficients.items()))

    @classmethod
    def constant(cls, d: int, c: float = 1.0) -> Self:
        return cls.from_dict(d, {(0,) * d: c})

    @classmethod
    def variable(cls, d: int, i: int, c: float = 1.0) -> Self:
        """The coordinate function ``c * x_i``."""
        alpha = [0] * d
        alpha[i] = 1
        return cls.from_dict(d, {tuple(alpha): c})

    @classmethod
    def zero(cls, d: int) -> Self:
        return cls(d=d)

    @property
    def coefficients(self) -> dict[MultiIndex, float]:
        return {term.alpha: term.c for term in self.terms}

    @property
    def degree(self) -> int:
        """Largest total degree; the zero polynomial has degree 0."""
        return max((sum(term.alpha) for term in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_dimension(self, other: "Polynomial") -> None:
        if other.d != self.d:
            raise DimensionMismatchError(f"Polynomials live in R^{self.d} and R^{other.d}")

    def __add__(self, other: "Polynomial | float") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.d, float(other))
        self._check_dimension(other)
        return Polynomial(d=self.d, terms=self.terms + other.terms)

    def __radd__(self, other: float) -> "Polynomial":
        return self + other

    def __neg__(self) -> "Polynomial":
        return self.scale(-1.0)

    def __sub__(self, other: "Polynomial | float") -> "Polynomial":
        return self + (-other)

    def __rsub__(self, other: float) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: "Polynomial | float") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(float(other))
        self._check_dimension(other)
        product: dict[MultiIndex, float] = defaultdict(float)
        for left in self.terms:
            for right in other.terms:
                alpha = tuple(a + b for a, b in zip(left.alpha, right.alpha, strict=True))
                product[alpha] += left.c * right.c
        return Polynomial.from_dict(self.d, product)

    def __rmul__(self, other: float) -> "Polynomial":
        return self.scale(float(other))

    def scale(self, factor: float) -> "Polynomial":
        return Polynomial(d=self.d, terms=tuple(Term(alpha=t.alpha, c=factor * t.c) for t in self.terms))

    def derivative(self, i: int) -> "Polynomial":
        """Partial derivative with respect to ``x_i``."""
        result: dict[MultiIndex, float] = {}
        for term in self.terms:
            power = term.alpha[i]
            if power == 0:
                continue
            alpha = list(term.alpha)
            alpha[i] -= 1
            result[tuple(alpha)] = term.c * power
        return Polynomial.from_dict(self.d, result)

    def evaluate(self, points: Any) -> np.ndarray:
        """Evaluate at an array of points of shape ``(..., d)``."""
        x = np.asarray(points, dtype=float)
        if x.shape[-1] != self.d:
            raise DimensionMismatchError(f"Points have dimension {x.shape[-1]}, polynomial lives in R^{self.d}")
        if not self.terms:
            return np.zeros(x.shape[:-1])
        alphas = np.array([term.alpha for term in self.terms], dtype=float)
        coefficients = np.array([term.c for term in self.terms])
        monomials = np.prod(x[..., np.newaxis, :] ** alphas, axis=-1)
        return monomials @ coefficients

    def __call__(self, x: Any) -> float:
        return float(self.evaluate(np.asarray(x, dtype=float).reshape(self.d)))
