import numpy as np
import pytest

from polyfactory.factories.pydantic_factory import ModelFactory
from pydantic import ValidationError

from src.core.exceptions import BasisError, DegreeOverflowError, DimensionMismatchError
from src.polynomials import (
    MonomialBasis,
    Polynomial,
    Term,
    basis_indices,
    eval_basis,
    from_coordinates,
    multiply,
    to_coordinates,
)


class BaseFactory:
    __random_seed__ = 1


class TermFactory(BaseFactory, ModelFactory[Term]): ...


def random_polynomial(rng: np.random.Generator, d: int, degree: int, terms: int = 5) -> Polynomial:
    basis = basis_indices(d, degree)
    picks = rng.choice(basis.size, size=min(terms, basis.size), replace=False)
    return Polynomial.from_dict(d, {basis.indices[j]: float(rng.normal()) for j in picks})


class TestMonomialBasis:
    def test_univariate_order(self):
        basis = basis_indices(1, 2)
        assert basis.indices == ((0,), (1,), (2,)), "Univariate basis is not 1, x, x²"
        assert basis.size == 3, "Basis size does not match"

    def test_bivariate_graded_lex_order(self):
        basis = basis_indices(2, 2)
        assert basis.indices == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)), "Graded-lex order does not match"

    def test_size_is_binomial(self):
        assert basis_indices(3, 4).size == 35, "Basis of Pol_4(R^3) must have 35 elements"

    def test_leading_counts_lower_degrees(self):
        assert basis_indices(2, 3).leading(1) == 3, "N_1 in R^2 must be 3"

    def test_invalid_arguments(self):
        with pytest.raises(BasisError):
            basis_indices(0, 2)
        with pytest.raises(BasisError):
            basis_indices(1, -1)

    def test_wrong_size_is_rejected(self):
        with pytest.raises(ValidationError):
            MonomialBasis(d=1, n=2, indices=((0,), (1,)))


class TestEvalBasis:
    def test_univariate(self):
        np.testing.assert_allclose(eval_basis([2.0], basis_indices(1, 2)), [1.0, 2.0, 4.0], err_msg="H_2(2) mismatch")

    def test_origin(self):
        values = eval_basis([0.0, 0.0, 0.0], basis_indices(3, 2))
        assert values[0] == 1.0, "Constant monomial must be 1 at the origin"
        assert not np.any(values[1:]), "Non-constant monomials must vanish at the origin"

    def test_bivariate(self):
        np.testing.assert_allclose(
            eval_basis([1.0, 2.0], basis_indices(2, 2)), [1, 2, 1, 4, 2, 1], err_msg="H_2(1, 2) mismatch"
        )

    def test_many_points(self):
        values = eval_basis(np.array([[1.0], [3.0]]), basis_indices(1, 1))
        assert values.shape == (2, 2), "One row per point expected"

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            eval_basis([1.0, 2.0], basis_indices(1, 2))


class TestCoordinates:
    def test_read_off(self):
        p = Polynomial.from_dict(1, {(0,): 3.0, (2,): 1.0})
        np.testing.assert_array_equal(to_coordinates(p, basis_indices(1, 2)), [3.0, 0.0, 1.0])

    def test_zero_polynomial(self):
        assert not np.any(to_coordinates(Polynomial.zero(2), basis_indices(2, 2))), "Zero must map to 0"

    def test_degree_overflow(self):
        with pytest.raises(DegreeOverflowError):
            to_coordinates(Polynomial.from_dict(1, {(3,): 1.0}), basis_indices(1, 2))

    def test_back_and_forth(self):
        rng = np.random.default_rng(3)
        basis = basis_indices(2, 3)
        p = random_polynomial(rng, 2, 3)
        assert from_coordinates(to_coordinates(p, basis), basis) == p, "Coordinates do not recover the polynomial"


class TestPolynomialArithmetic:
    def test_square(self):
        x = Polynomial.variable(1, 0)
        assert multiply(x, x) == Polynomial.from_dict(1, {(2,): 1.0}), "x·x must be x²"

    def test_difference_of_squares(self):
        x = Polynomial.variable(1, 0)
        assert multiply(1 + x, 1 - x) == 1 - x * x, "(1+x)(1-x) must be 1-x²"

    def test_cancellation_drops_terms(self):
        x = Polynomial.variable(1, 0)
        assert (x - x).is_zero(), "x - x must be the zero polynomial"

    def test_product_evaluates_pointwise(self):
        rng = np.random.default_rng(11)
        p, q = random_polynomial(rng, 2, 3), random_polynomial(rng, 2, 3)
        points = rng.uniform(-2, 2, size=(20, 2))
        np.testing.assert_allclose(
            multiply(p, q).evaluate(points), p.evaluate(points) * q.evaluate(points), rtol=1e-12, atol=1e-12
        )

    def test_derivative(self):
        x = Polynomial.variable(1, 0)
        assert (x * x * x).derivative(0) == 3 * x * x, "d/dx x³ must be 3x²"

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Polynomial.variable(1, 0) + Polynomial.variable(2, 0)

    def test_negative_exponent_is_rejected(self):
        with pytest.raises(ValidationError):
            TermFactory.build(alpha=(-1,))

    def test_terms_are_canonical(self):
        p = Polynomial(d=1, terms=(Term(alpha=(2,), c=1.0), Term(alpha=(0,), c=2.0), Term(alpha=(2,), c=1.0)))
        assert [term.alpha for term in p.terms] == [(0,), (2,)], "Terms must be merged and sorted"
        assert p.coefficients[(2,)] == 2.0, "Duplicate terms must be summed"
