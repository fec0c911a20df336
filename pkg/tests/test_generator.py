import numpy as np
import pytest

from pydantic import ValidationError
from pytest_mock import MockerFixture

from src.core.exceptions import BasisError, DimensionMismatchError, PolynomialPropertyError
from src.generator import (
    apply_generator,
    build_G,
    carre_du_champ,
    check_polynomial_property,
    first_violation,
    sample_state_space,
    validate_spec,
)
from src.generator import validation
from src.polynomials import Polynomial, basis_indices, to_coordinates
from src.schemas import ProcessSpec
from tests.conftest import ou_spec

X = Polynomial.variable(1, 0)


def coordinates(p: Polynomial, n: int = 2) -> np.ndarray:
    return to_coordinates(p, basis_indices(p.d, n))


class TestApplyGenerator:
    def test_coordinate(self, ou):
        np.testing.assert_allclose(coordinates(apply_generator(ou, X)), [0.5, -1.0, 0.0], err_msg="𝒢x != 0.5 - x")

    def test_constant_is_harmonic(self, ou):
        assert apply_generator(ou, Polynomial.constant(1, 3.0)).is_zero(), "𝒢1 must vanish"

    def test_square(self, ou):
        np.testing.assert_allclose(coordinates(apply_generator(ou, X * X)), [1.0, 1.0, -2.0], err_msg="𝒢x² mismatch")

    def test_dimension_mismatch(self, ou):
        with pytest.raises(DimensionMismatchError):
            apply_generator(ou, Polynomial.variable(2, 0))


class TestBuildG:
    def test_first_order(self, ou):
        np.testing.assert_allclose(build_G(ou, 1).G, [[0.0, 0.5], [0.0, -1.0]], err_msg="G_1 mismatch")

    def test_second_order(self, ou):
        expected = [[0.0, 0.5, 1.0], [0.0, -1.0, 1.0], [0.0, 0.0, -2.0]]
        np.testing.assert_allclose(build_G(ou, 2).G, expected, err_msg="G_2 mismatch")

    def test_constant_column_vanishes(self, rotation):
        assert not np.any(build_G(rotation, 2).G[:, 0]), "First column of G must be zero"

    def test_block_triangular_by_degree(self, rotation):
        G = build_G(rotation, 2)  # noqa: N806
        degrees = G.basis.degrees
        below = degrees[:, np.newaxis] > degrees[np.newaxis, :]
        assert not np.any(G.G[below]), "G must not map lower degrees to higher ones"

    def test_leading_block_is_lower_order_matrix(self, ou):
        np.testing.assert_allclose(build_G(ou, 3).leading(2).G, build_G(ou, 2).G, err_msg="Leading block mismatch")

    def test_n_zero_is_rejected(self, ou):
        with pytest.raises(BasisError):
            build_G(ou, 0)

    def test_cubic_drift_is_rejected(self):
        spec = ProcessSpec(d=1, drift=(X * X * X,), diffusion=((Polynomial.constant(1),),))
        with pytest.raises(PolynomialPropertyError, match="not polynomial-preserving at degree 1"):
            build_G(spec, 2)


class TestCarreDuChamp:
    def test_coordinate(self):
        np.testing.assert_allclose(coordinates(carre_du_champ(ou_spec(theta=-3.0), X)), [1.0, 0.0, 0.0])

    def test_constant(self, ou):
        assert carre_du_champ(ou, Polynomial.constant(1, 2.0)).is_zero(), "Γ of a constant must vanish"

    def test_general_diffusion(self):
        spec = ou_spec(kappa=2.0, alpha=1.0, a=0.5, A=0.3)
        np.testing.assert_allclose(
            coordinates(carre_du_champ(spec, X)), [2.0, 1.0, 0.6], err_msg="Γx must equal κ(α + ax + Ax²)"
        )


class TestPolynomialProperty:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_ou_holds(self, ou, n):
        assert check_polynomial_property(ou, n), f"OU must be polynomial at n={n}"

    def test_cubic_drift(self):
        spec = ProcessSpec(d=1, drift=(X * X * X,), diffusion=((Polynomial.constant(1),),))
        assert not check_polynomial_property(spec, 1), "Cubic drift must fail at n=1"

    def test_cubic_diffusion(self):
        spec = ProcessSpec(d=1, drift=(-X,), diffusion=((X * X * X,),))
        assert check_polynomial_property(spec, 1), "Degree bounds hold at n=1"
        assert not check_polynomial_property(spec, 2), "Cubic diffusion must fail at n=2"
        assert first_violation(spec, 3) == 2, "First violation must be at degree 2"


class TestProcessSpec:
    def test_asymmetric_diffusion(self):
        x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        one = Polynomial.constant(2)
        with pytest.raises(ValidationError):
            ProcessSpec(d=2, drift=(-x, -y), diffusion=((one, x), (y, one)))

    def test_drift_length(self):
        with pytest.raises(ValidationError):
            ProcessSpec(d=2, drift=(Polynomial.variable(2, 0),), diffusion=((X,),))

    def test_default_box(self, ou):
        assert ou.bounding_box == ((-5.0, 5.0),), "Default box must be ±5"


class TestValidation:
    def test_sample_respects_constraints(self):
        spec = ou_spec().model_copy(update={"constraints": (X,)})
        points = sample_state_space(spec, count=50, seed=3)
        assert points.shape == (50, 1), "Sample size mismatch"
        assert np.all(points >= 0), "Samples must satisfy the constraints"

    def test_sample_is_reproducible(self, ou):
        np.testing.assert_array_equal(sample_state_space(ou, 20, 5), sample_state_space(ou, 20, 5))

    def test_ou_is_valid(self, ou):
        report = validate_spec(ou, count=100)
        assert report.ok, f"OU must validate cleanly, got {report.warnings}"
        assert report.samples == 100, "Sample count mismatch"

    def test_negative_diffusion_warns(self, mocker: MockerFixture):
        warning = mocker.patch.object(validation.logger, "warning")
        spec = ProcessSpec(d=1, drift=(-X,), diffusion=((Polynomial.constant(1, -1.0),),))
        report = validate_spec(spec, count=40)
        assert report.psd_violations == 40, "Every sample must violate PSD"
        assert report.carre_du_champ_violations == 40, "Γx = -1 must be flagged everywhere"
        assert not report.ok, "Report must carry warnings"
        assert warning.called, "Violations must be logged as warnings"
