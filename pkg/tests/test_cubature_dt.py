from math import exp, sqrt

import numpy as np
import pytest

from src.core.exceptions import AssumptionError, DeltaSearchError, SingularMatrixError, StaticCubatureError
from src.core.settings import settings
from src.cubature_ct import build_H
from src.cubature_dt import (
    discrete_rule,
    find_delta,
    gauss_points_1d,
    moment_residual,
    q_at,
    stationary_gauss_rule,
    tchakaloff_select,
    verify_dt,
)
from src.generator import build_G
from src.linalg import expm
from src.polynomials import basis_indices, eval_basis
from src.schemas import DeltaStrategy

# moments of N(1/2, 1/2) up to order 5
NORMAL_MOMENTS = [1.0, 0.5, 0.75, 0.875, 1.5625, 2.53125]


@pytest.fixture
def gauss_points():
    return gauss_points_1d(NORMAL_MOMENTS, 3).points


class TestGaussPoints:
    def test_two_points(self):
        rule = gauss_points_1d(NORMAL_MOMENTS[:4], 2)
        np.testing.assert_allclose(rule.points[:, 0], [0.5 - sqrt(0.5), 0.5 + sqrt(0.5)], atol=1e-10)
        np.testing.assert_allclose(rule.weights, [0.5, 0.5], atol=1e-10)

    def test_three_points(self):
        rule = gauss_points_1d(NORMAL_MOMENTS, 3)
        np.testing.assert_allclose(rule.points[:, 0], [0.5 - sqrt(1.5), 0.5, 0.5 + sqrt(1.5)], atol=1e-9)
        np.testing.assert_allclose(rule.weights, [1 / 6, 2 / 3, 1 / 6], atol=1e-9)
        assert rule.residual <= 1e-9, "Gauss rule must reproduce all 2M moments"

    def test_too_few_moments(self):
        with pytest.raises(StaticCubatureError, match="need 6 moments"):
            gauss_points_1d(NORMAL_MOMENTS[:4], 3)

    def test_point_mass(self):
        with pytest.raises(StaticCubatureError):
            gauss_points_1d([1.0, 2.0, 4.0, 8.0], 2)

    def test_moment_residual(self):
        basis = basis_indices(1, 2)
        residual = moment_residual(np.array([[0.0], [1.0]]), np.array([0.5, 0.5]), np.array([1.0, 0.5, 0.6]), basis)
        assert residual == pytest.approx(0.1), "Second moment is off by 0.1"


class TestTchakaloff:
    def test_normal(self):
        basis = basis_indices(1, 2)
        rule = tchakaloff_select(NORMAL_MOMENTS[:3], np.linspace(-2.0, 3.0, 11), basis)
        assert rule.points.shape[0] <= basis.size, "At most N_n points are kept"
        assert np.all(rule.weights > 0), "Weights must be strictly positive"
        np.testing.assert_allclose(rule.weights @ eval_basis(rule.points, basis), NORMAL_MOMENTS[:3], atol=1e-9)

    def test_point_mass(self):
        basis = basis_indices(1, 2)
        rule = tchakaloff_select([1.0, 2.0, 4.0], np.linspace(0.0, 4.0, 9), basis)
        at_two = rule.weights[np.isclose(rule.points[:, 0], 2.0)]
        assert float(np.sum(at_two)) == pytest.approx(1.0, abs=1e-8), "All mass must sit at x = 2"

    def test_outside_cone(self):
        with pytest.raises(StaticCubatureError):
            tchakaloff_select([1.0, 0.0, -1.0], np.linspace(-2.0, 2.0, 9), basis_indices(1, 2))

    def test_rank_deficient(self):
        with pytest.raises(StaticCubatureError, match="rank"):
            tchakaloff_select([1.0, 0.5, 0.75], [0.0, 1.0], basis_indices(1, 2))


class TestStationaryGauss:
    def test_ou(self, ou):
        rule = stationary_gauss_rule(ou, 3, n=2)
        np.testing.assert_allclose(rule.points[:, 0], [0.5 - sqrt(1.5), 0.5, 0.5 + sqrt(1.5)], atol=1e-8)

    def test_not_enough_points(self, ou):
        with pytest.raises(StaticCubatureError):
            stationary_gauss_rule(ou, 2, n=5)

    def test_planar(self, rotation):
        with pytest.raises(StaticCubatureError, match="d = 1"):
            stationary_gauss_rule(rotation, 2)


class TestQAt:
    def test_two_points(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        Q = q_at(G, build_H([0.0, 1.0], G.basis), 1.0)  # noqa: N806
        low = 0.5 * (1 - exp(-1.0))
        np.testing.assert_allclose(Q, [[1 - low, low], [low, 1 - low]], atol=1e-9)

    def test_singular(self, ou):
        G = build_G(ou, 2)  # noqa: N806
        with pytest.raises(SingularMatrixError):
            q_at(G, build_H([0.0, 1.0, 1.0], G.basis), 1.0)

    def test_nonpositive_step(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        with pytest.raises(ValueError, match="positive"):
            q_at(G, build_H([0.0, 1.0], G.basis), 0.0)


class TestFindDelta:
    def test_doubling_stops_at_first_success(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        delta, Q = find_delta(G, build_H([0.0, 1.0], G.basis), 0.01, DeltaStrategy.DOUBLING)  # noqa: N806
        assert delta == pytest.approx(0.01), "First trial step already qualifies"
        assert np.min(Q) >= settings.tol.positive, "Q must be strictly positive"

    def test_bisection_shrinks(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        delta, Q = find_delta(G, build_H([0.0, 1.0], G.basis), 0.01)  # noqa: N806
        assert delta < 0.01, "Bisection must look below the first success"
        assert np.min(Q) >= settings.tol.positive, "Q must be strictly positive"

    def test_gauss_points(self, ou, gauss_points):
        G = build_G(ou, 2)  # noqa: N806
        H = build_H(gauss_points, G.basis)  # noqa: N806
        delta, Q = find_delta(G, H)  # noqa: N806
        assert np.min(Q) >= 1e-6, "Q must be strictly positive"
        assert np.max(np.abs(H @ expm(delta * G.G) - Q @ H)) <= 1e-8, "H exp(ΔG) = QH must hold"

    def test_a2_fails(self, martingale):
        G = build_G(martingale, 2)  # noqa: N806
        with pytest.raises(AssumptionError, match="A2"):
            find_delta(G, build_H([-1.0, 0.0, 1.0], G.basis))

    def test_doubling_cap(self, ou, mocker):
        mocker.patch.object(settings.discrete, "max_doublings", 0)
        G = build_G(ou, 1)  # noqa: N806
        with pytest.raises(DeltaSearchError, match="largest min entry"):
            find_delta(G, build_H([0.0, 1.0], G.basis), 1e-9)


class TestDiscreteRule:
    def test_rule_verifies(self, ou, gauss_points):
        G = build_G(ou, 2)  # noqa: N806
        rule = discrete_rule(G, gauss_points)
        assert rule.residual <= 1e-8, "H exp(ΔG) = QH must hold"
        report = verify_dt(rule, G, 10)
        assert report.passed, f"Rule must verify: {report}"
        assert len(report.power_residuals) == 10, "One residual per power"

    def test_two_points_default_pair(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        rule = discrete_rule(G, [0.0, 1.0], strategy=DeltaStrategy.DOUBLING)
        assert verify_dt(rule, G, 5).passed, "Two-point rule must verify with q = 1"

    def test_wrong_q_fails(self, ou, gauss_points):
        G = build_G(ou, 2)  # noqa: N806
        rule = discrete_rule(G, gauss_points)
        swapped = rule.model_copy(update={"Q": rule.Q[[1, 0, 2]]})
        assert not verify_dt(swapped, G, 3).passed, "Permuted rows of Q must fail verification"

    def test_l_max(self, ou):
        G = build_G(ou, 1)  # noqa: N806
        rule = discrete_rule(G, [0.0, 1.0], strategy=DeltaStrategy.DOUBLING)
        with pytest.raises(ValueError, match="l_max"):
            verify_dt(rule, G, 0)
