from typing import Any

import numpy as np

from scipy.linalg import LinAlgError, cholesky, eigh_tridiagonal, null_space, solve_triangular

from src.core.exceptions import AssumptionError, StaticCubatureError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.cubature_ct import as_points, build_H
from src.generator import build_G
from src.linalg import nonnegative_solve, rank
from src.moments import asymptotic
from src.polynomials import MonomialBasis, basis_indices, eval_basis
from src.schemas import FloatArray, ProcessSpec, StaticCubature

logger = get_logger(__name__)


def moment_residual(points: FloatArray, weights: FloatArray, mu: FloatArray, basis: MonomialBasis) -> float:
    return float(np.max(np.abs(weights @ eval_basis(points, basis) - mu)))


def _check_residual(residual: float, mu: FloatArray, tol: ToleranceSettings) -> None:
    if residual > tol.a3 * (1.0 + float(np.max(np.abs(mu)))):
        raise StaticCubatureError(f"Moment vector is not reproduced, residual {residual:.3e}")


def gauss_points_1d(mu: Any, M: int, tolerances: ToleranceSettings | None = None) -> StaticCubature:  # noqa: N803
    """Gauss rule with M points from the moments μ_0, ..., μ_{2M-1} of a measure on the line.

    The Jacobi matrix comes from the Cholesky factor R of the Hankel matrix (μ_{i+j}):
    α_j = r_{j,j+1}/r_{j,j} - r_{j-1,j}/r_{j-1,j-1} on the diagonal and r_{j+1,j+1}/r_{j,j}
    beside it. Points are its eigenvalues, weights μ_0 times the squared first components.

    Raises:
        StaticCubatureError: If fewer than 2M moments are given or the Hankel matrix is not
            positive definite
    """
    tol = tolerances or settings.tol
    moments = np.asarray(mu, dtype=float)
    if M < 1 or moments.size < 2 * M:
        raise StaticCubatureError(f"{M} Gauss points need {2 * M} moments, got {moments.size}")
    hankel = np.array([[moments[i + j] for j in range(M)] for i in range(M)])
    try:
        R = cholesky(hankel, lower=False)  # noqa: N806
    except LinAlgError as e:
        raise StaticCubatureError("Hankel matrix is not positive definite, the measure needs fewer points") from e
    diagonal = np.diag(R)
    if np.min(diagonal) <= tol.rank * max(float(np.max(diagonal)), 1.0):
        raise StaticCubatureError("Hankel matrix is numerically singular, the measure needs fewer points")
    last = solve_triangular(R, moments[M : 2 * M], trans="T", lower=False)
    upper = np.column_stack([R, last])

    ratios = np.array([upper[j, j + 1] / upper[j, j] for j in range(M)])
    alpha = ratios - np.concatenate([[0.0], ratios[:-1]])
    beta = diagonal[1:] / diagonal[:-1]
    points, vectors = eigh_tridiagonal(alpha, beta)
    weights = moments[0] * vectors[0, :] ** 2

    basis = basis_indices(1, 2 * M - 1)
    nodes = points.reshape(-1, 1)
    residual = moment_residual(nodes, weights, moments[: 2 * M], basis)
    _check_residual(residual, moments[: 2 * M], tol)
    return StaticCubature(points=nodes, weights=weights, residual=residual)


def _caratheodory(H: FloatArray, weights: FloatArray) -> FloatArray:  # noqa: N803
    """Prune a nonnegative solution of H^T w = μ to one whose support has independent rows of H."""
    w = weights.copy()
    while True:
        support = np.flatnonzero(w > 0)
        if support.size == 0:
            return w
        kernel = null_space(H[support].T)
        if kernel.shape[1] == 0:
            return w
        z = kernel[:, 0]
        if not np.any(z > 0):
            z = -z
        positive = np.flatnonzero(z > 0)
        ratios = w[support[positive]] / z[positive]
        w[support] -= float(np.min(ratios)) * z
        w[support[positive[np.argmin(ratios)]]] = 0.0
        w[w <= np.finfo(float).eps * float(np.max(np.abs(w)))] = 0.0


def tchakaloff_select(
    mu: Any, candidate_points: Any, basis: MonomialBasis, tolerances: ToleranceSettings | None = None
) -> StaticCubature:
    """Positive cubature for μ over candidate points with at most N_n points.

    Raises:
        StaticCubatureError: If the candidates do not span or μ is outside their cone
    """
    tol = tolerances or settings.tol
    moments = np.asarray(mu, dtype=float)
    candidates = as_points(candidate_points, basis.d)
    H = build_H(candidates, basis)  # noqa: N806
    if rank(H, tol.rank) < basis.size:
        raise StaticCubatureError(f"Candidate matrix has rank {rank(H, tol.rank)} < {basis.size}")

    weights = nonnegative_solve(H.T, moments)
    _check_residual(float(np.max(np.abs(H.T @ weights - moments))), moments, tol)
    weights = _caratheodory(H, weights)
    keep = weights > 0
    points, kept = candidates[keep], weights[keep]
    residual = moment_residual(points, kept, moments, basis)
    _check_residual(residual, moments, tol)
    logger.debug("Selected %d of %d candidates", int(keep.sum()), candidates.shape[0])
    return StaticCubature(points=points, weights=kept, residual=residual)


def stationary_gauss_rule(
    spec: ProcessSpec, M: int, n: int | None = None, tolerances: ToleranceSettings | None = None  # noqa: N803
) -> StaticCubature:
    """Gauss rule for the asymptotic moments of a scalar process, with G rebuilt at order 2M - 1."""
    if spec.d != 1:
        raise StaticCubatureError("Gauss rules from moments are available for d = 1 only")
    order = 2 * M - 1
    if n is not None and order < n:
        raise StaticCubatureError(f"{M} Gauss points match {order} moments, fewer than n = {n}")
    moments = asymptotic(build_G(spec, order), tolerances=tolerances)
    if moments.mu is None:
        raise AssumptionError(
            "Assumption A2 fails: " + "; ".join(moments.diagnostic), [row.value for row in moments.eigenvalues]
        )
    return gauss_points_1d(moments.mu, M, tolerances)
