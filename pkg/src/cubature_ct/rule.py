from typing import Any

import numpy as np

from src.core.exceptions import DimensionMismatchError, SingularMatrixError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.helpers import parallel_map
from src.linalg import cone_membership, rank
from src.polynomials import MonomialBasis, eval_basis
from src.schemas import ConeMembershipResult, CTCheck, CTRule, FloatArray, GeneratorMatrix

logger = get_logger(__name__)

ROW_SUM_TOLERANCE = 1e-10


def as_points(points: Any, d: int) -> FloatArray:
    """Points as an M x d array; a flat sequence is read as M points on the line when d = 1."""
    array = np.asarray(points, dtype=float)
    if array.ndim == 1 and d == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2 or array.shape[1] != d:  # noqa: PLR2004
        raise DimensionMismatchError(f"Expected points in R^{d}, got shape {array.shape}")
    return array


def build_H(points: Any, basis: MonomialBasis) -> FloatArray:  # noqa: N802
    """H_ij = h_j(x_i)."""
    H = eval_basis(as_points(points, basis.d), basis)  # noqa: N806
    logger.debug("H has rank %d with %d rows", rank(H), H.shape[0])
    return np.asarray(H)


def row_sums_zero(L: Any, tolerance: float = ROW_SUM_TOLERANCE) -> bool:  # noqa: N803
    """Rows of L sum to zero, as for any L with HG = LH when H contains the constant column."""
    matrix = np.asarray(L, dtype=float)
    return bool(np.all(np.abs(matrix.sum(axis=1)) <= tolerance * (1.0 + np.max(np.abs(matrix), initial=0.0))))


def _row_cone(HG: FloatArray, H: FloatArray, i: int, tol: ToleranceSettings) -> ConeMembershipResult:  # noqa: N803
    v = HG[i]
    generators = np.delete(H, i, axis=0) - H[i]
    return cone_membership(v, generators, tol.cone * (1.0 + float(np.max(np.abs(v), initial=0.0))))


def solve_rate_matrix(
    H: Any,  # noqa: N803
    G: Any,  # noqa: N803
    tolerances: ToleranceSettings | None = None,
) -> tuple[FloatArray | None, tuple[float, ...], tuple[int, ...]]:
    """Rate matrix L with HG = LH, assembled row by row from cone coefficients.

    Row i of HG must be a nonnegative combination of the differences H_j - H_i. Returns
    ``(L, residuals, infeasible_rows)`` with ``L`` absent as soon as one row is infeasible.
    """
    tol = tolerances or settings.tol
    H = np.asarray(H, dtype=float)  # noqa: N806
    HG = H @ np.asarray(G, dtype=float)  # noqa: N806
    m = H.shape[0]
    results = parallel_map(lambda i: _row_cone(HG, H, i, tol), range(m))
    residuals = tuple(result.residual for result in results)
    infeasible = tuple(i for i, result in enumerate(results) if not result.feasible)
    for i in infeasible:
        logger.debug("Row %d is outside its difference cone, residual %.3e", i, residuals[i])
    if infeasible:
        return None, residuals, infeasible

    L = np.zeros((m, m))  # noqa: N806
    for i, result in enumerate(results):
        L[i, np.arange(m) != i] = result.coefficients
        L[i, i] = -float(result.coefficients.sum())
    return L, residuals, ()


def ct_feasibility(G: GeneratorMatrix, points: Any, tolerances: ToleranceSettings | None = None) -> CTCheck:  # noqa: N803
    """Run the cone test at every point and assemble the rule when all rows pass."""
    support = as_points(points, G.basis.d)
    if support.shape[0] < 1:
        raise ValueError("At least one point is required")
    H = build_H(support, G.basis)  # noqa: N806
    L, residuals, infeasible = solve_rate_matrix(H, G.G, tolerances)  # noqa: N806
    if L is None:
        return CTCheck(feasible=False, residuals=residuals, infeasible_rows=infeasible)
    residual = float(np.max(np.abs(H @ G.G - L @ H)))
    rule = CTRule(points=support, basis=G.basis, n=G.n, L=L, H=H, residual=residual)
    return CTCheck(feasible=True, rule=rule, residuals=residuals)


def check_ct(G: GeneratorMatrix, points: Any, tolerances: ToleranceSettings | None = None) -> CTRule | None:  # noqa: N803
    return ct_feasibility(G, points, tolerances).rule


def lagrange_check(G: GeneratorMatrix, points: Any) -> FloatArray:  # noqa: N803
    """H G H^-1 for a square invertible H; its off-diagonal signs decide feasibility.

    Raises:
        SingularMatrixError: If H is not square or not invertible
    """
    H = build_H(points, G.basis)  # noqa: N806
    if H.shape[0] != H.shape[1]:
        raise SingularMatrixError(f"H must be square, got {H.shape[0]} points for {H.shape[1]} basis polynomials")
    if rank(H) < H.shape[0]:
        raise SingularMatrixError("H is singular")
    return np.asarray(np.linalg.solve(H.T, (H @ G.G).T).T)
