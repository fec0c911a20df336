from collections.abc import Sequence

import numpy as np

from scipy.optimize import nnls

from src.core.logger import get_logger
from src.core.settings import settings
from src.schemas import ConeMembershipResult, FloatArray

logger = get_logger(__name__)

NNLS_ITERATION_FACTOR = 50


def nonnegative_solve(A: FloatArray, v: FloatArray) -> FloatArray:  # noqa: N803
    """Lawson-Hanson solution of min |Ac - v|_2 subject to c >= 0."""
    iterations = NNLS_ITERATION_FACTOR * max(A.shape[1], 1)
    try:
        coefficients, _ = nnls(A, v, maxiter=iterations)
    except RuntimeError:
        logger.debug("NNLS stopped after %d iterations", iterations)
        return np.zeros(A.shape[1])
    return np.asarray(coefficients, dtype=float)


def cone_membership(
    v: Sequence[float] | FloatArray, generators: Sequence[FloatArray] | FloatArray, eps_cone: float | None = None
) -> ConeMembershipResult:
    """Test whether v is a nonnegative combination of the generators.

    Args:
        v: Target vector
        generators: Generator vectors g_j, one per row
        eps_cone: Accepted infinity norm residual

    Returns:
        ConeMembershipResult, infeasible when the NNLS optimum misses v by more than eps_cone
    """
    target = np.asarray(v, dtype=float)
    eps = eps_cone if eps_cone is not None else settings.tol.cone
    columns = np.asarray(generators, dtype=float).reshape(-1, target.size).T
    if columns.shape[1] == 0 or not np.any(target):
        residual = float(np.max(np.abs(target), initial=0.0))
        return ConeMembershipResult(feasible=residual <= eps, coefficients=np.zeros(columns.shape[1]), residual=residual)

    coefficients = nonnegative_solve(columns, target)
    residual = float(np.max(np.abs(target - columns @ coefficients)))
    return ConeMembershipResult(feasible=residual <= eps, coefficients=coefficients, residual=residual)
