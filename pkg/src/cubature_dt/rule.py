from typing import Any

import numpy as np

from src.core.exceptions import AssumptionError, DeltaSearchError, SingularMatrixError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.cubature_ct import as_points, build_H
from src.helpers import parallel_map
from src.linalg import cone_membership, expm, rank
from src.moments import check_A2, eigen_table
from src.schemas import DeltaStrategy, DTRule, FloatArray, GeneratorMatrix

logger = get_logger(__name__)


def q_at(
    G: GeneratorMatrix,  # noqa: N803
    H: Any,  # noqa: N803
    delta: float,
    tolerances: ToleranceSettings | None = None,
) -> FloatArray | None:
    """Stochastic matrix Q with H exp(ΔG) = QH, or None when a row leaves the cone of the rows of H.

    Rows of Q are not renormalized; a row sum off by more than ``tol.row_sum`` counts as failure.

    Raises:
        SingularMatrixError: If rank H < N_n
        ValueError: If delta is not positive
    """
    tol = tolerances or settings.tol
    if delta <= 0:
        raise ValueError(f"Time step must be positive, got {delta}")
    H = np.asarray(H, dtype=float)  # noqa: N806
    if rank(H, tol.rank) < G.size:
        raise SingularMatrixError(f"H has rank {rank(H, tol.rank)} < {G.size}")

    P = H @ expm(delta * G.G)  # noqa: N806
    results = parallel_map(
        lambda row: cone_membership(row, H, tol.cone * (1.0 + float(np.max(np.abs(row))))), list(P)
    )
    if not all(result.feasible for result in results):
        logger.debug("Δ=%g: %d rows outside the cone", delta, sum(not r.feasible for r in results))
        return None
    Q = np.vstack([result.coefficients for result in results])  # noqa: N806
    deviation = float(np.max(np.abs(Q.sum(axis=1) - 1.0)))
    if deviation > tol.row_sum:
        logger.debug("Δ=%g: row sums of Q deviate from 1 by %.3e", delta, deviation)
        return None
    return Q


def find_delta(
    G: GeneratorMatrix,  # noqa: N803
    H: Any,  # noqa: N803
    delta_init: float | None = None,
    strategy: DeltaStrategy = DeltaStrategy.BISECTION,
    tolerances: ToleranceSettings | None = None,
) -> tuple[float, FloatArray]:
    """Time step Δ whose Q has all entries at least ``tol.positive``.

    Δ doubles from ``delta_init`` until Q qualifies. With bisection the bracket between the last
    failing step (or 0) and the first success is then narrowed to ``bisection_tol``, keeping the
    smallest qualifying step.

    Raises:
        AssumptionError: If A2 fails
        DeltaSearchError: If no step qualifies within the doubling cap
    """
    tol = tolerances or settings.tol
    if not check_A2(G, tol):
        table = eigen_table(G, tol)
        raise AssumptionError("Assumption A2 fails, no time step search", [row.value for row in table])
    search = settings.discrete
    delta = delta_init if delta_init is not None else search.delta_init

    def trial(step: float) -> tuple[FloatArray | None, float]:
        Q = q_at(G, H, step, tol)  # noqa: N806
        smallest = float(np.min(Q)) if Q is not None else -np.inf
        return (Q if smallest >= tol.positive else None), smallest

    lower = 0.0
    best = -np.inf
    for _ in range(search.max_doublings + 1):
        Q, smallest = trial(delta)  # noqa: N806
        if Q is not None:
            break
        best = max(best, smallest)
        lower = delta
        delta *= 2
    else:
        raise DeltaSearchError(
            f"No positive Q after {search.max_doublings} doublings, largest min entry {best:.3e}"
        )
    logger.info("Positive Q at Δ=%g", delta)

    if strategy is DeltaStrategy.BISECTION:
        while delta - lower > search.bisection_tol:
            middle = (lower + delta) / 2
            candidate, _ = trial(middle)
            if candidate is None:
                lower = middle
            else:
                delta, Q = middle, candidate  # noqa: N806
        logger.info("Bisection settled at Δ=%g", delta)
    return delta, Q


def discrete_rule(
    G: GeneratorMatrix,  # noqa: N803
    points: Any,
    delta_init: float | None = None,
    strategy: DeltaStrategy = DeltaStrategy.BISECTION,
    tolerances: ToleranceSettings | None = None,
) -> DTRule:
    """Discrete-time rule over the given points, with Δ from :func:`find_delta`."""
    support = as_points(points, G.basis.d)
    H = build_H(support, G.basis)  # noqa: N806
    delta, Q = find_delta(G, H, delta_init, strategy, tolerances)  # noqa: N806
    residual = float(np.max(np.abs(H @ expm(delta * G.G) - Q @ H)))
    return DTRule(points=support, basis=G.basis, n=G.n, delta=delta, Q=Q, H=H, residual=residual)
