from collections.abc import Sequence

import numpy as np

from scipy.linalg import block_diag

from src.core.exceptions import AssumptionError, LiftConstructionError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.cubature_lifted.blocks import BlockRule, block_points
from src.helpers import parallel_map
from src.linalg import expm, rank, spectral
from src.moments import a1_violations
from src.schemas import (
    FloatArray,
    GeneratorMatrix,
    JordanOverride,
    LiftedRule,
    LiftVerification,
    provenance_tag,
    rate_matrix_defect,
)

logger = get_logger(__name__)

FLOW_TOLERANCE = 1e-6


def lift_tolerance(G: GeneratorMatrix, tol: ToleranceSettings) -> float:  # noqa: N803
    return tol.lift * (1.0 + float(np.max(np.sum(np.abs(G.G), axis=1))))


def lift(
    G: GeneratorMatrix,  # noqa: N803
    *,
    override: JordanOverride | None = None,
    tolerances: ToleranceSettings | None = None,
) -> LiftedRule:
    """Non-trivial lifted Markov cubature rule: SG = LS with rank S = N_n.

    Every real Jordan block of G^T = V J V^-1 contributes its own point set in Jordan coordinates
    (zeros outside the block); the points are mapped back through V and L is block-diagonal.

    Raises:
        AssumptionError: If A1 fails
        LiftConstructionError: If the assembled rule violates SG = LS or rank S = N_n
    """
    tol = tolerances or settings.tol
    violations = a1_violations(G, tol)
    if violations:
        raise AssumptionError(
            "Assumption A1 fails: " + "; ".join(violations), [complex(z) for z in np.linalg.eigvals(G.G)]
        )

    info = spectral(G.G.T, tolerances=tol, override=override)
    rules: list[BlockRule] = parallel_map(lambda block: block_points(block, tol), info.blocks)

    size = G.size
    Y = np.zeros((sum(rule.count for rule in rules), size))  # noqa: N806
    provenance: list[str] = []
    row = 0
    for index, (block, rule) in enumerate(zip(info.blocks, rules, strict=True)):
        Y[row : row + rule.count, block.start : block.stop] = rule.points
        provenance.extend(provenance_tag(index, rule.construction, label) for label in rule.labels)
        row += rule.count

    S = Y @ info.V.T  # noqa: N806
    L = np.asarray(block_diag(*(rule.rates for rule in rules)), dtype=float)  # noqa: N806
    residual = float(np.max(np.abs(S @ G.G - L @ S)))
    if residual > lift_tolerance(G, tol) * (1.0 + float(np.max(np.abs(S)))):
        raise LiftConstructionError(f"Lifted rule misses SG = LS by {residual:.3e}")
    if rank(S, tol.rank) != size:
        raise LiftConstructionError(f"Lifted points span a space of dimension {rank(S, tol.rank)} < {size}")
    logger.info("Lifted rule with %d points for N = %d, residual %.3e", S.shape[0], size, residual)
    return LiftedRule(S=S, L=L, provenance=tuple(provenance), residual=residual)


def verify_lifted(
    rule: LiftedRule,
    G: GeneratorMatrix,  # noqa: N803
    times: Sequence[float] = (0.25, 1.0, 4.0),
    tolerances: ToleranceSettings | None = None,
) -> LiftVerification:
    """Check SG = LS, rank S = N_n, the rate matrix conditions and exp(tL)S = S exp(tG)."""
    tol = tolerances or settings.tol
    residual = float(np.max(np.abs(rule.S @ G.G - rule.L @ rule.S)))
    s_rank = rank(rule.S, tol.rank)
    rate_ok = rate_matrix_defect(rule.L) <= tol.row_sum
    flows = tuple(float(np.max(np.abs(expm(t * rule.L) @ rule.S - rule.S @ expm(t * G.G)))) for t in times)
    scale = 1.0 + float(np.max(np.abs(rule.S)))
    passed = (
        residual <= lift_tolerance(G, tol) * scale
        and s_rank == G.size
        and rate_ok
        and all(flow <= FLOW_TOLERANCE * scale for flow in flows)
    )
    return LiftVerification(
        residual=residual,
        rank=s_rank,
        rank_ok=s_rank == G.size,
        rate_matrix_ok=rate_ok,
        times=tuple(times),
        flow_residuals=flows,
        passed=passed,
    )


def trivial_rule(G: GeneratorMatrix) -> LiftedRule:  # noqa: N803
    """Trivial lifted rule: the pair ±v for a real negative eigenvalue λ of G^T with rate -λ/2,
    or the single point 0 when there is none. It satisfies SG = LS but rank S < N_n."""
    eigenvalues, vectors = np.linalg.eig(G.G.T)
    candidates = [k for k, z in enumerate(eigenvalues) if abs(z.imag) <= settings.tol.cluster and z.real < 0]
    if not candidates:
        return LiftedRule(S=np.zeros((1, G.size)), L=np.zeros((1, 1)), provenance=("origin",))
    k = candidates[0]
    v: FloatArray = np.real(vectors[:, k])
    rate = -float(eigenvalues[k].real) / 2
    S = np.vstack([v, -v])  # noqa: N806
    L = np.array([[-rate, rate], [rate, -rate]])  # noqa: N806
    return LiftedRule(S=S, L=L, provenance=("+v", "-v"), residual=float(np.max(np.abs(S @ G.G - L @ S))))
