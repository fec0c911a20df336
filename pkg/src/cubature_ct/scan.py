from typing import Any

from itertools import combinations

from src.core.logger import get_logger
from src.core.settings import ToleranceSettings
from src.cubature_ct.rule import as_points, check_ct
from src.schemas import CTRule, GeneratorMatrix

logger = get_logger(__name__)


def scan_point_sets(
    G: GeneratorMatrix,  # noqa: N803
    candidates: Any,
    M: int,  # noqa: N803
    limit: int | None = None,
    tolerances: ToleranceSettings | None = None,
) -> list[CTRule]:
    """Feasible M-subsets of a candidate grid, in lexicographic order of candidate indices."""
    grid = as_points(candidates, G.basis.d)
    if not 1 <= M <= grid.shape[0]:
        raise ValueError(f"Subset size must lie in [1, {grid.shape[0]}], got {M}")
    rules: list[CTRule] = []
    checked = 0
    for subset in combinations(range(grid.shape[0]), M):
        checked += 1
        rule = check_ct(G, grid[list(subset)], tolerances)
        if rule is not None:
            rules.append(rule)
            if limit is not None and len(rules) >= limit:
                break
    logger.info("Scanned %d point sets, %d feasible", checked, len(rules))
    return rules
