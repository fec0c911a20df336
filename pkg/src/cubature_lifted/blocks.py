from dataclasses import dataclass
from itertools import product
from math import atan2, ceil, pi

import numpy as np

from src.core.exceptions import LiftConstructionError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.linalg import cone_membership
from src.schemas import BlockKind, Construction, FloatArray, JordanBlock


logger = get_logger(__name__)


@dataclass(frozen=True)
class BlockRule:
    """Points u_k of one Jordan block with rates R such that J u_k = Σ_l R_kl (u_l - u_k)."""

    points: FloatArray
    rates: FloatArray
    construction: Construction
    labels: tuple[str, ...]

    @property
    def count(self) -> int:
        return int(self.points.shape[0])


def rates_from_weights(weights: FloatArray) -> FloatArray:
    """Rate matrix with the given nonnegative off-diagonal weights and zero row sums."""
    off_diagonal = weights - np.diag(np.diag(weights))
    return off_diagonal - np.diag(off_diagonal.sum(axis=1))


def polygon_order(phi: float) -> int:
    """Smallest m >= 3 with π(m + 2) / (2m) <= phi, for phi in (π/2, π]."""
    if not pi / 2 < phi <= pi:
        raise LiftConstructionError(f"Rotation angle must lie in (π/2, π], got {phi}")
    m = max(3, ceil(2 * pi / (2 * phi - pi)))
    while pi * (m + 2) / (2 * m) > phi:
        m += 1
    while m > 3 and pi * (m + 1) / (2 * (m - 1)) <= phi:  # noqa: PLR2004
        m -= 1
    return m


def regular_polygon(m: int, radius: float = 1.0) -> FloatArray:
    """Vertices of a regular m-gon centred at 0, first vertex on the positive x axis."""
    angles = 2 * pi * np.arange(m) / m
    return radius * np.column_stack([np.cos(angles), np.sin(angles)])


def zero_rule(block: JordanBlock) -> BlockRule:
    return BlockRule(
        points=np.eye(block.size),
        rates=np.zeros((block.size, block.size)),
        construction=Construction.CANONICAL,
        labels=tuple(f"e{k}" for k in range(block.size)),
    )


def hypercube_scales(block: JordanBlock) -> FloatArray:
    """u(1) = 1 and u(j+1) = u(j)|λ|/2 along chain links, 1 across chain breaks."""
    scales = np.ones(block.size)
    for j, link in enumerate(block.superdiagonal):
        scales[j + 1] = scales[j] * abs(block.a) / 2 if link else 1.0
    return scales


def hypercube_rule(block: JordanBlock) -> BlockRule:
    """Sign-flip vertices u_f of the scaled hypercube; flipping coordinate j has rate v_f(j) / 2u(j)."""
    if block.a >= 0:
        raise LiftConstructionError(f"Real block with eigenvalue {block.a} is not stable")
    J = block.matrix()  # noqa: N806
    scales = hypercube_scales(block)
    signs = list(product((1.0, -1.0), repeat=block.size))
    index = {f: k for k, f in enumerate(signs)}
    points = np.array(signs) * scales
    weights = np.zeros((len(signs), len(signs)))
    for k, f in enumerate(signs):
        drift = np.abs(J @ points[k])
        for j in range(block.size):
            flipped = list(f)
            flipped[j] = -flipped[j]
            weights[k, index[tuple(flipped)]] += drift[j] / (2 * scales[j])
    labels = tuple("".join("+" if s > 0 else "-" for s in f) for f in signs)
    return BlockRule(points=points, rates=rates_from_weights(weights), construction=Construction.HYPERCUBE, labels=labels)


def _vertex_weights(target: FloatArray, vertices: FloatArray, k: int, tol: ToleranceSettings) -> FloatArray | None:
    """Nonnegative weights on u_l - u_k reproducing ``target``, or None when outside the cone."""
    differences = np.delete(vertices, k, axis=0) - vertices[k]
    result = cone_membership(target, differences, tol.cone * (1.0 + float(np.max(np.abs(target)))))
    if not result.feasible:
        return None
    return np.insert(result.coefficients, k, 0.0)


def _polygon_rule(a: float, b: float, tol: ToleranceSettings) -> BlockRule:
    rotation = np.array([[a, b], [-b, a]])
    m = polygon_order(atan2(b, a))
    vertices = regular_polygon(m)
    weights = np.zeros((m, m))
    for k in range(m):
        row = _vertex_weights(rotation @ vertices[k], vertices, k, tol)
        if row is None:
            raise LiftConstructionError(f"Polygon vertex {k} of {m} fails the cone test")
        weights[k] = row
    return BlockRule(
        points=vertices,
        rates=rates_from_weights(weights),
        construction=Construction.POLYGON,
        labels=tuple(f"v{k}" for k in range(m)),
    )


def _product_rule(a: float, b: float, links: tuple[int, ...], tol: ToleranceSettings) -> BlockRule:
    """Outer polygon times the rule of the trailing chain; the outer radius doubles until every
    product vertex passes its cone test."""
    if not links:
        return _polygon_rule(a, b, tol)
    inner = _product_rule(a, b, links[1:], tol)
    rotation = np.array([[a, b], [-b, a]])
    m = polygon_order(atan2(b, a)) + 1
    coupling = links[0] * inner.points[:, :2]
    inner_weights = inner.rates - np.diag(np.diag(inner.rates))

    radius = 1.0
    for _ in range(settings.lift.max_doublings + 1):
        vertices = regular_polygon(m, radius)
        outer: list[list[FloatArray | None]] = [
            [_vertex_weights(rotation @ vertices[i] + coupling[q], vertices, i, tol) for q in range(inner.count)]
            for i in range(m)
        ]
        if all(row is not None for rows in outer for row in rows):
            break
        logger.debug("Product vertex outside its cone at radius %g, doubling", radius)
        radius *= 2
    else:
        raise LiftConstructionError(
            f"Product construction failed after {settings.lift.max_doublings} radius doublings"
        )

    count = m * inner.count
    weights = np.zeros((count, count))
    points = np.zeros((count, 2 + inner.points.shape[1]))
    labels = []
    for i in range(m):
        for q in range(inner.count):
            k = i * inner.count + q
            points[k] = np.concatenate([vertices[i], inner.points[q]])
            labels.append(f"v{i}x{inner.labels[q]}")
            weights[k, i * inner.count : (i + 1) * inner.count] = inner_weights[q]
            weights[k, q :: inner.count] += outer[i][q]  # type: ignore[operator]
    return BlockRule(
        points=points, rates=rates_from_weights(weights), construction=Construction.PRODUCT, labels=tuple(labels)
    )


def complex_rule(block: JordanBlock, tol: ToleranceSettings) -> BlockRule:
    """Polygon rule for 2x2 rotation blocks, product rule for longer chains.

    Clockwise blocks (b < 0) are built for |b| and reflected in every second coordinate.
    """
    if block.a >= 0:
        raise LiftConstructionError(f"Complex block with real part {block.a} is not stable")
    rule = _product_rule(block.a, abs(block.b), block.superdiagonal, tol)
    if block.b > 0:
        return rule
    reflection = np.tile([1.0, -1.0], block.length)
    return BlockRule(
        points=rule.points * reflection, rates=rule.rates, construction=rule.construction, labels=rule.labels
    )


def block_points(block: JordanBlock, tolerances: ToleranceSettings | None = None) -> BlockRule:
    """Points and rates of one real Jordan block, checked against P J^T = R P.

    Raises:
        LiftConstructionError: If the block is not stable or its rule misses the identity
    """
    tol = tolerances or settings.tol
    match block.kind:
        case BlockKind.ZERO:
            rule = zero_rule(block)
        case BlockKind.REAL:
            rule = hypercube_rule(block)
        case BlockKind.COMPLEX:
            rule = complex_rule(block, tol)
        case _:
            raise LiftConstructionError(f"Unrecognized block kind {block.kind}")

    J = block.matrix()  # noqa: N806
    residual = float(np.max(np.abs(rule.points @ J.T - rule.rates @ rule.points)))
    scale = 1.0 + float(np.max(np.abs(J))) * (1.0 + float(np.max(np.abs(rule.points))))
    if residual > tol.lift * scale:
        raise LiftConstructionError(f"Block rule misses J u = Σ w (u' - u) by {residual:.3e}")
    return rule
