from typing import Any

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from scipy import linalg

from src.core.exceptions import SpectralDecompositionError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.linalg.kernels import as_finite_matrix
from src.schemas import BlockKind, FloatArray, JordanBlock, JordanOverride, SpectralInfo, assemble_jordan

logger = get_logger(__name__)

type ComplexArray = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class Cluster:
    """Eigenvalues treated as equal: representative value, algebraic multiplicity and the radius holding them."""

    value: complex
    multiplicity: int
    radius: float = 0.0

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


def cluster_tolerance(M: FloatArray, tol: ToleranceSettings) -> float:  # noqa: N803
    norm = float(np.linalg.norm(M, 2)) if M.size else 0.0
    return tol.cluster * norm if norm > 0 else tol.cluster


def _cluster_order(cluster: Cluster) -> tuple[bool, float, float]:
    return cluster.value != 0, -cluster.value.real, cluster.value.imag


def cluster_eigenvalues(eigenvalues: ComplexArray, tau: float) -> list[Cluster]:
    """Group eigenvalues lying within ``tau`` of each other; zero cluster first, then by decreasing real part."""
    groups: list[list[complex]] = []
    for value in sorted(eigenvalues.tolist(), key=lambda z: (-z.real, z.imag)):
        z = complex(value.real, 0.0) if abs(value.imag) <= tau else complex(value)
        for group in groups:
            if min(abs(z - member) for member in group) <= tau:
                group.append(z)
                break
        else:
            groups.append([z])

    clusters = []
    for group in groups:
        mean = complex(np.mean(group))
        value = complex(mean.real, 0.0) if all(z.imag == 0.0 for z in group) else mean
        if abs(value) <= tau:
            value = 0j
        spread = max(abs(z - value) for z in group)
        clusters.append(Cluster(value=value, multiplicity=len(group), radius=2 * spread + tau))
    return sorted(clusters, key=_cluster_order)


def _geometric_multiplicity(M: FloatArray, value: complex, threshold: float) -> int:  # noqa: N803
    singular_values = np.linalg.svd(M - value * np.eye(M.shape[0]), compute_uv=False)
    return int(np.sum(singular_values <= threshold))


def merge_defective(M: FloatArray, clusters: list[Cluster], tol: ToleranceSettings) -> list[Cluster]:  # noqa: N803
    """Merge neighbouring clusters that are one defective eigenvalue split by rounding.

    A Jordan chain of length k spreads its eigenvalue over a ring of radius about eps^(1/k)·‖M‖,
    wider than the clustering tolerance. Two clusters within sqrt(tol.cluster)·‖M‖ are merged
    around their common mean when M - λI has a kernel smaller than the merged multiplicity.
    """
    tau = cluster_tolerance(M, tol)
    reach = np.sqrt(tol.cluster) * max(float(np.linalg.norm(M, 2)), 1.0) if M.size else 0.0
    clusters = list(clusters)
    while True:
        pairs = sorted(
            (abs(first.value - second.value), i, j)
            for i, first in enumerate(clusters)
            for j, second in enumerate(clusters)
            if i < j and abs(first.value - second.value) <= reach
        )
        for _, i, j in pairs:
            first, second = clusters[i], clusters[j]
            multiplicity = first.multiplicity + second.multiplicity
            value = (first.multiplicity * first.value + second.multiplicity * second.value) / multiplicity
            if abs(value.imag) <= reach:
                value = complex(value.real, 0.0)
            if abs(value) <= tau or (abs(value) <= reach and 0j in (first.value, second.value)):
                value = 0j
            if _geometric_multiplicity(M, value, reach) >= multiplicity:
                continue
            spread = max(abs(c.value - value) + c.radius for c in (first, second))
            merged = Cluster(value=value, multiplicity=multiplicity, radius=2 * spread + tau)
            logger.debug("Merged eigenvalues %s and %s into a defective cluster at %s", first.value, second.value, value)
            clusters = [c for k, c in enumerate(clusters) if k not in (i, j)] + [merged]
            break
        else:
            return sorted(clusters, key=_cluster_order)


def matrix_clusters(M: FloatArray, tol: ToleranceSettings) -> list[Cluster]:  # noqa: N803
    """Eigenvalue clusters of M with defective eigenvalues kept whole."""
    if not M.size:
        return []
    return merge_defective(M, cluster_eigenvalues(linalg.eigvals(M), cluster_tolerance(M, tol)), tol)


def _kernel(B: Any, threshold: float) -> Any:  # noqa: N803
    """Orthonormal basis of the numerical kernel of B (columns)."""
    _, singular_values, vh = np.linalg.svd(B)
    rank = int(np.sum(singular_values > threshold))
    return vh[rank:].conj().T


def _invariant_subspace(M: FloatArray, cluster: Cluster, tau: float) -> tuple[Any, Any]:
    """Schur vectors Z and the restriction T - λI of M to the invariant subspace of a cluster."""
    try:
        if cluster.is_real:
            T, Z, dim = linalg.schur(  # noqa: N806
                M, output="real", sort=lambda re, im: abs(re - cluster.value.real) <= tau and abs(im) <= tau
            )
        else:
            T, Z, dim = linalg.schur(M.astype(complex), output="complex", sort=lambda z: abs(z - cluster.value) <= tau)  # noqa: N806
    except linalg.LinAlgError as e:
        raise SpectralDecompositionError(f"Schur reordering failed for eigenvalue {cluster.value}: {e}", np.inf) from e
    if dim != cluster.multiplicity:
        raise SpectralDecompositionError(
            f"Invariant subspace of {cluster.value} has dimension {dim}, expected {cluster.multiplicity}", np.inf
        )
    nilpotent = T[:dim, :dim] - (cluster.value.real if cluster.is_real else cluster.value) * np.eye(dim)
    return Z[:, :dim], nilpotent


def jordan_chains(nilpotent: Any, tol: ToleranceSettings, tau: float, scale: float) -> list[list[Any]]:
    """Jordan chains [N^{k-1}c, ..., Nc, c] of a nearly nilpotent matrix N, longest first."""
    size = nilpotent.shape[0]
    kernels: list[Any] = [np.zeros((size, 0), dtype=nilpotent.dtype)]
    power = np.eye(size, dtype=nilpotent.dtype)
    for k in range(1, size + 1):
        power = power @ nilpotent
        threshold = max(tol.rank * scale**k, tau * scale ** (k - 1))
        kernel = _kernel(power, threshold)
        if kernel.shape[1] < kernels[-1].shape[1]:
            kernel = kernels[-1]
        kernels.append(kernel)
        if kernel.shape[1] == size:
            break
    else:
        kernels[-1] = np.eye(size, dtype=nilpotent.dtype)

    chains: list[list[Any]] = []
    for k in range(len(kernels) - 1, 0, -1):
        covered = [chain[k - 1] for chain in chains]
        fresh = kernels[k].shape[1] - kernels[k - 1].shape[1] - len(covered)
        if fresh <= 0:
            continue
        spanned = np.column_stack([kernels[k - 1], *covered]) if covered else kernels[k - 1]
        projected = kernels[k]
        if spanned.shape[1]:
            Q = linalg.orth(spanned)  # noqa: N806
            projected = projected - Q @ (Q.conj().T @ projected)
        tops, _, _ = np.linalg.svd(projected, full_matrices=False)
        for top in tops[:, :fresh].T:
            chain = [top]
            for _ in range(k - 1):
                chain.insert(0, nilpotent @ chain[0])
            chains.append(chain)
    return sorted(chains, key=len, reverse=True)


def _cluster_blocks(
    M: FloatArray, cluster: Cluster, tol: ToleranceSettings, tau: float, scale: float  # noqa: N803
) -> tuple[list[JordanBlock], list[FloatArray]]:
    """Blocks and real columns of V for one cluster; blocks carry start 0 and are placed later."""
    radius = max(tau, cluster.radius)
    Z, nilpotent = _invariant_subspace(M, cluster, radius)  # noqa: N806
    chains = jordan_chains(nilpotent, tol, radius, scale)
    blocks: list[JordanBlock] = []
    columns: list[FloatArray] = []

    if not cluster.is_real:
        for chain in chains:
            vectors = [Z @ c for c in chain]
            columns.extend(part for w in vectors for part in (w.real, w.imag))
            blocks.append(
                JordanBlock(
                    kind=BlockKind.COMPLEX,
                    size=2 * len(chain),
                    a=cluster.value.real,
                    b=cluster.value.imag,
                    superdiagonal=(1,) * (len(chain) - 1),
                )
            )
        return blocks, columns

    simple = [chain[0] for chain in chains if len(chain) == 1]
    if cluster.value == 0 and simple:
        columns.extend(np.real(Z @ c) for c in simple)
        blocks.append(JordanBlock(kind=BlockKind.ZERO, size=len(simple)))
        chains = [chain for chain in chains if len(chain) > 1]
    for chain in chains:
        columns.extend(np.real(Z @ c) for c in chain)
        blocks.append(
            JordanBlock(
                kind=BlockKind.REAL, size=len(chain), a=cluster.value.real, superdiagonal=(1,) * (len(chain) - 1)
            )
        )
    return blocks, columns


def _certify(
    M: FloatArray,  # noqa: N803
    blocks: list[JordanBlock],
    V: FloatArray,  # noqa: N803
    tol: ToleranceSettings,
) -> SpectralInfo:
    try:
        V_inv = np.linalg.inv(V)  # noqa: N806
    except np.linalg.LinAlgError as e:
        raise SpectralDecompositionError("Change of basis V is singular", np.inf) from e
    absolute = float(np.max(np.abs(V @ assemble_jordan(blocks) @ V_inv - M), initial=0.0))
    norm = float(np.max(np.sum(np.abs(M), axis=1), initial=0.0))
    residual = absolute / norm if norm > 0 else absolute
    if not np.isfinite(residual) or residual > tol.recon:
        logger.warning("Rejected real Jordan decomposition with relative residual %.3e", residual)
        raise SpectralDecompositionError("Real Jordan decomposition does not reconstruct the matrix", residual)
    condition = float(np.linalg.cond(V))
    if condition > 1 / tol.recon:
        logger.warning("Rejected real Jordan decomposition with condition number %.3e", condition)
        raise SpectralDecompositionError(f"Change of basis V is ill-conditioned (condition number {condition:.3e})", residual)
    eigenvalues = tuple(value for block in blocks for value in block.eigenvalues)
    return SpectralInfo(eigenvalues=eigenvalues, blocks=tuple(blocks), V=V, V_inv=V_inv, residual=residual)


def spectral(
    M: Any,  # noqa: N803
    tau_cluster: float | None = None,
    *,
    tolerances: ToleranceSettings | None = None,
    override: JordanOverride | None = None,
) -> SpectralInfo:
    """Real Jordan decomposition M = V J V^-1.

    Eigenvalues within the cluster tolerance are treated as equal. Each cluster is isolated by a
    reordered Schur decomposition and its chains are read off the kernels of powers of the
    nilpotent restriction. Clusters split by rounding around a defective eigenvalue are merged
    first. The result is accepted only if it reconstructs M within ``tol.recon`` and V has a
    condition number of at most 1 / ``tol.recon``.

    Args:
        M: Real square matrix with finite entries
        tau_cluster: Relative clustering tolerance, defaults to ``tol.cluster``
        tolerances: Tolerance set, defaults to the configured one
        override: Exact block structure and V, bypassing numerical detection

    Raises:
        NonFiniteInputError: If M has NaN or infinite entries
        SpectralDecompositionError: If the decomposition cannot be certified
    """
    matrix = as_finite_matrix(M)
    tol = tolerances or settings.tol
    if tau_cluster is not None:
        tol = tol.model_copy(update={"cluster": tau_cluster})

    if override is not None:
        if override.V.shape != matrix.shape:
            raise SpectralDecompositionError(f"Override V has shape {override.V.shape}, expected {matrix.shape}", np.inf)
        return _certify(matrix, list(override.blocks), np.asarray(override.V), tol)

    if matrix.size == 0:
        return SpectralInfo(eigenvalues=(), blocks=(), V=np.zeros((0, 0)), V_inv=np.zeros((0, 0)))

    tau = cluster_tolerance(matrix, tol)
    scale = max(float(np.linalg.norm(matrix, 2)), 1.0)
    clusters = matrix_clusters(matrix, tol)
    conjugates = [c for c in clusters if c.value.imag < 0]
    blocks: list[JordanBlock] = []
    columns: list[FloatArray] = []
    for cluster in clusters:
        if cluster.value.imag < 0:
            continue
        if cluster.value.imag > 0 and not any(
            abs(c.value - cluster.value.conjugate()) <= max(tau, cluster.radius) and c.multiplicity == cluster.multiplicity
            for c in conjugates
        ):
            raise SpectralDecompositionError(f"Eigenvalue {cluster.value} has no matching conjugate", np.inf)
        cluster_blocks, cluster_columns = _cluster_blocks(matrix, cluster, tol, tau, scale)
        for block in cluster_blocks:
            blocks.append(block.model_copy(update={"start": len(columns)}))
            columns.extend(cluster_columns[: block.size])
            cluster_columns = cluster_columns[block.size :]

    if len(columns) != matrix.shape[0]:
        raise SpectralDecompositionError(f"Found {len(columns)} basis vectors for a space of dimension {matrix.shape[0]}", np.inf)
    return _certify(matrix, blocks, np.column_stack(columns), tol)
