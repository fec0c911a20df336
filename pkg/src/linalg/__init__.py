from src.linalg.cone import cone_membership, nonnegative_solve
from src.linalg.kernels import as_finite_matrix, expm, rank
from src.linalg.spectral import (
    Cluster,
    cluster_eigenvalues,
    cluster_tolerance,
    jordan_chains,
    matrix_clusters,
    merge_defective,
    spectral,
)

__all__: list[str] = [
    "Cluster",
    "as_finite_matrix",
    "cluster_eigenvalues",
    "cluster_tolerance",
    "cone_membership",
    "expm",
    "jordan_chains",
    "matrix_clusters",
    "merge_defective",
    "nonnegative_solve",
    "rank",
    "spectral",
]
