from typing import Any

import numpy as np

from src.core.settings import ToleranceSettings, settings
from src.linalg import as_finite_matrix, cluster_tolerance, matrix_clusters, rank
from src.schemas import EigenRow, FloatArray, GeneratorMatrix


def generator_array(G: GeneratorMatrix | Any) -> FloatArray:  # noqa: N803
    return as_finite_matrix(G.G if isinstance(G, GeneratorMatrix) else G)


def _nullity(B: Any, tol: ToleranceSettings) -> int:  # noqa: N803
    singular_values = np.linalg.svd(B, compute_uv=False)
    threshold = tol.rank * max(float(singular_values[0]) if singular_values.size else 0.0, 1.0)
    return int(np.sum(singular_values <= threshold))


def eigen_table(G: GeneratorMatrix | Any, tolerances: ToleranceSettings | None = None) -> list[EigenRow]:  # noqa: N803
    """Eigenvalue clusters of G with algebraic and geometric multiplicities."""
    tol = tolerances or settings.tol
    matrix = generator_array(G)
    identity = np.eye(matrix.shape[0])
    return [
        EigenRow(
            value=cluster.value,
            algebraic=cluster.multiplicity,
            geometric=_nullity(matrix - cluster.value * identity, tol),
        )
        for cluster in matrix_clusters(matrix, tol)
    ]


def a1_violations(G: GeneratorMatrix | Any, tolerances: ToleranceSettings | None = None) -> list[str]:  # noqa: N803
    """Reasons Assumption A1 fails; empty when it holds."""
    tol = tolerances or settings.tol
    matrix = generator_array(G)
    tau = cluster_tolerance(matrix, tol)
    reasons = [
        f"eigenvalue {cluster.value:.6g} does not have negative real part"
        for cluster in matrix_clusters(matrix, tol)
        if cluster.value != 0 and cluster.value.real >= -tau
    ]
    if rank(matrix, tol.rank) != rank(matrix @ matrix, tol.rank):
        reasons.append("eigenvalue 0 has algebraic multiplicity larger than its geometric multiplicity")
    return reasons


def check_A1(G: GeneratorMatrix | Any, tolerances: ToleranceSettings | None = None) -> bool:  # noqa: N802, N803
    """Nonzero eigenvalues lie in the open left half plane and 0 is semisimple."""
    return not a1_violations(G, tolerances)


def zero_multiplicity(G: GeneratorMatrix | Any, tolerances: ToleranceSettings | None = None) -> int:  # noqa: N803
    tol = tolerances or settings.tol
    return sum(cluster.multiplicity for cluster in matrix_clusters(generator_array(G), tol) if cluster.value == 0)


def check_A2(G: GeneratorMatrix | Any, tolerances: ToleranceSettings | None = None) -> bool:  # noqa: N802, N803
    """A1 holds and 0 is a simple eigenvalue."""
    return check_A1(G, tolerances) and zero_multiplicity(G, tolerances) == 1
