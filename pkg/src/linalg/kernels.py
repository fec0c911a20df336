from typing import Any

import numpy as np

from scipy import linalg

from src.core.exceptions import NonFiniteInputError
from src.core.settings import settings
from src.schemas import FloatArray


def as_finite_matrix(M: Any, *, square: bool = True) -> FloatArray:  # noqa: N803
    matrix = np.asarray(M, dtype=float)
    if matrix.ndim != 2 or (square and matrix.shape[0] != matrix.shape[1]):  # noqa: PLR2004
        raise ValueError(f"Expected a {'square ' if square else ''}matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteInputError("Matrix contains non-finite entries")
    return matrix


def expm(M: Any) -> FloatArray:  # noqa: N803
    """Matrix exponential by scaling and squaring with a degree 13 Padé approximant."""
    return np.asarray(linalg.expm(as_finite_matrix(M)), dtype=float)


def rank(M: Any, tau_rank: float | None = None) -> int:  # noqa: N803
    """Number of singular values above ``tau_rank`` times the largest one."""
    matrix = as_finite_matrix(M, square=False)
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values[0] == 0.0:
        return 0
    threshold = (tau_rank if tau_rank is not None else settings.tol.rank) * singular_values[0]
    return int(np.sum(singular_values > threshold))
