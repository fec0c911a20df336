from typing import Any

from collections.abc import Sequence

import numpy as np

from src.core.exceptions import DegreeOverflowError, NegativeTimeError
from src.linalg import expm
from src.polynomials import Polynomial, eval_basis, from_coordinates, to_coordinates
from src.schemas import FloatArray, GeneratorMatrix


def _check_time(t: float) -> None:
    if t < 0:
        raise NegativeTimeError(f"Time must be nonnegative, got {t}")


def propagate(G: GeneratorMatrix, coordinates: FloatArray, t: float) -> FloatArray:  # noqa: N803
    """Coordinates of x -> E_x[p(X_t)] given the coordinates of p."""
    _check_time(t)
    return expm(t * G.G) @ coordinates


def moment(G: GeneratorMatrix, x: Any, p: Polynomial, t: float) -> float:  # noqa: N803
    """E_x[p(X_t)] = H_n(x)^T exp(tG) p."""
    return float(eval_basis(x, G.basis) @ propagate(G, to_coordinates(p, G.basis), t))


def multi_time_moment(G: GeneratorMatrix, x: Any, schedule: Sequence[tuple[float, Polynomial]]) -> float:  # noqa: N803
    """E_x[p_1(X_{t_1}) ... p_l(X_{t_l})] by backward recursion over the schedule.

    Raises:
        DegreeOverflowError: If an intermediate product leaves Pol_n; the message names the step
        NegativeTimeError: If a time is negative
        ValueError: If the schedule is empty or times are not ascending
    """
    if not schedule:
        raise ValueError("Schedule must not be empty")
    times = [t for t, _ in schedule]
    if any(later < earlier for earlier, later in zip(times, times[1:], strict=False)):
        raise ValueError(f"Schedule times must be ascending, got {times}")
    _check_time(times[0])

    coordinates = to_coordinates(schedule[-1][1], G.basis)
    for step in range(len(schedule) - 2, -1, -1):
        t, p = schedule[step]
        conditional = from_coordinates(propagate(G, coordinates, times[step + 1] - t), G.basis)
        product = p * conditional
        if product.degree > G.n:
            raise DegreeOverflowError(
                f"Product at step {step + 1} (t={t}) has degree {product.degree}, exceeding n={G.n}"
            )
        coordinates = to_coordinates(product, G.basis)
    return float(eval_basis(x, G.basis) @ propagate(G, coordinates, times[0]))


def moment_curve(G: GeneratorMatrix, x: Any, t: float) -> FloatArray:  # noqa: N803
    """E_x[H_n(X_t)] = exp(tG^T) H_n(x)."""
    return np.asarray(eval_basis(x, G.basis) @ expm(t * G.G))
