from typing import Any

import numpy as np

from src.core.exceptions import InvalidRateMatrixError, InvalidStochasticMatrixError
from src.cubature_ct import as_points
from src.helpers import parallel_map
from src.schemas import (
    EnsembleKind,
    FloatArray,
    PathEnsemble,
    SimConfig,
    rate_matrix_defect,
)
from src.schemas.rules import RATE_ROW_TOLERANCE, STOCHASTIC_ROW_TOLERANCE
from src.simulate.rng import Chunk, chunk_generator, chunks


def _square(matrix: Any, error: type[Exception]) -> FloatArray:
    array = np.asarray(matrix, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:  # noqa: PLR2004
        raise error(f"Expected a non-empty square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise error("Matrix has non-finite entries")
    return array


def check_rate_matrix(L: Any) -> FloatArray:  # noqa: N803
    rates = _square(L, InvalidRateMatrixError)
    defect = rate_matrix_defect(rates)
    if defect > RATE_ROW_TOLERANCE:
        raise InvalidRateMatrixError(f"Not a rate matrix, defect {defect:.3e}")
    return rates


def check_stochastic_matrix(Q: Any) -> FloatArray:  # noqa: N803
    matrix = _square(Q, InvalidStochasticMatrixError)
    if np.any(matrix < 0) or np.max(np.abs(matrix.sum(axis=1) - 1.0)) > STOCHASTIC_ROW_TOLERANCE:
        raise InvalidStochasticMatrixError("Matrix is not row-stochastic")
    return matrix


def _support(points: Any) -> FloatArray:
    array = np.asarray(points, dtype=float)
    return as_points(array, 1) if array.ndim == 1 else array


def _categorical(cumulative: FloatArray, state: FloatArray, u: FloatArray) -> Any:
    rows = cumulative[state]
    return np.minimum(np.sum(rows < u[:, np.newaxis], axis=1), cumulative.shape[1] - 1)


def _ctmc_chunk(rates: FloatArray, start: int, times: tuple[float, ...], seed: int, chunk: Chunk) -> Any:
    rng = chunk_generator(seed, chunk)
    exit_rates = -np.diag(rates)
    jumps = np.where(exit_rates[:, np.newaxis] > 0, rates / np.where(exit_rates > 0, exit_rates, 1.0)[:, np.newaxis], 0.0)
    np.fill_diagonal(jumps, 0.0)
    cumulative = np.cumsum(jumps, axis=1)

    def holding(state: Any) -> Any:
        rate = exit_rates[state]
        draws = rng.standard_exponential(state.size)
        return np.where(rate > 0, draws / np.where(rate > 0, rate, 1.0), np.inf)

    state = np.full(chunk.size, start)
    next_jump = holding(state)
    recorded = np.empty((chunk.size, len(times)), dtype=int)
    for column, t in enumerate(times):
        while True:
            moving = np.flatnonzero(next_jump <= t)
            if moving.size == 0:
                break
            state[moving] = _categorical(cumulative, state[moving], rng.random(moving.size))
            next_jump[moving] += holding(state[moving])
        recorded[:, column] = state
    return recorded


def simulate_ctmc(L: Any, points: Any, start_index: int, cfg: SimConfig) -> PathEnsemble:  # noqa: N803
    """Paths of the chain with rate matrix L over the given points.

    Holding times are exponential with rate -L_ii and jumps go to j with probability
    L_ij / (-L_ii). States with a zero row are absorbing.

    Raises:
        InvalidRateMatrixError: If L is not a rate matrix
    """
    rates = check_rate_matrix(L)
    support = _support(points)
    if support.shape[0] != rates.shape[0] or not 0 <= start_index < rates.shape[0]:
        raise InvalidRateMatrixError(f"{rates.shape[0]} states for {support.shape[0]} points, start {start_index}")
    times = cfg.observation_times
    indices = np.concatenate(
        parallel_map(lambda chunk: _ctmc_chunk(rates, start_index, times, cfg.seed, chunk), list(chunks(cfg.n_paths, cfg.chunk_size)))
    )
    return PathEnsemble(kind=EnsembleKind.CTMC, times=np.array(times), states=support[indices], valid=np.ones(cfg.n_paths))


def _dtmc_chunk(cumulative: FloatArray, start: int, steps: int, seed: int, chunk: Chunk) -> Any:
    rng = chunk_generator(seed, chunk)
    recorded = np.empty((chunk.size, steps + 1), dtype=int)
    recorded[:, 0] = start
    for step in range(1, steps + 1):
        recorded[:, step] = _categorical(cumulative, recorded[:, step - 1], rng.random(chunk.size))
    return recorded


def simulate_dtmc(
    Q: Any, points: Any, start_index: int, steps: int, cfg: SimConfig, delta: float = 1.0  # noqa: N803
) -> PathEnsemble:
    """Paths of the chain with transition matrix Q, observed at times lΔ for l = 0..steps.

    Raises:
        InvalidStochasticMatrixError: If Q is not row-stochastic
    """
    matrix = check_stochastic_matrix(Q)
    support = _support(points)
    if support.shape[0] != matrix.shape[0] or not 0 <= start_index < matrix.shape[0]:
        raise InvalidStochasticMatrixError(f"{matrix.shape[0]} states for {support.shape[0]} points, start {start_index}")
    if steps < 0 or delta <= 0:
        raise ValueError("Expected steps >= 0 and delta > 0")
    cumulative = np.cumsum(matrix, axis=1)
    indices = np.concatenate(
        parallel_map(lambda chunk: _dtmc_chunk(cumulative, start_index, steps, cfg.seed, chunk), list(chunks(cfg.n_paths, cfg.chunk_size)))
    )
    return PathEnsemble(
        kind=EnsembleKind.DTMC, times=delta * np.arange(steps + 1), states=support[indices], valid=np.ones(cfg.n_paths)
    )
