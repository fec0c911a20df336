from typing import Any

import numpy as np

from src.core.exceptions import DimensionMismatchError
from src.core.logger import get_logger
from src.generator import diffusion_at
from src.helpers import parallel_map
from src.schemas import EnsembleKind, FloatArray, PathEnsemble, ProcessSpec, SimConfig
from src.simulate.rng import Chunk, chunk_generator, chunks, observation_steps

logger = get_logger(__name__)


def psd_sqrt(a: FloatArray) -> tuple[FloatArray, int]:
    """Symmetric square roots of a stack of matrices after clipping negative eigenvalues at 0.

    Returns the roots and the number of matrices that needed clipping.
    """
    if a.shape[-1] == 1:
        clipped = int(np.sum(a[:, 0, 0] < 0))
        return np.sqrt(np.maximum(a, 0.0)), clipped
    eigenvalues, vectors = np.linalg.eigh(a)
    clipped = int(np.sum(np.min(eigenvalues, axis=-1) < 0))
    roots = np.sqrt(np.maximum(eigenvalues, 0.0))
    return np.einsum("pik,pk,pjk->pij", vectors, roots, vectors), clipped


def drift_at(spec: ProcessSpec, points: FloatArray) -> FloatArray:
    return np.column_stack([b.evaluate(points) for b in spec.drift])


def _euler_chunk(spec: ProcessSpec, x0: FloatArray, cfg: SimConfig, chunk: Chunk) -> tuple[FloatArray, FloatArray, int]:
    rng = chunk_generator(cfg.seed, chunk)
    steps = max(round(cfg.horizon / cfg.dt), 1)
    h = cfg.horizon / steps
    records = observation_steps(cfg.observation_times, h)
    states = np.empty((chunk.size, len(records), spec.d))
    alive = np.ones(chunk.size, dtype=bool)
    x = np.tile(x0, (chunk.size, 1))
    clipped = 0

    for step in range(steps + 1):
        for column, record in enumerate(records):
            if record == step:
                states[:, column] = x
        if step == steps:
            break
        roots, count = psd_sqrt(diffusion_at(spec, x))
        clipped += count
        noise = rng.standard_normal((chunk.size, spec.d)) * np.sqrt(h)
        with np.errstate(over="ignore", invalid="ignore"):
            x = x + drift_at(spec, x) * h + np.einsum("pij,pj->pi", roots, noise)
        blown = ~np.all(np.isfinite(x), axis=1)
        if np.any(blown):
            alive &= ~blown
            x[blown] = 0.0
    return states, alive.astype(float), clipped


def simulate_sde(spec: ProcessSpec, x0: Any, cfg: SimConfig) -> PathEnsemble:
    """Euler-Maruyama paths of the diffusion started at x0.

    The diffusion factor is the symmetric PSD square root of a(x) with eigenvalues clipped at 0.
    Paths reaching a non-finite state are excluded and counted. Chunks of paths use their own
    random stream, so the ensemble depends on the seed only.
    """
    start = np.asarray(x0, dtype=float).reshape(-1)
    if start.size != spec.d:
        raise DimensionMismatchError(f"Start point has dimension {start.size}, process lives in R^{spec.d}")
    results = parallel_map(lambda chunk: _euler_chunk(spec, start, cfg, chunk), list(chunks(cfg.n_paths, cfg.chunk_size)))
    states = np.concatenate([states for states, _, _ in results])
    valid = np.concatenate([valid for _, valid, _ in results])
    excluded = int(np.sum(valid == 0))
    clipped = sum(count for _, _, count in results)
    if excluded:
        logger.warning("Excluded %d of %d paths after a non-finite state", excluded, cfg.n_paths)
    if clipped:
        logger.info("Clipped a(x) to PSD in %d steps", clipped)
    return PathEnsemble(
        kind=EnsembleKind.SDE,
        times=np.array(cfg.observation_times),
        states=states,
        valid=valid,
        excluded=excluded,
        clipped=clipped,
    )
