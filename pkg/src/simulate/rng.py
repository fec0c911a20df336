from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Chunk:
    """Contiguous slice of paths driven by one random stream."""

    index: int
    start: int
    stop: int

    @property
    def size(self) -> int:
        return self.stop - self.start


def chunks(n_paths: int, chunk_size: int) -> Iterator[Chunk]:
    for index, start in enumerate(range(0, n_paths, chunk_size)):
        yield Chunk(index=index, start=start, stop=min(start + chunk_size, n_paths))


def chunk_generator(seed: int, chunk: Chunk) -> np.random.Generator:
    """Counter-based stream keyed by (seed, chunk index); independent of the thread running it."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk.index,))))


def observation_steps(times: tuple[float, ...], step: float) -> list[int]:
    return [round(t / step) for t in times]
