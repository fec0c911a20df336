from src.simulate.chains import check_rate_matrix, check_stochastic_matrix, simulate_ctmc, simulate_dtmc
from src.simulate.compare import Reference, compare_moments
from src.simulate.rng import chunk_generator, chunks
from src.simulate.sde import psd_sqrt, simulate_sde

__all__: list[str] = [
    "Reference",
    "check_rate_matrix",
    "check_stochastic_matrix",
    "chunk_generator",
    "chunks",
    "compare_moments",
    "psd_sqrt",
    "simulate_ctmc",
    "simulate_dtmc",
    "simulate_sde",
]
