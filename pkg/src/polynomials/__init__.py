from src.polynomials.basis import (
    MonomialBasis,
    basis_indices,
    eval_basis,
    from_coordinates,
    multiply,
    to_coordinates,
)
from src.polynomials.polynomial import MultiIndex, Polynomial, Term

__all__: list[str] = [
    "MonomialBasis",
    "MultiIndex",
    "Polynomial",
    "Term",
    "basis_indices",
    "eval_basis",
    "from_coordinates",
    "multiply",
    "to_coordinates",
]
