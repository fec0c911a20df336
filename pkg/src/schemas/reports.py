from pydantic import BaseModel, Field

from src.polynomials import MonomialBasis
from src.schemas.mixins import Matrix, Vector
from src.schemas.moments import EigenRow
from src.schemas.rules import CTRule


class GeneratorReport(BaseModel):
    G: Matrix = Field(..., description="Generator matrix in the graded-lex monomial basis")
    basis: MonomialBasis = Field(..., description="Basis of Pol_n")
    polynomial_property: bool = Field(..., description="Degree bounds hold up to n")


class MomentCurveReport(BaseModel):
    """E_x[H_n(X_t)] at each requested time, one row per time."""

    x: Vector = Field(..., description="Starting point")
    times: Vector = Field(..., description="Times")
    curve: Matrix = Field(..., description="len(times) x N_n moment vectors")


class ScanReport(BaseModel):
    size: int = Field(..., ge=1, description="Point set size")
    rules: list[CTRule] = Field(default_factory=list, description="Feasible rules in scan order")


class Refusal(BaseModel):
    """Honest negative of an operation whose assumption fails."""

    message: str = Field(..., description="Reason of the refusal")
    eigenvalues: list[EigenRow] = Field(default_factory=list, description="Eigenvalue table of G")
