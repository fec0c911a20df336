from typing import Self

import numpy as np

from pydantic import Field, model_validator
from scipy.linalg import expm

from src.polynomials import MonomialBasis
from src.schemas.enums import Construction
from src.schemas.mixins import FloatArray, FrozenModel, Matrix, Vector

RATE_ROW_TOLERANCE = 1e-10
STOCHASTIC_ROW_TOLERANCE = 1e-8


def rate_matrix_defect(L: FloatArray) -> float:  # noqa: N803
    """Largest violation of the rate matrix conditions (off-diagonal >= 0, zero row sums)."""
    if L.size == 0:
        return 0.0
    off_diagonal = L - np.diag(np.diag(L))
    negative = float(np.max(np.maximum(-off_diagonal, 0.0)))
    scale = 1.0 + float(np.max(np.abs(L)))
    return max(negative, float(np.max(np.abs(L.sum(axis=1)))) / scale)


class CTRule(FrozenModel):
    """Continuous-time Markov cubature rule: points x_i and a rate matrix L with HG = LH."""

    points: Matrix = Field(..., description="M x d support points")
    basis: MonomialBasis = Field(..., description="Basis of Pol_n")
    n: int = Field(..., ge=0, description="Degree up to which moments are matched")
    L: Matrix = Field(..., description="M x M transition rate matrix")
    H: Matrix = Field(..., description="M x N_n matrix H_ij = h_j(x_i)")
    residual: float = Field(default=0.0, ge=0, description="Infinity norm of HG - LH")

    @model_validator(mode="after")
    def validate_rule(self) -> Self:
        m = self.points.shape[0]
        if self.n != self.basis.n:
            raise ValueError(f"Rule degree {self.n} does not match the basis degree {self.basis.n}")
        if self.L.shape != (m, m) or self.H.shape != (m, self.basis.size):
            raise ValueError("L must be M x M and H must be M x N_n")
        if rate_matrix_defect(self.L) > RATE_ROW_TOLERANCE:
            raise ValueError("L is not a transition rate matrix")
        return self

    def transition(self, t: float) -> FloatArray:
        return np.asarray(expm(t * self.L))


class CTCheck(FrozenModel):
    """Feasibility of the continuous-time conditions for a point set."""

    feasible: bool = Field(..., description="Every row lies in its difference cone")
    rule: CTRule | None = Field(default=None, description="Assembled rule when feasible")
    residuals: tuple[float, ...] = Field(..., description="Cone residual per point")
    infeasible_rows: tuple[int, ...] = Field(default=(), description="Points whose cone test failed")


class CTVerification(FrozenModel):
    times: tuple[float, ...] = Field(..., description="Checked times")
    residuals: tuple[float, ...] = Field(..., description="Infinity norm of H exp(tG) - exp(tL) H per time")
    stochastic_defects: tuple[float, ...] = Field(..., description="Deviation of exp(tL) from row-stochastic")
    max_residual: float = Field(..., ge=0)
    max_stochastic_defect: float = Field(..., ge=0)
    passed: bool = Field(..., description="All checks within tolerance")


class LiftedRule(FrozenModel):
    """Lifted Markov cubature rule on R^{N_n}: SG = LS with rank S = N_n."""

    S: Matrix = Field(..., description="R x N_n matrix whose rows are the lifted points")
    L: Matrix = Field(..., description="R x R transition rate matrix")
    provenance: tuple[str, ...] = Field(..., description="Block and construction of every row")
    residual: float = Field(default=0.0, ge=0, description="Infinity norm of SG - LS")

    @model_validator(mode="after")
    def validate_rule(self) -> Self:
        r = self.S.shape[0]
        if self.L.shape != (r, r) or len(self.provenance) != r:
            raise ValueError("L must be R x R with one provenance tag per row of S")
        if rate_matrix_defect(self.L) > RATE_ROW_TOLERANCE:
            raise ValueError("L is not a transition rate matrix")
        return self

    @property
    def size(self) -> int:
        return int(self.S.shape[0])

    def transition(self, t: float) -> FloatArray:
        return np.asarray(expm(t * self.L))


def provenance_tag(block_index: int, construction: Construction, vertex: int | str) -> str:
    return f"block {block_index}: {construction.value} {vertex}"


class LiftVerification(FrozenModel):
    residual: float = Field(..., ge=0, description="Infinity norm of SG - LS")
    rank: int = Field(..., ge=0, description="Rank of S")
    rank_ok: bool = Field(..., description="rank(S) = N_n")
    rate_matrix_ok: bool = Field(..., description="L is a transition rate matrix")
    times: tuple[float, ...] = Field(default=(), description="Times of the moment flow check")
    flow_residuals: tuple[float, ...] = Field(default=(), description="Infinity norm of exp(tL)S - S exp(tG)")
    passed: bool = Field(...)


class SignedMeasureRule(FrozenModel):
    """Signed measures over base points: S = S_tilde H and A S_tilde = I."""

    points: Matrix = Field(..., description="M x d base points")
    S_tilde: Matrix = Field(..., description="R x M signed weights")
    A: Matrix = Field(..., description="M x R left inverse of S_tilde")

    @model_validator(mode="after")
    def validate_shapes(self) -> Self:
        m = self.points.shape[0]
        r = self.S_tilde.shape[0]
        if self.S_tilde.shape != (r, m) or self.A.shape != (m, r):
            raise ValueError("S_tilde must be R x M and A must be M x R")
        return self


class StaticCubature(FrozenModel):
    """Positive weights w_i on points x_i reproducing a moment vector."""

    points: Matrix = Field(..., description="M x d points")
    weights: Vector = Field(..., description="Strictly positive weights")
    residual: float = Field(default=0.0, ge=0, description="Moment mismatch in the infinity norm")

    @model_validator(mode="after")
    def validate_weights(self) -> Self:
        if self.weights.shape != (self.points.shape[0],):
            raise ValueError("One weight per point is required")
        if np.any(self.weights <= 0):
            raise ValueError("Weights must be strictly positive")
        return self


class DTRule(FrozenModel):
    """Discrete-time Markov cubature rule on the grid {lΔ}: H exp(ΔG) = QH."""

    points: Matrix = Field(..., description="M x d support points")
    basis: MonomialBasis = Field(..., description="Basis of Pol_n")
    n: int = Field(..., ge=0, description="Degree up to which moments are matched")
    delta: float = Field(..., gt=0, description="Time step Δ")
    Q: Matrix = Field(..., description="M x M stochastic matrix")
    H: Matrix = Field(..., description="M x N_n matrix H_ij = h_j(x_i)")
    residual: float = Field(default=0.0, ge=0, description="Infinity norm of H exp(ΔG) - QH")

    @model_validator(mode="after")
    def validate_rule(self) -> Self:
        m = self.points.shape[0]
        if self.n != self.basis.n:
            raise ValueError(f"Rule degree {self.n} does not match the basis degree {self.basis.n}")
        if self.Q.shape != (m, m) or self.H.shape != (m, self.basis.size):
            raise ValueError("Q must be M x M and H must be M x N_n")
        if np.any(self.Q < 0) or np.max(np.abs(self.Q.sum(axis=1) - 1.0)) > STOCHASTIC_ROW_TOLERANCE:
            raise ValueError("Q is not row-stochastic")
        return self

    def transition(self, t: float) -> FloatArray:
        """Q^l for t = lΔ; t is rounded to the nearest grid point."""
        return np.linalg.matrix_power(self.Q, round(t / self.delta))


class DTVerification(FrozenModel):
    power_residuals: tuple[float, ...] = Field(..., description="Infinity norm of H exp(lΔG) - Q^l H for l = 1..")
    two_time_error: float = Field(..., ge=0, description="Chain versus moment formula at (Δ, 2Δ)")
    passed: bool = Field(...)
