from typing import Self

from pydantic import Field, model_validator

from src.schemas.mixins import FrozenModel, Matrix, Vector
from src.schemas.spectral import SpectralInfo


class EigenRow(FrozenModel):
    """Eigenvalue cluster of a generator matrix."""

    value: complex = Field(..., description="Cluster representative")
    algebraic: int = Field(..., ge=1, description="Number of eigenvalues in the cluster")
    geometric: int = Field(..., ge=0, description="Dimension of the eigenspace")


class AsymptoticMoments(FrozenModel):
    a1_holds: bool = Field(..., description="Moments converge for every starting point")
    a2_holds: bool = Field(..., description="Limits do not depend on the starting point")
    limit_matrix: Matrix | None = Field(default=None, description="lim exp(tG), present iff A1 holds")
    mu: Vector | None = Field(default=None, description="Asymptotic moments, present iff A2 holds")
    eigenvalues: tuple[EigenRow, ...] = Field(default=(), description="Eigenvalue table of G")
    diagnostic: tuple[str, ...] = Field(default=(), description="Reasons an assumption fails")
    eigen_summary: SpectralInfo | None = Field(default=None, description="Spectral data behind the limit")

    @model_validator(mode="after")
    def validate_flags(self) -> Self:
        if self.a2_holds and not self.a1_holds:
            raise ValueError("A2 implies A1")
        if self.a1_holds != (self.limit_matrix is not None):
            raise ValueError("limit_matrix is present exactly when A1 holds")
        if self.a2_holds != (self.mu is not None):
            raise ValueError("mu is present exactly when A2 holds")
        return self
