from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.settings import settings
from src.polynomials import MonomialBasis, Polynomial, basis_indices
from src.schemas.mixins import FrozenModel, Matrix


class ProcessSpec(BaseModel):
    """Polynomial diffusion on E ⊆ R^d given by its drift b and diffusion matrix a.

    Only the structure is validated here: shapes, dimensions and symmetry of ``a``.
    Degree bounds are the subject of ``check_polynomial_property`` and ``build_G``.
    """

    d: int = Field(..., ge=1, description="Dimension of the state space")
    drift: tuple[Polynomial, ...] = Field(..., description="Drift vector b, one polynomial per coordinate")
    diffusion: tuple[tuple[Polynomial, ...], ...] = Field(..., description="Symmetric diffusion matrix a")
    constraints: tuple[Polynomial, ...] = Field(default=(), description="E = {x : q(x) >= 0 for every q}")
    box: tuple[tuple[float, float], ...] | None = Field(default=None, description="Sampling box, one (lo, hi) per axis")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_structure(self) -> Self:
        if len(self.drift) != self.d:
            raise ValueError(f"Drift must have {self.d} components, got {len(self.drift)}")
        if len(self.diffusion) != self.d or any(len(row) != self.d for row in self.diffusion):
            raise ValueError(f"Diffusion must be a {self.d}x{self.d} matrix")
        polynomials = [*self.drift, *self.constraints, *(p for row in self.diffusion for p in row)]
        if any(p.d != self.d for p in polynomials):
            raise ValueError(f"All coefficients must be polynomials on R^{self.d}")
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if self.diffusion[i][j] != self.diffusion[j][i]:
                    raise ValueError(f"Diffusion is not symmetric at ({i}, {j})")
        if self.box is not None:
            if len(self.box) != self.d:
                raise ValueError(f"Box must have {self.d} intervals")
            if any(lo >= hi for lo, hi in self.box):
                raise ValueError("Box intervals must satisfy lo < hi")
        return self

    @property
    def bounding_box(self) -> tuple[tuple[float, float], ...]:
        if self.box is not None:
            return self.box
        half_width = settings.sampling.box
        return ((-half_width, half_width),) * self.d


class GeneratorMatrix(FrozenModel):
    """Matrix of the generator restricted to Pol_n; column k holds the coordinates of 𝒢h_k."""

    n: int = Field(..., ge=0, description="Degree of the polynomial space")
    basis: MonomialBasis = Field(..., description="Monomial basis of Pol_n")
    G: Matrix = Field(..., description="N_n x N_n generator matrix")

    @model_validator(mode="after")
    def validate_shape(self) -> Self:
        if self.G.shape != (self.basis.size, self.basis.size):
            raise ValueError(f"G must be {self.basis.size}x{self.basis.size}, got {self.G.shape}")
        if self.basis.n != self.n:
            raise ValueError("Basis degree does not match n")
        return self

    @property
    def size(self) -> int:
        return self.basis.size

    def leading(self, k: int) -> "GeneratorMatrix":
        """Restriction to Pol_k for k <= n (leading N_k x N_k block)."""
        size = self.basis.leading(k)
        return GeneratorMatrix(n=k, basis=basis_indices(self.basis.d, k), G=self.G[:size, :size])


class SpecValidation(BaseModel):
    """Soft validity report of a process specification."""

    samples: int = Field(..., ge=0, description="Accepted state space samples")
    min_eigenvalue: float = Field(..., description="Smallest eigenvalue of a(x) seen over the samples")
    psd_violations: int = Field(default=0, ge=0, description="Samples where a(x) is not PSD")
    carre_du_champ_violations: int = Field(default=0, ge=0, description="Samples where Γx_i < 0")
    warnings: list[str] = Field(default_factory=list, description="Human readable findings")

    @property
    def ok(self) -> bool:
        return not self.warnings
