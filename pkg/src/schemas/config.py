from typing import Any

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.settings import ToleranceSettings, settings
from src.schemas.enums import ValidationReference
from src.schemas.process import ProcessSpec
from src.schemas.spectral import JordanOverride

TOLERANCE_PREFIX = "tol."


class TargetConfig(BaseModel):
    """Moment target of the validate subcommand: monomial exponent and time."""

    alpha: tuple[int, ...] = Field(..., description="Exponent of the monomial x^alpha")
    t: float = Field(..., ge=0, description="Observation time")


class RunConfig(BaseModel):
    """Single JSON run configuration shared by all subcommands."""

    process: ProcessSpec = Field(..., description="Polynomial diffusion")
    n: int = Field(..., ge=1, description="Degree of the polynomial space")
    tolerances: dict[str, float] = Field(default_factory=dict, description="Overrides keyed as tol.<name>")
    points: list[list[float]] | None = Field(default=None, description="Support points for check-ct and discrete")
    output: Path | None = Field(default=None, description="Output file; stdout when absent")
    seed: int = Field(default_factory=lambda: settings.simulation.seed, ge=0, description="Root seed")
    x: list[float] | None = Field(default=None, description="Starting point of the moments subcommand")
    times: list[float] = Field(default_factory=lambda: [0.1, 1.0, 10.0], description="Verification times")
    gauss_points: int | None = Field(default=None, ge=1, description="Number of Gauss points for discrete")
    delta_init: float | None = Field(default=None, gt=0, description="First trial time step")
    jordan: JordanOverride | None = Field(default=None, description="Exact Jordan structure of G^T")
    grid: list[list[float]] | None = Field(default=None, description="Candidate points of scan-ct")
    size: int | None = Field(default=None, ge=1, description="Point set size of scan-ct")
    limit: int = Field(default=10, ge=1, description="Maximal number of scan-ct results")
    targets: list[TargetConfig] = Field(default_factory=list, description="Targets of the validate subcommand")
    start_index: int = Field(default=0, ge=0, description="Starting state of chain simulations")
    reference: ValidationReference = Field(
        default=ValidationReference.CLOSED_FORM, description="Compare validate paths with closed forms or Euler paths"
    )
    dt: float | None = Field(default=None, gt=0, description="Euler step of SDE ensembles")

    model_config = ConfigDict(extra="forbid")

    @field_validator("tolerances")
    @classmethod
    def validate_tolerance_keys(cls, tolerances: dict[str, float]) -> dict[str, float]:
        known = {TOLERANCE_PREFIX + name for name in ToleranceSettings.model_fields}
        unknown = sorted(set(tolerances) - known)
        if unknown:
            raise ValueError(f"Unknown tolerance keys {unknown}; expected a subset of {sorted(known)}")
        if any(value <= 0 for value in tolerances.values()):
            raise ValueError("Tolerances must be positive")
        return tolerances

    def tolerance_settings(self) -> ToleranceSettings:
        updates: dict[str, Any] = {key.removeprefix(TOLERANCE_PREFIX): value for key, value in self.tolerances.items()}
        return settings.tol.model_copy(update=updates)
