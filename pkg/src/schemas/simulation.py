import csv

from pathlib import Path

import numpy as np

from pydantic import BaseModel, Field, computed_field, model_validator

from src.core.settings import settings
from src.polynomials import Polynomial
from src.schemas.enums import EnsembleKind, Scheme
from src.schemas.mixins import FloatArray, FrozenModel, Tensor, Vector


class SimConfig(BaseModel):
    n_paths: int = Field(default_factory=lambda: settings.simulation.n_paths, ge=1, description="Number of paths")
    dt: float = Field(default_factory=lambda: settings.simulation.dt, gt=0, description="SDE step")
    horizon: float = Field(default_factory=lambda: settings.simulation.horizon, gt=0, description="Horizon T")
    seed: int = Field(default_factory=lambda: settings.simulation.seed, ge=0, lt=2**64, description="Root seed")
    scheme: Scheme = Field(default=Scheme.EULER, description="Discretization scheme")
    chunk_size: int = Field(default_factory=lambda: settings.simulation.chunk_size, ge=1, description="Paths per stream")
    times: tuple[float, ...] | None = Field(default=None, description="Observation times, default (0, T)")

    @model_validator(mode="after")
    def validate_times(self) -> "SimConfig":
        if self.times is not None:
            if any(t < 0 or t > self.horizon for t in self.times):
                raise ValueError("Observation times must lie in [0, horizon]")
            if list(self.times) != sorted(self.times):
                raise ValueError("Observation times must be ascending")
        return self

    @property
    def observation_times(self) -> tuple[float, ...]:
        return self.times if self.times is not None else (0.0, self.horizon)


class PathEnsemble(FrozenModel):
    """States of independent paths recorded at the observation times."""

    kind: EnsembleKind = Field(..., description="Process that produced the paths")
    times: Vector = Field(..., description="Observation times")
    states: Tensor = Field(..., description="paths x times x d array of observed states")
    valid: Tensor = Field(..., description="1.0 for paths kept, 0.0 for excluded ones")
    excluded: int = Field(default=0, ge=0, description="Paths dropped after a non-finite state")
    clipped: int = Field(default=0, ge=0, description="Steps where a(x) had to be clipped to PSD")

    @property
    def n_paths(self) -> int:
        return int(self.states.shape[0])

    def at(self, t: float) -> FloatArray:
        """Kept states at the observation time closest to t."""
        column = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[column] - t) > 1e-9 * (1.0 + abs(t)):
            raise ValueError(f"Time {t} is not an observation time of the ensemble")
        return self.states[self.valid > 0, column, :]


class MomentTarget(FrozenModel):
    p: Polynomial = Field(..., description="Test polynomial")
    t: float = Field(..., ge=0, description="Observation time")
    label: str = Field(default="", description="Row label in reports")


class TargetReport(BaseModel):
    label: str = Field(..., description="Target label")
    t: float = Field(..., description="Observation time")
    mc_estimate: float = Field(..., description="Monte Carlo mean")
    closed_form: float = Field(..., description="Reference value")
    std_error: float = Field(..., ge=0, description="Standard error of the difference")
    z_score: float = Field(..., description="(mc - reference) / std_error")
    passed: bool = Field(..., description="|z| <= z_crit")


class SimReport(BaseModel):
    rows: list[TargetReport] = Field(default_factory=list, description="One row per target")
    z_crit: float = Field(..., gt=0, description="Critical absolute z-score")
    excluded: int = Field(default=0, ge=0, description="Paths dropped from the ensembles")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_csv(self, path: str | Path) -> None:
        fields = list(TargetReport.model_fields)
        with Path(path).open("w", newline="", encoding="utf-8") as file:
            writer = csv.DictWriter(file, fieldnames=fields)
            writer.writeheader()
            for row in self.rows:
                writer.writerow(row.model_dump())
