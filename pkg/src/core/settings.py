from pathlib import Path

from dotenv import find_dotenv, load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv(find_dotenv(usecwd=True))


class DefaultSettings(BaseSettings):
    """Class to store default project settings."""

    root_path: Path = Path().cwd().resolve()

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")


class ToleranceSettings(DefaultSettings):
    """Numerical tolerances shared by the spectral, cone and cubature kernels."""

    cluster: float = Field(default=1e-8, gt=0, description="Eigenvalue clustering, relative to the 2-norm")
    rank: float = Field(default=1e-10, gt=0, description="Singular value cut-off, relative to the largest one")
    recon: float = Field(default=1e-6, gt=0, description="Accepted Jordan reconstruction residual, relative")
    cone: float = Field(default=1e-9, gt=0, description="Cone membership residual bound")
    lift: float = Field(default=1e-8, gt=0, description="Lifted rule residual, relative to 1 + |G|")
    dt: float = Field(default=1e-8, gt=0, description="Discrete rule residual bound")
    a3: float = Field(default=1e-9, gt=0, description="Static cubature moment residual, relative to 1 + |mu|")
    positive: float = Field(default=1e-6, gt=0, description="Smallest entry counted as strictly positive")
    spread: float = Field(default=1e-8, gt=0, description="Accepted spread of sampled asymptotic moments")
    row_sum: float = Field(default=1e-8, gt=0, description="Accepted row-sum deviation of stochastic matrices")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_TOL_")


class SamplingSettings(DefaultSettings):
    """State space sampling used by the soft validity checks."""

    box: float = Field(default=5.0, gt=0, description="Half-width of the default bounding box")
    samples: int = Field(default=200, ge=1, description="Number of accepted samples")
    max_attempts: int = Field(default=100_000, ge=1, description="Rejection sampling attempts cap")
    seed: int = Field(default=0, ge=0, description="Sampling seed")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_SAMPLING_")


class LiftSettings(DefaultSettings):
    """Lifted rule construction parameters."""

    max_doublings: int = Field(default=40, ge=0, description="Outer polygon radius doublings cap")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_LIFT_")


class DiscreteSettings(DefaultSettings):
    """Time step search parameters."""

    delta_init: float = Field(default=0.01, gt=0, description="First trial time step")
    max_doublings: int = Field(default=60, ge=1, description="Time step doublings cap")
    bisection_tol: float = Field(default=1e-3, gt=0, description="Bisection tolerance in the time step")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_DT_")


class SimulationSettings(DefaultSettings):
    """Monte Carlo defaults."""

    n_paths: int = Field(default=100_000, ge=1, description="Number of paths")
    dt: float = Field(default=1e-3, gt=0, description="Euler step")
    horizon: float = Field(default=1.0, gt=0, description="Simulation horizon")
    seed: int = Field(default=7, ge=0, description="Root seed")
    z_crit: float = Field(default=3.5, gt=0, description="Critical absolute z-score")
    chunk_size: int = Field(default=4096, ge=1, description="Paths per random stream")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_SIM_")


class RuntimeSettings(DefaultSettings):
    """Runtime parameters."""

    threads: int = Field(default=1, ge=1, description="Worker threads for independent work items")
    log_level: str = Field(default="INFO", description="Log level of the package loggers")

    model_config = SettingsConfigDict(env_prefix="POLYCUBE_")


class Settings(BaseSettings):
    tol: ToleranceSettings = ToleranceSettings()
    sampling: SamplingSettings = SamplingSettings()
    lift: LiftSettings = LiftSettings()
    discrete: DiscreteSettings = DiscreteSettings()
    simulation: SimulationSettings = SimulationSettings()
    runtime: RuntimeSettings = RuntimeSettings()


settings = Settings()
