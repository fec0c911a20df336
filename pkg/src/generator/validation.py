import numpy as np

from src.core.logger import get_logger
from src.core.settings import settings
from src.generator.operator import carre_du_champ
from src.polynomials import Polynomial
from src.schemas import FloatArray, ProcessSpec, SpecValidation

logger = get_logger(__name__)


def sample_state_space(spec: ProcessSpec, count: int | None = None, seed: int | None = None) -> FloatArray:
    """Uniform rejection sample of E = {q >= 0} inside the bounding box.

    Returns fewer than ``count`` rows when the attempt cap is reached first.
    """
    count = count or settings.sampling.samples
    rng = np.random.default_rng(settings.sampling.seed if seed is None else seed)
    box = np.asarray(spec.bounding_box)
    accepted: list[FloatArray] = []
    found = attempts = 0
    while found < count and attempts < settings.sampling.max_attempts:
        batch = min(max(2 * (count - found), 16), settings.sampling.max_attempts - attempts)
        candidates = rng.uniform(box[:, 0], box[:, 1], size=(batch, spec.d))
        attempts += batch
        mask = np.ones(batch, dtype=bool)
        for q in spec.constraints:
            mask &= q.evaluate(candidates) >= 0
        accepted.append(candidates[mask])
        found += int(mask.sum())
    points = np.concatenate(accepted)[:count] if accepted else np.zeros((0, spec.d))
    if points.shape[0] < count:
        logger.warning("Only %d of %d state space samples accepted after %d attempts", points.shape[0], count, attempts)
    return points


def diffusion_at(spec: ProcessSpec, points: FloatArray) -> FloatArray:
    """a(x) for every row of ``points``, shape (count, d, d)."""
    values = np.empty((points.shape[0], spec.d, spec.d))
    for i in range(spec.d):
        for j in range(spec.d):
            values[:, i, j] = spec.diffusion[i][j].evaluate(points)
    return values


def validate_spec(spec: ProcessSpec, count: int | None = None, seed: int | None = None) -> SpecValidation:
    """Soft checks on sampled states: a(x) PSD and Γx_i >= 0. Findings are warnings, never errors."""
    points = sample_state_space(spec, count, seed)
    warnings: list[str] = []
    if points.shape[0] == 0:
        warnings.append("No state space sample satisfied the constraints")
        logger.warning(warnings[-1])
        return SpecValidation(samples=0, min_eigenvalue=0.0, warnings=warnings)

    a = diffusion_at(spec, points)
    eigenvalues = np.linalg.eigvalsh(a)
    scale = 1.0 + np.max(np.abs(a), axis=(1, 2))
    psd_violations = int(np.sum(eigenvalues[:, 0] < -settings.tol.cone * scale))
    if psd_violations:
        warnings.append(f"a(x) is not positive semidefinite at {psd_violations} sampled states")

    cdc_violations = 0
    for i in range(spec.d):
        gamma = carre_du_champ(spec, Polynomial.variable(spec.d, i)).evaluate(points)
        cdc_violations += int(np.sum(gamma < -settings.tol.cone * scale))
    if cdc_violations:
        warnings.append(f"Carré du champ of a coordinate is negative at {cdc_violations} sampled states")

    for message in warnings:
        logger.warning(message)
    return SpecValidation(
        samples=points.shape[0],
        min_eigenvalue=float(eigenvalues[:, 0].min()),
        psd_violations=psd_violations,
        carre_du_champ_violations=cdc_violations,
        warnings=warnings,
    )
