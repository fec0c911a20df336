from collections.abc import Sequence

import numpy as np

from src.core.exceptions import NegativeTimeError
from src.linalg import expm
from src.schemas import CTRule, CTVerification, GeneratorMatrix

RESIDUAL_TOLERANCE = 1e-7
STOCHASTIC_TOLERANCE = 1e-9


def verify_ct(rule: CTRule, G: GeneratorMatrix, times: Sequence[float]) -> CTVerification:  # noqa: N803
    """Check H exp(tG) = exp(tL) H and that exp(tL) is row-stochastic at the given times."""
    if any(t < 0 for t in times):
        raise NegativeTimeError("Verification times must be nonnegative")
    residuals: list[float] = []
    defects: list[float] = []
    for t in times:
        transition = expm(t * rule.L)
        residuals.append(float(np.max(np.abs(rule.H @ expm(t * G.G) - transition @ rule.H))))
        defects.append(
            max(float(np.max(np.abs(transition.sum(axis=1) - 1.0))), float(np.max(-transition, initial=0.0)))
        )
    max_residual = max(residuals, default=0.0)
    max_defect = max(defects, default=0.0)
    scale = 1.0 + float(np.max(np.abs(rule.H)))
    return CTVerification(
        times=tuple(times),
        residuals=tuple(residuals),
        stochastic_defects=tuple(defects),
        max_residual=max_residual,
        max_stochastic_defect=max_defect,
        passed=max_residual <= RESIDUAL_TOLERANCE * scale and max_defect <= STOCHASTIC_TOLERANCE,
    )
