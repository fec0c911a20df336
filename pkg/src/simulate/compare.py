from collections.abc import Callable, Sequence
from math import sqrt

import numpy as np

from src.core.exceptions import EmptyEnsembleError
from src.core.settings import settings
from src.schemas import MomentTarget, PathEnsemble, SimReport, TargetReport

type Reference = PathEnsemble | Callable[[MomentTarget], float]


def _sample(ensemble: PathEnsemble, target: MomentTarget) -> tuple[float, float]:
    """Mean of p over the kept paths at time t and its standard error."""
    states = ensemble.at(target.t)
    if states.shape[0] == 0:
        raise EmptyEnsembleError(f"No usable {ensemble.kind} paths at t={target.t}")
    values = target.p.evaluate(states)
    if values.size == 1:
        return float(values[0]), 0.0
    return float(np.mean(values)), float(np.std(values, ddof=1)) / sqrt(values.size)


def compare_moments(
    ensemble: PathEnsemble,
    reference: Reference,
    targets: Sequence[MomentTarget],
    z_crit: float | None = None,
) -> SimReport:
    """z-scores of Monte Carlo moments against a second ensemble or a closed form.

    Against an ensemble the standard errors of both means are combined. A zero standard error
    gives z = 0 on exact agreement and an infinite z otherwise.
    """
    critical = z_crit if z_crit is not None else settings.simulation.z_crit
    excluded = ensemble.excluded + (reference.excluded if isinstance(reference, PathEnsemble) else 0)
    rows: list[TargetReport] = []
    for k, target in enumerate(targets):
        estimate, error = _sample(ensemble, target)
        if isinstance(reference, PathEnsemble):
            value, reference_error = _sample(reference, target)
            error = sqrt(error**2 + reference_error**2)
        else:
            value = float(reference(target))
        difference = estimate - value
        if error > 0:
            z = difference / error
        else:
            z = 0.0 if difference == 0 else float(np.copysign(np.inf, difference))
        rows.append(
            TargetReport(
                label=target.label or f"target{k}",
                t=target.t,
                mc_estimate=estimate,
                closed_form=value,
                std_error=error,
                z_score=z,
                passed=abs(z) <= critical,
            )
        )
    return SimReport(rows=rows, z_crit=critical, excluded=excluded)
