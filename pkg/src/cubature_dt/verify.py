import numpy as np

from src.core.settings import ToleranceSettings, settings
from src.linalg import expm
from src.moments import multi_time_moment
from src.polynomials import Polynomial
from src.schemas import DTRule, DTVerification, GeneratorMatrix

TWO_TIME_TOLERANCE = 1e-6


def _default_pair(G: GeneratorMatrix) -> tuple[Polynomial, Polynomial]:  # noqa: N803
    x = Polynomial.variable(G.basis.d, 0)
    if G.n >= 2:  # noqa: PLR2004
        return x, x
    return x, Polynomial.constant(G.basis.d)


def verify_dt(
    rule: DTRule,
    G: GeneratorMatrix,  # noqa: N803
    l_max: int,
    p: Polynomial | None = None,
    q: Polynomial | None = None,
    tolerances: ToleranceSettings | None = None,
) -> DTVerification:
    """Check Q^l H = H exp(lΔG) for l = 1..l_max and one two-time expectation at (Δ, 2Δ).

    The chain value Σ Q_ik q(x_k) Σ Q_km p(x_m) is compared with the moment formula from every
    support point. ``p`` and ``q`` default to x_1, with q = 1 when n = 1.
    """
    if l_max < 1:
        raise ValueError(f"l_max must be at least 1, got {l_max}")
    tol = tolerances or settings.tol
    if p is None or q is None:
        p, q = _default_pair(G)

    step = expm(rule.delta * G.G)
    flow = np.eye(G.size)
    power = np.eye(rule.Q.shape[0])
    residuals: list[float] = []
    for _ in range(l_max):
        flow = flow @ step
        power = power @ rule.Q
        residuals.append(float(np.max(np.abs(rule.H @ flow - power @ rule.H))))

    p_values = p.evaluate(rule.points)
    q_values = q.evaluate(rule.points)
    chain = rule.Q @ (q_values * (rule.Q @ p_values))
    exact = np.array(
        [multi_time_moment(G, x, [(rule.delta, q), (2 * rule.delta, p)]) for x in rule.points]
    )
    two_time_error = float(np.max(np.abs(chain - exact)))

    scale = 1.0 + float(np.max(np.abs(rule.H)))
    passed = all(r <= (l + 1) * tol.dt * scale for l, r in enumerate(residuals)) and two_time_error <= (
        TWO_TIME_TOLERANCE * (1.0 + float(np.max(np.abs(exact))))
    )
    return DTVerification(power_residuals=tuple(residuals), two_time_error=two_time_error, passed=passed)
