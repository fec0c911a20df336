from typing import Any

import numpy as np

from scipy.linalg import null_space, qr

from src.core.exceptions import NegativeTimeError, SignedMeasureError
from src.core.settings import ToleranceSettings, settings
from src.cubature_ct import as_points, build_H
from src.linalg import expm, rank
from src.polynomials import MonomialBasis, Polynomial
from src.schemas import FloatArray, LiftedRule, SignedMeasureRule


def to_signed_measures(
    rule: LiftedRule, base_points: Any, basis: MonomialBasis, tolerances: ToleranceSettings | None = None
) -> SignedMeasureRule:
    """Factor S = S_tilde H over base points with rank S_tilde = M, and A with A S_tilde = I.

    Rows of S_tilde solve H^T w = s_i. N rows of S that are linearly independent get the
    minimum norm solution; M - N further rows are shifted by distinct kernel vectors of H^T,
    which makes the columns of S_tilde independent. A is the pseudo-inverse of S_tilde.

    Raises:
        SignedMeasureError: If rank H < N_n or there are more base points than lifted points
    """
    tol = tolerances or settings.tol
    points = as_points(base_points, basis.d)
    H = build_H(points, basis)  # noqa: N806
    m, n = H.shape
    r = rule.size
    if rule.S.shape[1] != n:
        raise SignedMeasureError(f"Lifted points live in R^{rule.S.shape[1]}, basis has {n} elements")
    if rank(H, tol.rank) < n:
        raise SignedMeasureError(f"Base points give rank H = {rank(H, tol.rank)} < {n}")
    if m > r:
        raise SignedMeasureError(f"{m} base points exceed the {r} lifted points")

    S = np.asarray(rule.S)  # noqa: N806
    S_tilde = S @ np.linalg.pinv(H)  # noqa: N806
    if m > n:
        _, _, pivots = qr(S.T, pivoting=True)
        independent = set(pivots[:n].tolist())
        shifted = [i for i in range(r) if i not in independent][: m - n]
        kernel = null_space(H.T)
        for column, i in enumerate(shifted):
            S_tilde[i] += kernel[:, column]

    if rank(S_tilde, tol.rank) < m:
        raise SignedMeasureError("Signed weights do not have full column rank")
    mismatch = float(np.max(np.abs(S_tilde @ H - S)))
    if mismatch > tol.lift * (1.0 + float(np.max(np.abs(S)))) * (1.0 + float(np.max(np.abs(H)))):
        raise SignedMeasureError(f"S_tilde H misses S by {mismatch:.3e}")
    return SignedMeasureRule(points=points, S_tilde=S_tilde, A=np.linalg.pinv(S_tilde))


def weights_matrix(smr: SignedMeasureRule, L: Any, t: float) -> FloatArray:  # noqa: N803
    """W(t) = A exp(tL) S_tilde; rows sum to one, entries may be negative."""
    if t < 0:
        raise NegativeTimeError(f"Time must be nonnegative, got {t}")
    return np.asarray(smr.A @ expm(t * np.asarray(L)) @ smr.S_tilde)


def two_time_expectation(
    smr: SignedMeasureRule,
    L: Any,  # noqa: N803
    p: Polynomial,
    q: Polynomial,
    s: float,
    t: float,
    i: int,
) -> float:
    """E_{x_i}[q(X_s) p(X_t)] for s <= t as Σ_{l,m} p(x_m) q(x_l) W(t-s)_{lm} W(s)_{il}."""
    if s > t:
        raise ValueError(f"Expected s <= t, got s={s}, t={t}")
    p_values = p.evaluate(smr.points)
    q_values = q.evaluate(smr.points)
    inner = weights_matrix(smr, L, t - s) @ p_values
    return float(weights_matrix(smr, L, s)[i] @ (q_values * inner))
