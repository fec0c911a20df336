import numpy as np

from src.core.exceptions import SpectralDecompositionError
from src.core.logger import get_logger
from src.core.settings import ToleranceSettings, settings
from src.linalg import spectral
from src.moments.assumptions import a1_violations, eigen_table, zero_multiplicity
from src.polynomials import eval_basis
from src.schemas import AsymptoticMoments, GeneratorMatrix, JordanOverride

logger = get_logger(__name__)

MU_SAMPLES = 5


def asymptotic(
    G: GeneratorMatrix,  # noqa: N803
    *,
    override: JordanOverride | None = None,
    tolerances: ToleranceSettings | None = None,
) -> AsymptoticMoments:
    """Asymptotic moments of the process, with the spectral tests that justify them.

    Raises:
        SpectralDecompositionError: If the Jordan structure cannot be certified, or the sampled
            asymptotic moments depend on the starting point although A2 holds
    """
    tol = tolerances or settings.tol
    table = tuple(eigen_table(G, tol))
    diagnostic = a1_violations(G, tol)
    if diagnostic:
        logger.info("Assumption A1 fails: %s", "; ".join(diagnostic))
        return AsymptoticMoments(a1_holds=False, a2_holds=False, eigenvalues=table, diagnostic=tuple(diagnostic))

    info = spectral(G.G, tolerances=tol, override=override)
    zero = info.zero_columns()
    limit = np.asarray(info.V[:, zero] @ info.V_inv[zero, :])
    multiplicity = zero_multiplicity(G, tol)
    if multiplicity != 1:
        return AsymptoticMoments(
            a1_holds=True,
            a2_holds=False,
            limit_matrix=limit,
            eigenvalues=table,
            diagnostic=(f"eigenvalue 0 has multiplicity {multiplicity}",),
            eigen_summary=info,
        )

    rng = np.random.default_rng(settings.sampling.seed)
    samples = eval_basis(rng.uniform(-1.0, 1.0, size=(MU_SAMPLES, G.basis.d)), G.basis) @ limit
    mu = samples.mean(axis=0)
    spread = float(np.max(np.abs(samples - mu)))
    if spread > tol.spread * (1.0 + float(np.max(np.abs(mu)))):
        raise SpectralDecompositionError("Asymptotic moments depend on the starting point", spread)
    return AsymptoticMoments(
        a1_holds=True, a2_holds=True, limit_matrix=limit, mu=mu, eigenvalues=table, eigen_summary=info
    )
