import numpy as np
import pytest

from src.core.exceptions import NonFiniteInputError, SpectralDecompositionError
from src.core.settings import settings
from src.linalg import Cluster, cluster_eigenvalues, cone_membership, expm, merge_defective, rank, spectral
from src.moments import eigen_table
from src.polynomials import basis_indices, eval_basis
from src.schemas import BlockKind, JordanBlock, JordanOverride


class TestExpm:
    def test_zero_matrix(self):
        np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_semigroup(self):
        rng = np.random.default_rng(2)
        M = rng.normal(size=(4, 4))  # noqa: N806
        np.testing.assert_allclose(expm(0.7 * M) @ expm(0.3 * M), expm(M), rtol=1e-10, atol=1e-10)

    def test_diagonal(self):
        np.testing.assert_allclose(expm(np.diag([0.0, -1.0])), np.diag([1.0, np.exp(-1.0)]), rtol=1e-14)

    def test_non_finite(self):
        with pytest.raises(NonFiniteInputError):
            expm([[np.nan, 0.0], [0.0, 1.0]])


class TestRank:
    def test_identity(self):
        assert rank(np.eye(5)) == 5, "Identity must have full rank"

    def test_outer_product(self):
        assert rank(np.outer([1.0, 2.0, 3.0], [4.0, 5.0])) == 1, "Outer product must have rank 1"

    def test_vandermonde(self):
        H = eval_basis(np.array([[0.0], [1.0], [2.0]]), basis_indices(1, 2))  # noqa: N806
        assert rank(H) == 3, "Vandermonde matrix at distinct points must be invertible"

    def test_zero_matrix(self):
        assert rank(np.zeros((2, 3))) == 0, "Zero matrix must have rank 0"


class TestConeMembership:
    def test_zero_target(self):
        result = cone_membership([0.0, 0.0], [[1.0, 0.0]])
        assert result.feasible, "Zero lies in every cone"
        assert not np.any(result.coefficients), "Zero needs zero coefficients"

    def test_generator_itself(self):
        result = cone_membership([1.0, 2.0], [[1.0, 2.0], [0.0, 1.0]])
        assert result.feasible, "A generator lies in its cone"
        assert result.residual <= 1e-12, "Residual must vanish"

    def test_outside(self):
        result = cone_membership([-1.0, 0.0], [[1.0, 0.0], [0.0, 1.0]])
        assert not result.feasible, "(-1, 0) is outside the positive quadrant"
        assert result.residual == pytest.approx(1.0), "Residual must be the distance to the cone"

    def test_no_generators(self):
        assert not cone_membership([1.0], np.zeros((0, 1))).feasible, "Empty cone holds only 0"


class TestClustering:
    def test_close_eigenvalues_merge(self):
        clusters = cluster_eigenvalues(np.array([-1.0 + 0j, -1.0 + 1e-12j, 0.0 + 0j]), 1e-8)
        assert [c.value for c in clusters] == [0j, -1 + 0j], "Zero cluster must come first"
        assert clusters[1].multiplicity == 2, "Nearby eigenvalues must form one cluster"


class TestSpectral:
    def test_diagonal(self):
        info = spectral(np.diag([0.0, -1.0, -2.0]))
        assert [block.kind for block in info.blocks] == [BlockKind.ZERO, BlockKind.REAL, BlockKind.REAL]
        assert [block.a for block in info.blocks] == pytest.approx([0.0, -1.0, -2.0]), "Block eigenvalues mismatch"

    def test_nilpotent(self):
        info = spectral([[0.0, 1.0], [0.0, 0.0]])
        assert len(info.blocks) == 1, "Nilpotent matrix has a single chain"
        block = info.blocks[0]
        assert block.kind is BlockKind.REAL and block.size == 2, "Chain must be a real block of size 2"
        assert block.superdiagonal == (1,), "Chain link must be set"

    def test_complex_pair(self):
        info = spectral([[-1.0, 2.0], [-2.0, -1.0]])
        block = info.blocks[0]
        assert block.kind is BlockKind.COMPLEX, "Rotation must give a complex block"
        assert (block.a, block.b) == pytest.approx((-1.0, 2.0)), "Complex block parameters mismatch"

    def test_reconstruction(self):
        rng = np.random.default_rng(5)
        M = rng.normal(size=(5, 5))  # noqa: N806
        info = spectral(M)
        np.testing.assert_allclose(info.V @ info.J @ info.V_inv, M, atol=1e-8)
        assert info.residual <= 1e-6, "Residual must pass certification"

    def test_zero_columns(self):
        info = spectral(np.diag([0.0, -1.0, 0.0]))
        assert len(info.zero_columns()) == 2, "Two zero eigenvectors expected"

    def test_override_is_certified(self):
        blocks = (
            JordanBlock(kind=BlockKind.REAL, start=0, size=1, a=-1.0),
            JordanBlock(kind=BlockKind.REAL, start=1, size=1, a=-2.0),
        )
        info = spectral(np.diag([-1.0, -2.0]), override=JordanOverride(blocks=blocks, V=np.eye(2)))
        assert info.residual == 0.0, "Exact override must reconstruct exactly"

    def test_wrong_override(self):
        blocks = (
            JordanBlock(kind=BlockKind.REAL, start=0, size=1, a=-1.0),
            JordanBlock(kind=BlockKind.REAL, start=1, size=1, a=-2.0),
        )
        override = JordanOverride(blocks=blocks, V=np.array([[1.0, 1.0], [0.0, 1.0]]))
        with pytest.raises(SpectralDecompositionError) as error:
            spectral(np.diag([-1.0, -2.0]), override=override)
        assert error.value.residual > 1e-6, "Error must carry the residual"

    def test_non_finite(self):
        with pytest.raises(NonFiniteInputError):
            spectral([[np.inf]])


def conjugated(J: np.ndarray, rng: np.random.Generator) -> np.ndarray:  # noqa: N803
    """V J V^-1 for a random V with condition number below 10."""
    Q, _ = np.linalg.qr(rng.normal(size=J.shape))  # noqa: N806
    upper = np.triu(0.3 * rng.normal(size=J.shape), 1) + np.diag(rng.uniform(1.0, 2.0, size=J.shape[0]))
    V = Q @ upper  # noqa: N806
    return V @ J @ np.linalg.inv(V)


CHAIN_2 = np.array([[-1.0, 1.0], [0.0, -1.0]])
CHAIN_3 = np.array([[-0.5, 1.0, 0.0], [0.0, -0.5, 1.0], [0.0, 0.0, -0.5]])


class TestDefectiveClusters:
    def test_split_chain_merges(self):
        split = [Cluster(value=-1.0 - 2e-8 + 0j, multiplicity=1), Cluster(value=-1.0 + 2e-8 + 0j, multiplicity=1)]
        merged = merge_defective(CHAIN_2, split, settings.tol)
        assert [c.multiplicity for c in merged] == [2], "Split chain must become one cluster"
        assert merged[0].value == pytest.approx(-1.0, abs=1e-12)

    def test_conjugate_split_merges_to_real(self):
        split = [Cluster(value=-1.0 + 2e-8j, multiplicity=1), Cluster(value=-1.0 - 2e-8j, multiplicity=1)]
        merged = merge_defective(CHAIN_2, split, settings.tol)
        assert len(merged) == 1 and merged[0].is_real, "Conjugate split of a real chain is one real cluster"

    def test_distinct_eigenvalues_stay_apart(self):
        close = [Cluster(value=-1.0 + 0j, multiplicity=1), Cluster(value=-1.0 + 1e-6 + 0j, multiplicity=1)]
        merged = merge_defective(np.diag([-1.0, -1.0 + 1e-6]), close, settings.tol)
        assert len(merged) == 2, "Semisimple neighbours must not merge"

    @pytest.mark.parametrize("J", [CHAIN_2, CHAIN_3], ids=["chain2", "chain3"])
    def test_random_similarity(self, J):  # noqa: N803
        rng = np.random.default_rng(31)
        for _ in range(100):
            M = conjugated(J, rng)  # noqa: N806
            info = spectral(M)
            assert [(b.kind, b.size) for b in info.blocks] == [(BlockKind.REAL, J.shape[0])], "One Jordan chain"
            assert info.blocks[0].a == pytest.approx(J[0, 0], abs=1e-6), "Chain eigenvalue mismatch"
            np.testing.assert_allclose(info.V @ info.J @ info.V_inv, M, atol=1e-8)

    def test_eigen_table_of_split_chain(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            table = eigen_table(conjugated(CHAIN_2, rng))
            assert [(row.algebraic, row.geometric) for row in table] == [(2, 1)], "Defective eigenvalue expected"

    def test_ill_conditioned_basis_rejected(self):
        V = np.array([[1.0, 1.0], [0.0, 1e-7]])  # noqa: N806
        M = V @ np.diag([-1.0, -2.0]) @ np.linalg.inv(V)  # noqa: N806
        blocks = (
            JordanBlock(kind=BlockKind.REAL, start=0, size=1, a=-1.0),
            JordanBlock(kind=BlockKind.REAL, start=1, size=1, a=-2.0),
        )
        with pytest.raises(SpectralDecompositionError, match="ill-conditioned"):
            spectral(M, override=JordanOverride(blocks=blocks, V=V))
