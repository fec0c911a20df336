from typing import Self

import numpy as np

from pydantic import Field, model_validator
from scipy.linalg import block_diag

from src.schemas.enums import BlockKind
from src.schemas.mixins import FloatArray, FrozenModel, Matrix, Vector


class JordanBlock(FrozenModel):
    """Real Jordan block of a real square matrix.

    ``zero`` blocks are diagonal zero of any size. ``real`` blocks carry the eigenvalue ``a``
    on the diagonal and a 0/1 flag per superdiagonal entry. ``complex`` blocks are built from
    2x2 rotations [[a, b], [-b, a]] with a 2x2 identity above the diagonal wherever the flag
    is set; their ``size`` counts real coordinates (twice the chain length).
    """

    kind: BlockKind = Field(..., description="Block kind")
    start: int = Field(default=0, ge=0, description="First column of the block in V")
    size: int = Field(..., ge=1, description="Number of real coordinates spanned by the block")
    a: float = Field(default=0.0, description="Eigenvalue, or real part of the complex pair")
    b: float = Field(default=0.0, description="Imaginary part of the complex pair")
    superdiagonal: tuple[int, ...] = Field(default=(), description="Chain flags, one per link")

    @model_validator(mode="after")
    def validate_shape(self) -> Self:
        if any(flag not in {0, 1} for flag in self.superdiagonal):
            raise ValueError("Superdiagonal flags must be 0 or 1")
        if self.kind is BlockKind.ZERO and (self.a != 0.0 or any(self.superdiagonal)):
            raise ValueError("Zero blocks are diagonal zero")
        if self.kind is BlockKind.COMPLEX and (self.size % 2 or self.b == 0.0):
            raise ValueError("Complex blocks have even size and a nonzero imaginary part")
        if self.kind is not BlockKind.ZERO and len(self.superdiagonal) != self.length - 1:
            raise ValueError(f"Expected {self.length - 1} superdiagonal flags, got {len(self.superdiagonal)}")
        return self

    @property
    def length(self) -> int:
        """Chain length s (number of eigenvalue repetitions)."""
        return self.size // 2 if self.kind is BlockKind.COMPLEX else self.size

    @property
    def stop(self) -> int:
        return self.start + self.size

    @property
    def eigenvalues(self) -> list[complex]:
        if self.kind is BlockKind.COMPLEX:
            return [complex(self.a, self.b), complex(self.a, -self.b)] * self.length
        return [complex(self.a, 0.0)] * self.length

    def matrix(self) -> FloatArray:
        if self.kind is BlockKind.ZERO:
            return np.zeros((self.size, self.size))
        if self.kind is BlockKind.REAL:
            return self.a * np.eye(self.size) + np.diag(np.asarray(self.superdiagonal, dtype=float), 1)
        rotation = np.array([[self.a, self.b], [-self.b, self.a]])
        chain = np.diag(np.asarray(self.superdiagonal, dtype=float), 1)
        return np.kron(np.eye(self.length), rotation) + np.kron(chain, np.eye(2))


def assemble_jordan(blocks: list[JordanBlock] | tuple[JordanBlock, ...]) -> FloatArray:
    """Block-diagonal matrix J of the given blocks, in block order."""
    if not blocks:
        return np.zeros((0, 0))
    return np.asarray(block_diag(*(block.matrix() for block in blocks)), dtype=float)


class JordanOverride(FrozenModel):
    """Externally supplied real Jordan structure, bypassing numerical detection."""

    blocks: tuple[JordanBlock, ...] = Field(..., description="Blocks in column order of V")
    V: Matrix = Field(..., description="Change of basis with M = V J V^-1")

    @model_validator(mode="after")
    def validate_layout(self) -> Self:
        position = 0
        for block in self.blocks:
            if block.start != position:
                raise ValueError(f"Block starting at {block.start} does not follow column {position}")
            position = block.stop
        if self.V.shape != (position, position):
            raise ValueError(f"V must be {position}x{position}, got {self.V.shape}")
        return self


class SpectralInfo(FrozenModel):
    """Real Jordan decomposition M = V J V^-1."""

    eigenvalues: tuple[complex, ...] = Field(..., description="Eigenvalues with multiplicities")
    blocks: tuple[JordanBlock, ...] = Field(..., description="Blocks in column order of V")
    V: Matrix = Field(..., description="Real change of basis matrix")
    V_inv: Matrix = Field(..., description="Inverse of V")
    residual: float = Field(default=0.0, ge=0, description="Relative reconstruction residual")

    @property
    def J(self) -> FloatArray:  # noqa: N802
        return assemble_jordan(self.blocks)

    def zero_columns(self) -> list[int]:
        """Columns of V spanned by zero-eigenvalue blocks."""
        return [
            column
            for block in self.blocks
            if block.kind is BlockKind.ZERO or (block.kind is BlockKind.REAL and block.a == 0.0)
            for column in range(block.start, block.stop)
        ]


class ConeMembershipResult(FrozenModel):
    """Outcome of a nonnegative combination test v = Σ c_j g_j."""

    feasible: bool = Field(..., description="Residual within tolerance")
    coefficients: Vector = Field(..., description="Nonnegative coefficients c_j")
    residual: float = Field(..., ge=0, description="Infinity norm of v - Σ c_j g_j")
