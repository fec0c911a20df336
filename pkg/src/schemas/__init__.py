from src.schemas.config import RunConfig, TargetConfig
from src.schemas.enums import BlockKind, Construction, DeltaStrategy, EnsembleKind, Scheme, ValidationReference
from src.schemas.mixins import FloatArray, FrozenModel, Matrix, Tensor, Vector
from src.schemas.moments import AsymptoticMoments, EigenRow
from src.schemas.process import GeneratorMatrix, ProcessSpec, SpecValidation
from src.schemas.reports import GeneratorReport, MomentCurveReport, Refusal, ScanReport
from src.schemas.rules import (
    CTCheck,
    CTRule,
    CTVerification,
    DTRule,
    DTVerification,
    LiftedRule,
    LiftVerification,
    SignedMeasureRule,
    StaticCubature,
    provenance_tag,
    rate_matrix_defect,
)
from src.schemas.simulation import MomentTarget, PathEnsemble, SimConfig, SimReport, TargetReport
from src.schemas.spectral import ConeMembershipResult, JordanBlock, JordanOverride, SpectralInfo, assemble_jordan

__all__: list[str] = [
    "AsymptoticMoments",
    "BlockKind",
    "CTCheck",
    "CTRule",
    "CTVerification",
    "ConeMembershipResult",
    "Construction",
    "DTRule",
    "DTVerification",
    "DeltaStrategy",
    "EigenRow",
    "EnsembleKind",
    "FloatArray",
    "FrozenModel",
    "GeneratorMatrix",
    "GeneratorReport",
    "JordanBlock",
    "JordanOverride",
    "LiftVerification",
    "LiftedRule",
    "Matrix",
    "MomentCurveReport",
    "MomentTarget",
    "PathEnsemble",
    "ProcessSpec",
    "Refusal",
    "RunConfig",
    "ScanReport",
    "Scheme",
    "SignedMeasureRule",
    "SimConfig",
    "SimReport",
    "SpecValidation",
    "SpectralInfo",
    "StaticCubature",
    "TargetConfig",
    "TargetReport",
    "Tensor",
    "ValidationReference",
    "Vector",
    "assemble_jordan",
    "provenance_tag",
    "rate_matrix_defect",
]
