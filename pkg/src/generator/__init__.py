from src.generator.matrix import build_G, check_polynomial_property, first_violation
from src.generator.operator import apply_generator, carre_du_champ
from src.generator.validation import diffusion_at, sample_state_space, validate_spec

__all__: list[str] = [
    "apply_generator",
    "build_G",
    "carre_du_champ",
    "check_polynomial_property",
    "diffusion_at",
    "first_violation",
    "sample_state_space",
    "validate_spec",
]
