from src.moments.assumptions import (
    a1_violations,
    check_A1,
    check_A2,
    eigen_table,
    generator_array,
    zero_multiplicity,
)
from src.moments.asymptotic import asymptotic
from src.moments.transient import moment, moment_curve, multi_time_moment, propagate

__all__: list[str] = [
    "a1_violations",
    "asymptotic",
    "check_A1",
    "check_A2",
    "eigen_table",
    "generator_array",
    "moment",
    "moment_curve",
    "multi_time_moment",
    "propagate",
    "zero_multiplicity",
]
