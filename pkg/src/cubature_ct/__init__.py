from src.cubature_ct.rule import (
    as_points,
    build_H,
    check_ct,
    ct_feasibility,
    lagrange_check,
    row_sums_zero,
    solve_rate_matrix,
)
from src.cubature_ct.scan import scan_point_sets
from src.cubature_ct.verify import verify_ct

__all__: list[str] = [
    "as_points",
    "build_H",
    "check_ct",
    "ct_feasibility",
    "lagrange_check",
    "row_sums_zero",
    "scan_point_sets",
    "solve_rate_matrix",
    "verify_ct",
]
