from src.cubature_dt.rule import discrete_rule, find_delta, q_at
from src.cubature_dt.static import gauss_points_1d, moment_residual, stationary_gauss_rule, tchakaloff_select
from src.cubature_dt.verify import verify_dt

__all__: list[str] = [
    "discrete_rule",
    "find_delta",
    "gauss_points_1d",
    "moment_residual",
    "q_at",
    "stationary_gauss_rule",
    "tchakaloff_select",
    "verify_dt",
]
