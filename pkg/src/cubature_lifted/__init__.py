from src.cubature_lifted.blocks import (
    BlockRule,
    block_points,
    complex_rule,
    hypercube_rule,
    hypercube_scales,
    polygon_order,
    rates_from_weights,
    regular_polygon,
    zero_rule,
)
from src.cubature_lifted.lift import lift, trivial_rule, verify_lifted
from src.cubature_lifted.signed import to_signed_measures, two_time_expectation, weights_matrix

__all__: list[str] = [
    "BlockRule",
    "block_points",
    "complex_rule",
    "hypercube_rule",
    "hypercube_scales",
    "lift",
    "polygon_order",
    "rates_from_weights",
    "regular_polygon",
    "to_signed_measures",
    "trivial_rule",
    "two_time_expectation",
    "verify_lifted",
    "weights_matrix",
    "zero_rule",
]
