"""Exact computations for Bloch groups, K2 and low degree group homology."""

from ._impl import (
    BudgetExceeded,
    additive_coinvariants,
    bloch_group,
    bw_order_check,
    c2_exact,
    complex_exactness,
    homology,
    in_general_position,
    k2_presentations,
    max_general_position,
    ring_info,
    run_criterion,
    verify_d3_identity,
)

__all__ = [
    "BudgetExceeded",
    "additive_coinvariants",
    "bloch_group",
    "bw_order_check",
    "c2_exact",
    "complex_exactness",
    "homology",
    "in_general_position",
    "k2_presentations",
    "max_general_position",
    "ring_info",
    "run_criterion",
    "verify_d3_identity",
]
