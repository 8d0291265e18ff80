"""Entanglement-of-sections laboratory.

Thin Python surface over the C++ core: few-qubit state algebra and SLOCC
classification, symmetric-state retraction flows, bundle characteristic
numbers, the Borromean-ring state, and the constrained section optimizer.
"""

from entsec._core import (
    ConsistencyError,
    InputError,
    PureState,
    ResolutionError,
    borromean,
    classify3,
    clutching_degree,
    entropy,
    experiment,
    fiber_entanglement,
    flow_to_max,
    flow_to_product,
    hopf_clutching,
    make_bell,
    make_ghz,
    make_w,
    partial_trace,
    random_slocc_orbit,
    schmidt_coefficients,
    schmidt_rank,
    stratum,
    two_qubit_concurrence_like,
)

__all__ = [
    "ConsistencyError",
    "InputError",
    "PureState",
    "ResolutionError",
    "borromean",
    "classify3",
    "clutching_degree",
    "entropy",
    "experiment",
    "fiber_entanglement",
    "flow_to_max",
    "flow_to_product",
    "hopf_clutching",
    "make_bell",
    "make_ghz",
    "make_w",
    "partial_trace",
    "random_slocc_orbit",
    "schmidt_coefficients",
    "schmidt_rank",
    "stratum",
    "two_qubit_concurrence_like",
]
