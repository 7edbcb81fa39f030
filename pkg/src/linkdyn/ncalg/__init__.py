"""Noncommutative rewriting engine and the shipped Hopf algebra presentations."""

from .coeffs import Coeff, CoeffRing
from .engine import (
    El,
    Presentation,
    Tensor,
    bracket,
    check_local_confluence,
    coproduct,
    enumerate_basis,
    is_central,
    is_skew_primitive,
    normal_form,
)
from .presentations import (
    GroupSpec,
    LinkingDatum,
    a2_selflink,
    a2_v_element,
    ad_power_sum,
    b2_selflink,
    b2_v_element,
    b2_w_element,
    cyclic_group_spec,
    free_group_spec,
    g2_selflink,
    g2_Z_element,
    presentation_U,
    quantum_binomial_check,
    u_recursion,
    validate_linking_datum,
)
from .anpbw import (
    an_pbw_presentation,
    build_root_vectors_an,
    crucial_commutation_residual,
)

__all__ = [
    "Coeff", "CoeffRing", "El", "Presentation", "Tensor",
    "bracket", "check_local_confluence", "coproduct", "enumerate_basis",
    "is_central", "is_skew_primitive", "normal_form",
    "GroupSpec", "LinkingDatum", "a2_selflink", "a2_v_element", "ad_power_sum",
    "b2_selflink", "b2_v_element", "b2_w_element", "cyclic_group_spec",
    "free_group_spec", "g2_selflink", "g2_Z_element", "presentation_U",
    "quantum_binomial_check", "u_recursion", "validate_linking_datum",
    "an_pbw_presentation", "build_root_vectors_an", "crucial_commutation_residual",
]
