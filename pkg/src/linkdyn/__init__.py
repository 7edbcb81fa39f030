"""linkdyn: exact-arithmetic toolkit for linkable Dynkin diagrams.

Decides, constructs and verifies linkable braiding matrices, realizes
4-vertex Cartan types over (Z/p)^2, and certifies the self-linking Hopf
algebra presentations through a noncommutative rewriting engine.
"""

from . import braiding, cycles, diagram, exist, ncalg, qcalc, realize
from .diagram import (
    LinkableDynkinDiagram,
    classify_components,
    compose,
    from_cartan,
    hopf_dimension,
    parse_diagram,
    print_diagram,
    to_cartan,
    to_dot,
)
from .cycles import cycle_metrics, enumerate_cycles, genus_gcd, height, level0_vertices
from .exist import decide_affine, decide_finite, decide_nonroot, self_link_order_constraint
from .braiding import (
    BraidingMatrix,
    SymbolicUnit,
    construct_affine,
    construct_excluded,
    construct_finite,
    verify,
)
from .realize import (
    Realization,
    linking_feasibility,
    realize as realize_diagram,
    solve_conic,
    sqrt_mod,
    verify_realization,
)

__version__ = "0.1.0"

__all__ = [
    "braiding", "cycles", "diagram", "exist", "ncalg", "qcalc", "realize",
    "LinkableDynkinDiagram", "classify_components", "compose", "from_cartan",
    "hopf_dimension", "parse_diagram", "print_diagram", "to_cartan", "to_dot",
    "cycle_metrics", "enumerate_cycles", "genus_gcd", "height", "level0_vertices",
    "decide_affine", "decide_finite", "decide_nonroot", "self_link_order_constraint",
    "BraidingMatrix", "SymbolicUnit", "construct_affine", "construct_excluded",
    "construct_finite", "verify",
    "Realization", "linking_feasibility", "realize_diagram", "solve_conic",
    "sqrt_mod", "verify_realization",
]
