"""Exact symbolic verification of affine super Yangian structures and
their images in completed current algebras and W-superalgebra enveloping
algebras.

The top-level names cover the common entry points; the submodules hold
the full API (scalar arithmetic, index bookkeeping, structure constants,
normal ordering, vacuum modules, operator expressions, the relation
suite, the map zoo, and the free-field side).
"""

from .scalar import Poly, ZERO, ONE, HALF, H, C, K, A, EPS
from .superindex import SuperIndexSet, PartitionData
from .superlie import AffineGL, TriangularA, presentation_images
from .smodule import VacuumModule
from .operators import eval_expr, op_equal, op_is_zero
from .yangian import (
    cartan, relation_suite, check_assignment, check_concl, Assignment,
)
from .maps import (
    ev_assignment, coproduct_assignment, check_coassoc,
    psi1, psi2, psi3, psi4, compose_with_ev,
    psi1_gen_images, psi2_gen_images, constants, delta_s_images,
    check_main_theorem, presentation_assignment,
)
from .walg import WContext, wgen_crosscheck

__all__ = [
    "Poly", "ZERO", "ONE", "HALF", "H", "C", "K", "A", "EPS",
    "SuperIndexSet", "PartitionData", "AffineGL", "TriangularA",
    "presentation_images", "VacuumModule",
    "eval_expr", "op_equal", "op_is_zero",
    "cartan", "relation_suite", "check_assignment", "check_concl",
    "Assignment",
    "ev_assignment", "coproduct_assignment", "check_coassoc",
    "psi1", "psi2", "psi3", "psi4", "compose_with_ev",
    "psi1_gen_images", "psi2_gen_images", "constants", "delta_s_images",
    "check_main_theorem", "presentation_assignment",
    "WContext", "wgen_crosscheck",
]
