"""Exact combinatorics of complete simplicial toric fans: positive relations
among rays, primitive collections, invariant curves, projectivity, and the
sign of Seshadri constants at the torus identity."""

from .exact_math import (
    determinant,
    kernel_basis,
    primitive,
    rank,
    smith_normal_form,
)
from .fan import (
    ClassGroup,
    Fan,
    FanError,
    class_group,
    gen_hirzebruch,
    gen_product,
    gen_projective_space,
    gen_weighted_projective,
    is_complete,
    is_projective,
    is_smooth,
    lattice_isomorphic,
    load_fan,
    star_subdivision,
    validate_fan,
)
from .intersection import (
    CurveClass,
    DivisorSign,
    all_wall_curves,
    divisor_seshadri_sign_at_identity,
    is_nef,
    relation_curve_class,
    wall_curve_class,
)
from .lp import LPCertificate, LPProblem, solve_feasibility, solve_optimize, verify_certificate
from .positivity import (
    DaggerReport,
    PositiveRelation,
    SeshadriSign,
    check_dagger,
    check_dagger_lp,
    find_zero_sum_primitive_collection,
    is_projective_space_fan,
    positive_circuits,
    primitive_collections,
    question4_scan,
    spans_cone,
    tangent_seshadri_sign_at_identity,
    verify_theorem1,
)

__version__ = "0.1.0"
