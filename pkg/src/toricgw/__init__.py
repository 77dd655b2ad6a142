"""Toric blowups of P^3 and (P^1)^3, their permutohedral resolution, and the
curve-class correspondences relating stationary Gromov-Witten invariants.
"""
from .errors import (
    BasisModelMismatch, CenterNotInFan, HypothesisWarning, NonCompleteInput,
    NonSmoothInput, NonVdimZero, NotAWall, ParseError, RayPermutationFailure,
    ToricGWError,
)
from .lattice_fan import (
    LatticeFan, ToricSymmetry, build_cube_fan, build_p3_fan,
    build_permutohedral_from_cube, build_permutohedral_from_p3,
    completeness_certificate, fan_automorphisms, fan_isomorphism, star_subdivide,
)
from .intersection import (
    CUBE_SIDE, P3_SIDE, PERM_CUBE, PERM_P3, ClassBasis, CurveClass, DivisorClass,
    canonical_class, intersect, intersection_table, is_nef_on_invariant_curves,
    ray_divisor_class, wall_curve_class, wall_relation,
)
from .toric_symmetry import (
    cremona_cube, cremona_p3, tau_inverse, tau_pushforward, tau_symmetry,
    xi_matrix, zeta_matrix,
)
from .gw_calculus import (
    BaseTable, GWQuery, ReductionTrace, Unresolved, Value, point_descent, reduce,
    replay, theorem1_inverse, theorem1_map, theorem2_guard, theorem3_guard,
    theorem4_map, vdim,
)

__version__ = "0.1.0"
