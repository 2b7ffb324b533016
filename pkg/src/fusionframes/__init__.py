"""Tight 2-fusion frames on G(2,d) from signed-permutation orbits.

Exact (rational) verification of spherical designs, tight fusion frames,
orbit invariants, design lifts and equi-chordal cardinality bounds.
"""

__version__ = "0.1.0"

from .certificate import Certificate
from .numerics import Fraction
from .sphere_designs import (
    WeightedPointSet,
    check_spherical_design_pairwise,
    check_weighted_design_moments,
    gegenbauer_eval,
    regular_polygon,
)
from .grassmann import (
    FrameConfig,
    Subspace,
    check_grassmann_design_4,
    check_tff,
    chs_embed,
    is_equichordal,
    is_equiisoclinic,
    principal_angles,
    simplex_bound,
)
from .orbits import (
    OrbitParams,
    OrbitUnion,
    delta,
    enumerate_orbit,
    enumerate_union,
    f_value,
    orbit_frame,
    orbit_size,
    scaling_family,
    search_range,
    search_two_orbit,
    solve_single_orbit,
    two_point_test,
    union_condition,
)
from .lifting import LiftSpec, certify_lift, lift, repair_disjointness
from .bounds import check_ectff2, design_to_sphere_map_check, ectff2_moments, qubit_sic, sic_to_eitff
