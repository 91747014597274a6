"""Exact eps-lc checks and interior-point certificates for weighted blowups."""

from .diophantine import (
    Approx1D,
    ContinuedFraction,
    DirichletWitness,
    continued_fraction,
    dirichlet_1d,
    dirichlet_simultaneous,
)
from .exact_lattice import (
    DEFAULT_ENUMERATION_CAP,
    EQUAL,
    GREATER,
    LESS,
    BudgetExceeded,
    Rational,
    as_lattice_vector,
    as_rational_vector,
    cmp_exact,
    format_rational,
    gcd_all,
    integer_nth_root,
    parse_rational,
    pow_cmp,
)
from .oracle import (
    ORACLE_BUDGET_DEFAULT,
    enumerate_lattice_points,
    mld_bruteforce,
    psi_bruteforce,
    verify_interior_psi_equivalence,
)
from .toric_mld import (
    BarycentricCoords,
    ConeLocation,
    MaxCone,
    MldReport,
    WeightVector,
    barycentric,
    is_eps_lc,
    is_smooth_cone,
    locate_cone,
    max_cones,
    mld_at_fixed_point,
    mld_global,
    psi_value,
)
from .witness import (
    Certificate,
    CEpsPolytope,
    FacetHyperplane,
    certificate_threshold,
    build_polytope,
    certify_not_eps_lc,
    contains_interior,
    default_theta,
    interior_by_subsimplex,
    witness_general_theta,
    witness_n2,
    witness_n3,
)

__version__ = "0.1.0"
