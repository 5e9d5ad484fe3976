"""Exact computations for abelian quotient singularities C^n/G.

Groups, McKay quivers, toric resolutions, gnat families of G-constellations,
their distinguished fibers and stability, the quotient fan of a family and
the lifting of families along star subdivisions.
"""
from .errors import (InternalError, MMKError, ResourceGuardError, UsageError,
                     ValidationError)
from .exactlin import (PolyCone, cone_contains, dual_cone, hnf_basis,
                       intersect_cones, minimal_face)
from .fan import Fan, classify_fan, initial_fan, resolve, star_subdivide
from .gnat import (GnatFamily, canonical_family, fiber, fiber_monomials,
                   make_family, theta_cone, twist, walk)
from .grp import (AbelianAction, age, build_group, char_pairing,
                  junior_elements)
from .lift import (build_special_family, chart_context, classify_arrow,
                   lift_pattern, push_pattern, round_down, round_down_char,
                   solve_b_from_pattern)
from .mckay import (McKayQuiver, Pattern, Stability, build_mckay,
                    check_stability, closed_subsets, components,
                    validate_pattern)
from .moduli import (QuotientFanReport, Verdict, cox_generators, mv_lattice,
                     phi_map, psi_matrix, quotient_fan, sigma_tilde)

__version__ = "0.1.0"
