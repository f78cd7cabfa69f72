"""waringfq: exact computation of Waring subspaces, Waring identifiability,
and Waring polynomials over finite fields.

A subspace of P^N(F_q) is *Waring* with respect to a point set X when it is
spanned by the points of X it contains (its *witness*); it is *Waring
identifiable* when it lies in a unique minimal Waring subspace with a unique
spanning subset of X.  The package computes these predicates exactly for
quadric Veronese varieties, rational normal curves, quadrics in P^3, and
arbitrary finite spanning point sets, together with the orbit-counting
Waring polynomials and the classification-style enumerations (eta7, eta8).
"""

from .gf import FieldSpec, FieldTable, build_field, field_of_order
from .projspace import Subspace, count_subspaces, enumerate_points, intersect, normalize, span
from .veronese import (
    PointSet,
    conic,
    explicit_point_set,
    rational_normal_curve,
    tensor_rank,
    inverse_vmap,
    veronese_variety,
    vmap,
)
from .waring import (
    Witness,
    is_identifiable_waring,
    is_waring,
    is_waring_identifiable,
    witness_of,
    x_rank,
)
from .group import (
    AutGroup,
    Collineation,
    aut_of_variety,
    lift,
    lifted_projective_group,
    orbit_partition,
    stabilizer_search,
    waring_polynomials,
)

__version__ = "0.1.0"
