"""Exact calculus of tautological classes on moduli of stable curves.

Decorated dual graphs with rational coefficients, the dimension-
lowering invariance operators, rewriting modulo the known genus-0 and
genus-1 relations, and an exact linear-algebra pipeline that derives
tautological equations from the invariance conditions.
"""

from .graphs import (
    DecoratedGraph,
    End,
    Leg,
    Vertex,
    automorphism_count,
    canonicalize,
    dimension,
    disjoint_union,
    is_isomorphic,
    is_valid,
    symmetrize,
    total_genus,
    validate,
)
from .gwi import (
    GwiParseError,
    format_graph,
    format_sum,
    parse_graph,
    parse_sum,
    parse_symbolic,
)
from .operators import (
    AmbientMismatchError,
    LabelCollisionError,
    apply_r,
    cut_edges,
    reduce_genus,
    split_vertices,
)
from .relations import (
    InductiveDataMissing,
    NormalForm,
    RelationBasis,
    RelationRegistry,
    from_automorphism_convention,
    genus0_trr_rewrite,
    genus1_trr_rewrite,
    induce_by_forgetful,
    induce_by_gluing,
    psi_free_expansion,
    to_automorphism_convention,
    wdvv_expand,
    wdvv_relations,
)
from .solver import (
    EquationCandidate,
    FindReport,
    LinearSystem,
    check_invariance,
    enumerate_classes,
    filter_trivial,
    find_equations,
    general_element,
    invariance_system,
    operator_index_bound,
    solve_nullspace,
)
from .sums import FormalSum, LinForm, SymbolicSum

__version__ = "0.1.0"
