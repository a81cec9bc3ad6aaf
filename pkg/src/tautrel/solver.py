"""Discovery pipeline for tautological equations.

Given an ambient (g, n, k): enumerate the decorated classes, form the
general element with one unknown per class, impose vanishing of the
dimension-lowering operators for every l up to 3g-3+n-k (each basis
coordinate of each target ambient contributes one linear condition),
solve the resulting exact system, and split the nullspace into the
part that reduces to zero against the known relations (combinations
of inductive data) and genuinely new equation candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import DecoratedGraph, symmetrize
from .operators import apply_r
from .relations import RelationRegistry
from .strata import enumerate_classes
from .sums import FormalSum, LinForm, SymbolicSum

__all__ = [
    "enumerate_classes",
    "general_element",
    "invariance_system",
    "solve_nullspace",
    "filter_trivial",
    "check_invariance",
    "find_equations",
    "operator_index_bound",
    "LinearSystem",
    "EquationCandidate",
    "FindReport",
]


def general_element(classes) -> SymbolicSum:
    """Sum c_i * class_i with one fresh unknown per distinct class.

    ``classes`` may hold graphs or formal sums (e.g. symmetrised
    orbits); canonical duplicates share an unknown.  Unknown indices
    are 1-based in input order.
    """
    seen = set()
    terms = []
    i = 0
    for cls in classes:
        if isinstance(cls, DecoratedGraph):
            cls = FormalSum.single(cls)
        key = tuple(cls.terms())
        if key in seen:
            continue
        i += 1
        seen.add(key)
        for graph, coeff in cls.terms():
            terms.append((graph, LinForm({i: coeff})))
    return SymbolicSum(terms)


class LinearSystem:
    """Exact homogeneous system over the unknowns c_1..c_N.

    Rows are deduplicated up to scale; each row remembers which target
    ambient and basis coordinate produced it.
    """

    def __init__(self, n_unknowns: int):
        self.n_unknowns = n_unknowns
        self.rows: list[tuple[LinForm, str]] = []
        self._seen: set = set()

    def add_row(self, form: LinForm, provenance: str = ""):
        if not form:
            return
        items = sorted(form.coeffs.items())
        lead = items[0][1]
        key = tuple((i, c / lead) for i, c in items)
        if key in self._seen:
            return
        self._seen.add(key)
        self.rows.append((form, provenance))

    def matrix(self) -> list[dict[int, Fraction]]:
        return [{i - 1: c for i, c in form.coeffs.items()} for form, _ in self.rows]

    def rank(self) -> int:
        from .relations import _rref

        return len(_rref(self.matrix(), self.n_unknowns))

    def contains_row(self, form: LinForm) -> bool:
        """True iff the row lies in the row space of the system."""
        from .relations import _rref

        base = self.rank()
        rows = self.matrix() + [{i - 1: c for i, c in form.coeffs.items()}]
        return len(_rref(rows, self.n_unknowns)) == base


def invariance_system(
    E: SymbolicSum, l_range, registry: RelationRegistry
) -> LinearSystem:
    """Impose that every operator in ``l_range`` annihilates E modulo
    the known relations of each target ambient."""
    unknowns = E.unknowns()
    system = LinearSystem(max(unknowns, default=0))
    for l in l_range:
        image = apply_r(E, l)
        coords = registry.normal_coords(image.terms())
        for key in sorted(coords):
            prov = "l=%d %s" % (l, _ambient_of_key(key))
            system.add_row(coords[key], prov)
    return system


def _ambient_of_key(key) -> str:
    return "x".join("(%d,%d,%d)" % (g, len(labels), k) for g, labels, k, _ in key)


def solve_nullspace(system: LinearSystem) -> list[tuple[Fraction, ...]]:
    """Basis of the exact solution space, one vector per free unknown.

    Pivots are chosen greedily from the lowest unknown index, so the
    free unknowns sit as high as the system allows; the basis vector
    for a free unknown sets it to 1 and the other free unknowns to 0.
    """
    from .relations import _rref

    n = system.n_unknowns
    pivots = _rref(system.matrix(), n)
    pivot_cols = {col: row for col, row in pivots}
    free = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for col, row in pivots:
            vec[col] = -row.get(f, Fraction(0))
        basis.append(tuple(vec))
    return basis


@dataclass
class EquationCandidate:
    vector: tuple[Fraction, ...]
    formal_sum: FormalSum
    trivial: bool


def _specialize(E: SymbolicSum, vector) -> FormalSum:
    assignment = {i + 1: vector[i] for i in range(len(vector))}
    return E.specialize(assignment)


def filter_trivial(
    solutions, E: SymbolicSum, registry: RelationRegistry
) -> list[EquationCandidate]:
    """Split nullspace directions into combinations of known relations
    and new equation candidates.

    The directions reducing to zero modulo the registry form a
    subspace; candidates are representatives of the quotient, reduced
    against the trivial subspace and scaled to a primitive integer
    vector with positive leading entry.
    """
    from .relations import _rref

    solutions = [tuple(v) for v in solutions if any(v)]
    if not solutions:
        return []
    n = len(solutions[0])
    # coordinates of each unknown's class modulo the induced relations
    # of the source ambient (an incomplete quotient by design: a
    # direction is trivial iff it is a consequence of inductive data)
    class_coords = {}
    for i in E.unknowns():
        probe = [Fraction(0)] * n
        probe[i - 1] = Fraction(1)
        class_coords[i] = registry.normal_coords(
            _specialize(E, probe).terms(), allow_incomplete=True
        )
    keys = sorted({k for c in class_coords.values() for k in c})
    key_pos = {k: p for p, k in enumerate(keys)}

    def reduction_vector(vec):
        acc: dict[int, Fraction] = {}
        for i, x in enumerate(vec, start=1):
            if not x:
                continue
            for kk, c in class_coords.get(i, {}).items():
                p = key_pos[kk]
                acc[p] = acc.get(p, Fraction(0)) + x * c
        return {p: c for p, c in acc.items() if c}

    # trivial subspace: combinations x of the solutions whose class
    # reduces to zero; one linear condition per normal-form coordinate
    d = len(solutions)
    rows: list[dict[int, Fraction]] = []
    reductions = [reduction_vector(vec) for vec in solutions]
    for p in range(len(keys)):
        row = {j: rv[p] for j, rv in enumerate(reductions) if p in rv}
        if row:
            rows.append(row)
    pivots = _rref(rows, d)
    pivot_cols = {col for col, _ in pivots}
    trivial_vecs = []
    for f in [c for c in range(d) if c not in pivot_cols]:
        coeffs = [Fraction(0)] * d
        coeffs[f] = Fraction(1)
        for col, row in pivots:
            coeffs[col] = -row.get(f, Fraction(0))
        vec = [Fraction(0)] * n
        for c, sol in zip(coeffs, solutions):
            if c:
                for i, x in enumerate(sol):
                    vec[i] += c * x
        trivial_vecs.append(vec)

    out: list[EquationCandidate] = []
    for v in trivial_vecs:
        vec = _normalize_vector(v)
        out.append(EquationCandidate(vec, _specialize(E, vec), trivial=True))

    # candidates: solutions reduced against the trivial span, kept only
    # while they grow the joint rank
    stack = [{i: x for i, x in enumerate(v) if x} for v in trivial_vecs]
    tpiv = _rref([dict(r) for r in stack], n)
    for vec in solutions:
        row = {i: x for i, x in enumerate(vec) if x}
        for col, prow in tpiv:
            f = row.get(col)
            if f:
                for c, x in prow.items():
                    row[c] = row.get(c, Fraction(0)) - f * x
                    if not row[c]:
                        del row[c]
        if not row:
            continue
        base = len(_rref([dict(r) for r in stack], n))
        if len(_rref([dict(r) for r in stack] + [dict(row)], n)) == base:
            continue
        stack.append(row)
        full = [Fraction(0)] * n
        for i, x in row.items():
            full[i] = x
        cand = _normalize_vector(full)
        out.append(EquationCandidate(cand, _specialize(E, cand), trivial=False))
    return out


def _normalize_vector(vec) -> tuple[Fraction, ...]:
    """Primitive integer vector, first nonzero entry positive."""
    nz = [x for x in vec if x]
    if not nz:
        return tuple(vec)
    from math import gcd

    denom = 1
    for x in nz:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [x * denom for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, int(x))
    sign = 1 if next(x for x in ints if x) > 0 else -1
    return tuple(Fraction(int(x) * sign, g) for x in ints)


def check_invariance(E: FormalSum, l_range, registry: RelationRegistry):
    """Per-l residual normal forms of the operator images of E."""
    out = {}
    for l in l_range:
        image = apply_r(E, l)
        out[l] = registry.normal_form(image)
    return out


def operator_index_bound(g: int, n: int, k: int) -> int:
    """Largest l the dimension bound allows: images vanish identically
    once k + l exceeds 3g - 3 + n."""
    return max(0, 3 * g - 3 + n - k)


@dataclass
class FindReport:
    ambient: tuple[int, int, int]
    classes: list[FormalSum]
    system: LinearSystem | None
    nullspace: list[tuple[Fraction, ...]]
    candidates: list[EquationCandidate]
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = ["AMBIENT (%d,%d,%d)" % self.ambient]
        out.append("CLASSES %d" % len(self.classes))
        if self.system is not None:
            out.append(
                "SYSTEM rows=%d rank=%d" % (len(self.system.rows), self.system.rank())
            )
            for form, prov in self.system.rows:
                out.append("ROW %s %s" % (prov, form))
        out.append("NULLSPACE dim=%d" % len(self.nullspace))
        trivial = sum(1 for c in self.candidates if c.trivial)
        out.append("TRIVIAL dim=%d" % trivial)
        for note in self.notes:
            out.append("NOTE %s" % note)
        return out


def find_equations(
    g: int,
    n: int,
    k: int,
    registry: RelationRegistry | None = None,
    lmax: int | None = None,
    symmetrized: bool = True,
    decorations: str = "none",
) -> FindReport:
    """Run the whole discovery pipeline for one ambient."""
    registry = registry or RelationRegistry()
    dim = 3 * g - 3 + n
    if k < 0 or k > dim:
        raise ValueError("codimension %d out of range for (%d,%d)" % (k, g, n))
    points = set(range(1, n + 1)) if symmetrized else None
    reps = enumerate_classes(g, n, k, decorations=decorations, symmetrize_points=points)
    classes = [
        symmetrize(r, points) if points else FormalSum.single(r) for r in reps
    ]
    E = general_element(classes)
    bound = operator_index_bound(g, n, k)
    L = bound if lmax is None else lmax
    notes = []
    if k >= dim:
        # top codimension is inductive data; no invariance conditions exist
        notes.append("top codimension: rank Q, no new equations")
        return FindReport((g, n, k), classes, None, [], [], notes)
    system = invariance_system(E, range(1, L + 1), registry)
    nullspace = solve_nullspace(system)
    candidates = filter_trivial(nullspace, E, registry)
    return FindReport((g, n, k), classes, system, nullspace, candidates, notes)
