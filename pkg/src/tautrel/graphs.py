"""Decorated dual graphs of stable curves.

A decorated graph records the topological type of a possibly
disconnected nodal curve together with cohomological decorations:
each vertex carries the geometric genus of a component and a monomial
in kappa classes, each half-edge carries a power of the cotangent psi
class.  Half-edges are either external (labelled marked points, fixed
by every isomorphism) or paired into internal edges (the nodes).

Internally a graph stores vertices by index, external half-edges as
``Leg(vertex, label, psi)`` records and internal edges as unordered
pairs of ``End(vertex, psi)`` records, so the "internal labels occur
exactly twice" invariant is structural.  Loops (both ends on one
vertex) are allowed; a loop contributes 2 to the valence and 1 to the
arithmetic genus.

The arithmetic genus of the whole (possibly disconnected) graph is

    sum of vertex genera + #edges - #vertices + #components
        + (#components - 1) corrections collapsed into the closed form
    g(C) = sum_v g_v + E - V + 1,

which agrees with ``sum g(C_i) - d + 1`` over the d components.

The dimension of a decorated graph is

    sum_v (3 g_v - 3 + valence(v)) - (total psi power) - (total kappa degree),

the kappa degree of kappa_a being a.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence


class Leg(NamedTuple):
    vertex: int
    label: int
    psi: int = 0


class End(NamedTuple):
    vertex: int
    psi: int = 0


# An edge is an unordered pair of ends, stored sorted.
Edge = tuple[End, End]


@dataclass(frozen=True)
class Vertex:
    """A curve component: geometric genus plus a kappa monomial.

    ``kappa`` is a multiset of positive subscripts; an entry a stands
    for one factor kappa_a.
    """

    genus: int
    kappa: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(sorted(self.kappa)))

    @property
    def kappa_degree(self) -> int:
        return sum(self.kappa)


@dataclass(frozen=True)
class DecoratedGraph:
    """Immutable decorated dual graph.

    The constructor normalises the representation (sorted kappa
    multisets, legs sorted by label, edge ends and edges sorted) but
    does not canonicalise the vertex order; see :func:`canonicalize`.
    """

    vertices: tuple[Vertex, ...]
    legs: tuple[Leg, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        verts = tuple(
            v if isinstance(v, Vertex) else Vertex(*v) for v in self.vertices
        )
        legs = tuple(sorted(Leg(*l) for l in self.legs))
        edges = []
        for e in self.edges:
            a, b = End(*e[0]), End(*e[1])
            edges.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        for l in self.legs:
            if not (0 <= l.vertex < len(verts)):
                raise ValueError("leg attached to missing vertex %r" % (l,))
        for e in self.edges:
            for end in e:
                if not (0 <= end.vertex < len(verts)):
                    raise ValueError("edge end on missing vertex %r" % (e,))

    # -- basic structure ------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def legs_at(self, v: int) -> list[Leg]:
        return [l for l in self.legs if l.vertex == v]

    def ends_at(self, v: int) -> list[tuple[int, int]]:
        """Indices ``(edge, side)`` of all edge ends at vertex v."""
        out = []
        for i, e in enumerate(self.edges):
            if e[0].vertex == v:
                out.append((i, 0))
            if e[1].vertex == v:
                out.append((i, 1))
        return out

    def valence(self, v: int) -> int:
        return len(self.legs_at(v)) + len(self.ends_at(v))

    def external_labels(self) -> tuple[int, ...]:
        return tuple(sorted(l.label for l in self.legs))

    def psi_total(self) -> int:
        return sum(l.psi for l in self.legs) + sum(
            e[0].psi + e[1].psi for e in self.edges
        )

    # -- genus / dimension ----------------------------------------------

    def total_genus(self) -> int:
        return (
            sum(v.genus for v in self.vertices)
            + len(self.edges)
            - len(self.vertices)
            + 1
        )

    def vertex_dimension(self, v: int) -> int:
        """Dimension of the decorated vertex moduli factor."""
        vert = self.vertices[v]
        dim = 3 * vert.genus - 3 + self.valence(v) - vert.kappa_degree
        dim -= sum(l.psi for l in self.legs_at(v))
        for i, side in self.ends_at(v):
            dim -= self.edges[i][side].psi
        return dim

    def dimension(self) -> int:
        return sum(self.vertex_dimension(v) for v in range(self.n_vertices))

    def ambient(self) -> tuple[int, int]:
        """Total (genus, number of external half-edges)."""
        return self.total_genus(), len(self.legs)

    def codimension(self) -> int:
        g, n = self.ambient()
        return (3 * g - 3 + n) - self.dimension()

    # -- components ------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Vertex index sets of the connected components, sorted."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e[0].vertex), find(e[1].vertex)
            if a != b:
                parent[a] = b
        groups = defaultdict(list)
        for v in range(self.n_vertices):
            groups[find(v)].append(v)
        return sorted(tuple(sorted(g)) for g in groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def subgraph(self, vertex_set: Sequence[int]) -> "DecoratedGraph":
        """Restriction to a union of connected components."""
        vs = sorted(vertex_set)
        pos = {v: i for i, v in enumerate(vs)}
        for e in self.edges:
            if (e[0].vertex in pos) != (e[1].vertex in pos):
                raise ValueError("vertex set cuts an edge; not a component union")
        return DecoratedGraph(
            tuple(self.vertices[v] for v in vs),
            tuple(Leg(pos[l.vertex], l.label, l.psi) for l in self.legs if l.vertex in pos),
            tuple(
                (End(pos[e[0].vertex], e[0].psi), End(pos[e[1].vertex], e[1].psi))
                for e in self.edges
                if e[0].vertex in pos
            ),
        )

    def component_graphs(self) -> list["DecoratedGraph"]:
        return [self.subgraph(c) for c in self.components()]

    # -- relabelling ------------------------------------------------------

    def relabel(self, mapping: Mapping[int, int]) -> "DecoratedGraph":
        """Rename external labels; labels not in the mapping stay put."""
        legs = tuple(
            Leg(l.vertex, mapping.get(l.label, l.label), l.psi) for l in self.legs
        )
        return DecoratedGraph(self.vertices, legs, self.edges)

    def __repr__(self) -> str:
        from .gwi import format_graph

        return "DecoratedGraph(%s)" % format_graph(self)

    def is_stable_vertex(self, v: int) -> bool:
        return 2 * self.vertices[v].genus - 2 + self.valence(v) > 0


def disjoint_union(graphs: Iterable[DecoratedGraph]) -> DecoratedGraph:
    verts: list[Vertex] = []
    legs: list[Leg] = []
    edges: list[Edge] = []
    for g in graphs:
        off = len(verts)
        verts.extend(g.vertices)
        legs.extend(Leg(l.vertex + off, l.label, l.psi) for l in g.legs)
        edges.extend(
            (End(e[0].vertex + off, e[0].psi), End(e[1].vertex + off, e[1].psi))
            for e in g.edges
        )
    return DecoratedGraph(tuple(verts), tuple(legs), tuple(edges))


# ---------------------------------------------------------------------------
# validation


def validate(g: DecoratedGraph) -> list[str]:
    """Return the list of violated invariants (empty means valid).

    Checked: nonnegative genera, kappa subscripts >= 1, nonnegative
    psi powers, pairwise distinct external labels, stability of every
    vertex, and nonnegative decorated dimension of every connected
    component.  Never raises.
    """
    problems = []
    for i, v in enumerate(g.vertices):
        if v.genus < 0:
            problems.append("vertex %d has negative genus %d" % (i, v.genus))
        for a in v.kappa:
            if a < 1:
                problems.append("vertex %d has kappa subscript %d < 1" % (i, a))
    labels = [l.label for l in g.legs]
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        problems.append("duplicate external labels %s" % (dup,))
    for l in g.legs:
        if l.psi < 0:
            problems.append("negative psi power on external %d" % l.label)
    for e in g.edges:
        if e[0].psi < 0 or e[1].psi < 0:
            problems.append("negative psi power on an edge end")
    for v in range(g.n_vertices):
        gv = g.vertices[v].genus
        val = g.valence(v)
        if gv >= 0 and not 2 * gv - 2 + val > 0:
            problems.append(
                "unstable vertex %d: 2*%d-2+%d = %d is not > 0"
                % (v, gv, val, 2 * gv - 2 + val)
            )
    if not problems:
        for comp in g.components():
            d = sum(g.vertex_dimension(v) for v in comp)
            if d < 0:
                problems.append(
                    "component %s has dimension %d < 0" % (list(comp), d)
                )
    return problems


def is_valid(g: DecoratedGraph) -> bool:
    return not validate(g)


def total_genus(g: DecoratedGraph) -> int:
    return g.total_genus()


def dimension(g: DecoratedGraph) -> int:
    return g.dimension()


# ---------------------------------------------------------------------------
# canonical form
#
# Isomorphisms fix external labels and may permute vertices, internal
# edges, and the two ends of an edge.  The canonical form is the
# vertex ordering minimising a total encoding, found by iterated
# colour refinement plus backtracking over tied colour classes.  In
# the sizes this engine targets (< 20 half-edges) the backtracking is
# negligible.


def _adjacency(g: DecoratedGraph):
    adj = defaultdict(list)
    for e in g.edges:
        a, b = e
        if a.vertex != b.vertex:
            adj[a.vertex].append((b.vertex, a.psi, b.psi))
            adj[b.vertex].append((a.vertex, b.psi, a.psi))
    return adj


def _initial_colors(g: DecoratedGraph):
    cols = []
    for v in range(g.n_vertices):
        vert = g.vertices[v]
        legs = tuple(sorted((l.label, l.psi) for l in g.legs_at(v)))
        loops = tuple(
            sorted(
                tuple(sorted((e[0].psi, e[1].psi)))
                for e in g.edges
                if e[0].vertex == v and e[1].vertex == v
            )
        )
        cols.append((vert.genus, vert.kappa, legs, loops, g.valence(v)))
    return _intern(cols)


def _intern(cols) -> list[int]:
    ranking = {c: i for i, c in enumerate(sorted(set(cols)))}
    return [ranking[c] for c in cols]


def _refine(g: DecoratedGraph, cols: list[int], adj) -> list[int]:
    while True:
        new = [
            (cols[v], tuple(sorted((cols[u], pv, pu) for u, pv, pu in adj[v])))
            for v in range(g.n_vertices)
        ]
        new = _intern(new)
        if len(set(new)) == len(set(cols)):
            return new
        cols = new


def _encode(g: DecoratedGraph, order: Sequence[int]):
    pos = {v: i for i, v in enumerate(order)}
    records = tuple(
        (
            g.vertices[v].genus,
            g.vertices[v].kappa,
            tuple(sorted((l.label, l.psi) for l in g.legs_at(v))),
        )
        for v in order
    )
    edges = []
    for e in g.edges:
        a = (pos[e[0].vertex], e[0].psi)
        b = (pos[e[1].vertex], e[1].psi)
        edges.append((a, b) if a <= b else (b, a))
    return (records, tuple(sorted(edges)))


def _canonical_order(g: DecoratedGraph):
    adj = _adjacency(g)
    best: list = [None, None]

    def rec(cols):
        classes = defaultdict(list)
        for v, c in enumerate(cols):
            classes[c].append(v)
        multi = [c for c in sorted(classes) if len(classes[c]) > 1]
        if not multi:
            order = [classes[c][0] for c in sorted(classes)]
            enc = _encode(g, order)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, order
            return
        target = multi[0]
        for v in classes[target]:
            marked = [(c, 0 if u == v else 1) for u, c in enumerate(cols)]
            rec(_refine(g, _intern(marked), adj))

    rec(_refine(g, _initial_colors(g), adj))
    return best[0], best[1]


@lru_cache(maxsize=None)
def canonicalize(g: DecoratedGraph) -> DecoratedGraph:
    """Canonical representative of the isomorphism class of ``g``.

    Idempotent; two graphs are isomorphic iff their canonical forms
    are equal (as Python objects).
    """
    _, order = _canonical_order(g)
    pos = {v: i for i, v in enumerate(order)}
    return DecoratedGraph(
        tuple(g.vertices[v] for v in order),
        tuple(Leg(pos[l.vertex], l.label, l.psi) for l in g.legs),
        tuple(
            (End(pos[e[0].vertex], e[0].psi), End(pos[e[1].vertex], e[1].psi))
            for e in g.edges
        ),
    )


@lru_cache(maxsize=None)
def sort_key(g: DecoratedGraph) -> str:
    """Deterministic total order on graphs up to isomorphism
    (lexicographic on the canonical encoding)."""
    c = canonicalize(g)
    return repr(_encode(c, range(c.n_vertices)))


def is_isomorphic(a: DecoratedGraph, b: DecoratedGraph) -> bool:
    return canonicalize(a) == canonicalize(b)


# ---------------------------------------------------------------------------
# automorphisms


def automorphism_count(g: DecoratedGraph) -> int:
    """Order of the automorphism group fixing external labels.

    Counts pairs (vertex bijection, half-edge bijection) preserving
    genera, kappa, decorations and the edge pairing.  For a fixed
    valid vertex bijection the number of half-edge extensions is a
    product of factorials of parallel-edge multiplicities times 2 for
    every loop whose two ends carry equal psi powers; that factor is
    independent of the vertex bijection.
    """
    adj = _adjacency(g)
    cols = _refine(g, _initial_colors(g), adj)

    # multiset of edge types between each ordered vertex pair / at each vertex
    pair_types = defaultdict(lambda: defaultdict(int))
    loop_types = defaultdict(lambda: defaultdict(int))
    sym_loops = 0
    for e in g.edges:
        (a, b) = e
        if a.vertex == b.vertex:
            t = tuple(sorted((a.psi, b.psi)))
            loop_types[a.vertex][t] += 1
            if a.psi == b.psi:
                sym_loops += 1
        else:
            u, w = a.vertex, b.vertex
            pair_types[(u, w)][(a.psi, b.psi)] += 1
            pair_types[(w, u)][(b.psi, a.psi)] += 1

    factor = 1
    seen = set()
    for (u, w), types in pair_types.items():
        if (w, u) in seen:
            continue
        seen.add((u, w))
        for m in types.values():
            factor *= _factorial(m)
    for types in loop_types.values():
        for m in types.values():
            factor *= _factorial(m)
    factor *= 2 ** sym_loops

    classes = defaultdict(list)
    for v, c in enumerate(cols):
        classes[c].append(v)

    n = g.n_vertices
    count = 0
    for perm in _class_permutations(classes, n):
        ok = True
        for (u, w), types in pair_types.items():
            if dict(pair_types[(perm[u], perm[w])]) != dict(types):
                ok = False
                break
        if ok:
            for v, types in loop_types.items():
                if dict(loop_types[perm[v]]) != dict(types):
                    ok = False
                    break
        if ok:
            count += 1
    return count * factor


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def _class_permutations(classes, n):
    """All vertex bijections permuting each colour class within itself."""
    keys = sorted(classes)
    pools = [list(itertools.permutations(classes[k])) for k in keys]
    for combo in itertools.product(*pools):
        perm = [0] * n
        for k, images in zip(keys, combo):
            for src, dst in zip(classes[k], images):
                perm[src] = dst
        yield perm


# ---------------------------------------------------------------------------
# symmetrisation


def symmetrize(g: DecoratedGraph, points: Iterable[int]):
    """Sum of ``g`` over all permutations of the given external labels.

    Returns a FormalSum with |points|! total weight; isomorphic
    relabellings merge with multiplicity.
    """
    from .sums import FormalSum

    pts = sorted(points)
    have = set(g.external_labels())
    missing = [p for p in pts if p not in have]
    if missing:
        raise ValueError("unknown external labels %s" % missing)
    terms = []
    for perm in itertools.permutations(pts):
        mapping = dict(zip(pts, perm))
        terms.append((g.relabel(mapping), Fraction(1)))
    return FormalSum(terms)
