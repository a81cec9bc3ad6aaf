"""Exhaustive enumeration of decorated strata classes.

Strata of the moduli space of stable genus-g curves with marked
points 1..n are generated by iterated one-edge degenerations of the
smooth one-vertex graph: either a vertex splits into two vertices
joined by a new edge, or a vertex drops one genus and gains a loop.
Every stratum with E edges arises after E such moves, so a
breadth-first sweep with canonical deduplication is exhaustive.

Decorations (psi powers on half-edges, kappa monomials on vertices)
are then distributed over the slots so that the total decorated
codimension is k.  Decorated classes whose vertex factor would exceed
the dimension of its moduli factor are identically zero and are not
produced.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graphs import (
    DecoratedGraph,
    End,
    Leg,
    Vertex,
    canonicalize,
    sort_key,
)
from .operators import _apply_split


def _one_edge_degenerations(g: DecoratedGraph):
    out = []
    for v in range(g.n_vertices):
        vert = g.vertices[v]
        # non-separating: genus drops, loop appears
        if vert.genus >= 1:
            verts = list(g.vertices)
            verts[v] = Vertex(vert.genus - 1, vert.kappa)
            edges = list(g.edges) + [(End(v, 0), End(v, 0))]
            out.append(DecoratedGraph(tuple(verts), g.legs, tuple(edges)))
        # separating: split the vertex, join the halves by an edge
        leg_idx = [k for k, leg in enumerate(g.legs) if leg.vertex == v]
        end_idx = g.ends_at(v)
        slots = [("leg", k) for k in leg_idx] + [("end", e) for e in end_idx]
        for g1 in range(vert.genus + 1):
            g2 = vert.genus - g1
            for sides in itertools.product((0, 1), repeat=len(slots)):
                side_of = dict(zip(slots, sides))
                split = _split_with_edge(g, v, g1, g2, side_of)
                if all(split.is_stable_vertex(u) for u in range(split.n_vertices)):
                    out.append(split)
    return out


def _split_with_edge(g, v, g1, g2, side_of):
    split = _apply_split(
        g, v, g1, g2, g.vertices[v].kappa, (), side_of,
        (Leg(0, -1, 0), Leg(0, -2, 0)),
    )
    # replace the two placeholder legs by a connecting edge
    legs = tuple(l for l in split.legs if l.label > 0)
    (a,) = [l for l in split.legs if l.label == -1]
    (b,) = [l for l in split.legs if l.label == -2]
    edges = split.edges + ((End(a.vertex, 0), End(b.vertex, 0)),)
    return DecoratedGraph(split.vertices, legs, edges)


@lru_cache(maxsize=None)
def stable_graphs(g: int, n: int, num_edges: int) -> tuple[DecoratedGraph, ...]:
    """All connected stable graphs of genus g with legs 1..n and the
    given number of edges, canonical and sorted."""
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError("no stable curves for (g, n) = (%d, %d)" % (g, n))
    if num_edges == 0:
        return (canonicalize(DecoratedGraph((Vertex(g),), tuple(Leg(0, a) for a in range(1, n + 1)))),)
    level = set()
    for prev in stable_graphs(g, n, num_edges - 1):
        for nxt in _one_edge_degenerations(prev):
            level.add(canonicalize(nxt))
    return tuple(sorted(level, key=sort_key))


def _vertex_decorations(graph: DecoratedGraph, budget: int, with_kappa: bool):
    """Distributions of psi powers over slots and kappa over vertices,
    total degree == budget, keeping every vertex factor nonnegative."""
    slots = []
    for v in range(graph.n_vertices):
        for k, leg in enumerate(graph.legs):
            if leg.vertex == v:
                slots.append(("leg", k))
        for e in graph.ends_at(v):
            slots.append(("end", e))
    results = []

    def kappa_choices(v: int, deg: int):
        # multisets of positive integers with given total
        if not with_kappa:
            return [()] if deg == 0 else []
        return [tuple(p) for p in _partitions(deg)]

    def assign(idx, remaining, psi_of):
        if idx == len(slots):
            if with_kappa:
                for kappas in _kappa_assignments(graph, remaining):
                    results.append((dict(psi_of), kappas))
            elif remaining == 0:
                results.append((dict(psi_of), {}))
            return
        for p in range(remaining + 1):
            psi_of[slots[idx]] = p
            assign(idx + 1, remaining - p, psi_of)
        del psi_of[slots[idx]]

    def _kappa_assignments(graph, deg):
        vs = list(range(graph.n_vertices))

        def rec(i, remaining, acc):
            if i == len(vs):
                if remaining == 0:
                    yield dict(acc)
                return
            for d in range(remaining + 1):
                for part in kappa_choices(vs[i], d):
                    acc[vs[i]] = part
                    yield from rec(i + 1, remaining - d, acc)
            acc.pop(vs[i], None)

        yield from rec(0, deg, {})

    assign(0, budget, {})
    out = []
    for psi_of, kappas in results:
        verts = [
            Vertex(vert.genus, kappas.get(v, ()))
            for v, vert in enumerate(graph.vertices)
        ]
        legs = [
            Leg(l.vertex, l.label, psi_of.get(("leg", k), 0))
            for k, l in enumerate(graph.legs)
        ]
        edges = []
        for idx, e in enumerate(graph.edges):
            edges.append(
                (
                    End(e[0].vertex, psi_of.get(("end", (idx, 0)), 0)),
                    End(e[1].vertex, psi_of.get(("end", (idx, 1)), 0)),
                )
            )
        cand = DecoratedGraph(tuple(verts), tuple(legs), tuple(edges))
        if all(cand.vertex_dimension(v) >= 0 for v in range(cand.n_vertices)):
            out.append(cand)
    return out


def _partitions(n: int, max_part: int | None = None):
    if n == 0:
        yield []
        return
    if max_part is None:
        max_part = n
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield [first] + rest


def enumerate_classes(
    g: int,
    n: int,
    k: int,
    decorations: str = "none",
    symmetrize_points=None,
) -> list[DecoratedGraph]:
    """All decorated classes of codimension k on the connected ambient.

    ``decorations``: 'none' (boundary strata only), 'psi', or
    'psi_kappa'.  With ``symmetrize_points`` the list keeps one
    representative per orbit under permutations of those labels.
    """
    if decorations not in ("none", "psi", "psi_kappa"):
        raise ValueError("unknown decoration mode %r" % decorations)
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError("no stable curves for (g, n) = (%d, %d)" % (g, n))
    if k < 0 or k > 3 * g - 3 + n:
        return []
    found = set()
    max_edges = k if decorations == "none" else k
    lo_edges = k if decorations == "none" else 0
    for num_edges in range(lo_edges, max_edges + 1):
        for graph in stable_graphs(g, n, num_edges):
            if decorations == "none":
                found.add(graph)
            else:
                for dec in _vertex_decorations(
                    graph, k - num_edges, decorations == "psi_kappa"
                ):
                    found.add(canonicalize(dec))
    if symmetrize_points:
        pts = sorted(symmetrize_points)
        reps = {}
        for graph in found:
            orbit = min(
                (
                    sort_key(canonicalize(graph.relabel(dict(zip(pts, perm)))))
                    for perm in itertools.permutations(pts)
                )
            )
            if orbit not in reps or sort_key(graph) < sort_key(reps[orbit]):
                reps[orbit] = graph
        found = set(reps.values())
    return sorted(found, key=sort_key)
