import itertools
import random

import pytest

from tautrel.graphs import (
    DecoratedGraph,
    End,
    Leg,
    Vertex,
    automorphism_count,
    canonicalize,
    dimension,
    is_isomorphic,
    symmetrize,
    total_genus,
    validate,
)
from tautrel.gwi import parse_graph

from conftest import random_stable_graph

EX = "<1 2 e0>_0 <3 4 e1>_0 <e0 e1>_1"


def test_total_genus_disconnected():
    g = DecoratedGraph((Vertex(0), Vertex(1)), (Leg(0, 1), Leg(0, 2), Leg(0, 3), Leg(1, 4)))
    assert total_genus(g) == 0


def test_total_genus_cycle():
    assert total_genus(parse_graph("<1 e0 e1>_0 <2 e0 e1>_0")) == 1


def test_total_genus_three_components():
    g = DecoratedGraph(
        (Vertex(0), Vertex(0), Vertex(0)),
        tuple(Leg(v, 3 * v + i) for v in range(3) for i in (1, 2, 3)),
    )
    assert total_genus(g) == -2


def test_dimension_examples():
    assert dimension(parse_graph(EX)) == 2
    assert parse_graph(EX).codimension() == 2
    assert dimension(parse_graph("<1 2 3^1>_0")) == -1
    smooth = DecoratedGraph((Vertex(2),), (Leg(0, 1), Leg(0, 2)))
    assert dimension(smooth) == 3 * 2 - 3 + 2


def test_validate_stability_boundary():
    g = DecoratedGraph((Vertex(0),), (Leg(0, 1), Leg(0, 2)))
    problems = validate(g)
    assert any("unstable" in p for p in problems)


def test_validate_negative_dimension():
    problems = validate(parse_graph("<1 2 3^1>_0"))
    assert any("dimension" in p for p in problems)


def test_validate_example_graph_ok():
    assert validate(parse_graph(EX)) == []


def test_validate_duplicate_labels():
    g = DecoratedGraph((Vertex(1),), (Leg(0, 1), Leg(0, 1)))
    assert any("duplicate" in p for p in validate(g))


def test_canonicalize_internal_relabel():
    a = parse_graph(EX)
    b = parse_graph("<1 2 e7>_0 <3 4 e3>_0 <e7 e3>_1")
    assert canonicalize(a) == canonicalize(b)


def test_canonicalize_external_labels_fixed():
    a = parse_graph(EX)
    b = parse_graph("<3 2 e0>_0 <1 4 e1>_0 <e0 e1>_1")
    assert canonicalize(a) != canonicalize(b)


def test_canonicalize_vertex_reorder():
    a = parse_graph(EX)
    b = parse_graph("<e0 e1>_1 <3 4 e1>_0 <1 2 e0>_0")
    assert canonicalize(a) == canonicalize(b)
    assert is_isomorphic(a, b)


def test_canonicalize_idempotent_on_random_graphs():
    rng = random.Random(7)
    for _ in range(60):
        g = random_stable_graph(rng)
        c = canonicalize(g)
        assert canonicalize(c) == c
        # shuffle vertices and check the orbit collapses
        order = list(range(g.n_vertices))
        rng.shuffle(order)
        pos = {v: i for i, v in enumerate(order)}
        shuffled = DecoratedGraph(
            tuple(g.vertices[v] for v in order),
            tuple(Leg(pos[l.vertex], l.label, l.psi) for l in g.legs),
            tuple((End(pos[e[0].vertex], e[0].psi), End(pos[e[1].vertex], e[1].psi)) for e in g.edges),
        )
        assert canonicalize(shuffled) == c
        assert dimension(shuffled) == dimension(g)


def _brute_force_automorphisms(g: DecoratedGraph) -> int:
    """Oracle: enumerate all (vertex, half-edge) bijections directly.

    Half-edges are (edge index, side) pairs; a bijection must map the
    half-edge set to itself preserving vertex assignment (through the
    vertex bijection), psi powers, and the edge pairing.
    """
    halves = [(i, s) for i, _ in enumerate(g.edges) for s in (0, 1)]
    count = 0
    for perm in itertools.permutations(range(g.n_vertices)):
        if any(g.vertices[v] != g.vertices[perm[v]] for v in range(g.n_vertices)):
            continue
        legs_by_vertex = {}
        ok = True
        for l in g.legs:
            legs_by_vertex.setdefault(l.vertex, set()).add((l.label, l.psi))
        for v, ls in legs_by_vertex.items():
            target = {(l.label, l.psi) for l in g.legs if l.vertex == perm[v]}
            if ls != target:
                ok = False
        if not ok:
            continue
        for assignment in itertools.permutations(halves):
            mapping = dict(zip(halves, assignment))
            good = True
            for (i, s), (j, t) in mapping.items():
                src = g.edges[i][s]
                dst = g.edges[j][t]
                if dst.vertex != perm[src.vertex] or dst.psi != src.psi:
                    good = False
                    break
            if good:
                # pairing must be preserved
                for i, _ in enumerate(g.edges):
                    a = mapping[(i, 0)]
                    b = mapping[(i, 1)]
                    if a[0] != b[0]:
                        good = False
                        break
            if good:
                count += 1
    return count


def test_automorphism_loop_graph():
    assert automorphism_count(parse_graph("<1 e0 e0>_0")) == 2


def test_automorphism_example_graph():
    assert automorphism_count(parse_graph(EX)) == 1


def test_automorphism_labeled_components():
    g = DecoratedGraph((Vertex(1), Vertex(1)), (Leg(0, 1), Leg(1, 2)))
    assert automorphism_count(g) == 1


def test_automorphism_fast_path_matches_brute_force():
    rng = random.Random(11)
    cases = [
        parse_graph("<1 e0 e0>_0"),
        parse_graph("<1 e0 e1>_0 <2 e0 e1>_0"),
        parse_graph("<1 e0 e0 e1 e1>_0"),
        parse_graph(EX),
        parse_graph("<1 e0 e1 e2>_0 <2 e0 e1 e2>_0"),
    ]
    while len(cases) < 15:
        g = random_stable_graph(rng, max_half_edges=6)
        if 2 * len(g.edges) <= 6:
            cases.append(g)
    for g in cases:
        assert automorphism_count(g) == _brute_force_automorphisms(g), g


def test_symmetrize_orbit():
    fs = symmetrize(parse_graph(EX), {1, 2, 3, 4})
    assert len(fs) == 3
    assert all(c == 8 for _, c in fs.terms())


def test_symmetrize_empty_set():
    fs = symmetrize(parse_graph(EX), set())
    assert len(fs) == 1 and fs.terms()[0][1] == 1


def test_symmetrize_fully_symmetric():
    g = DecoratedGraph((Vertex(1),), (Leg(0, 1), Leg(0, 2), Leg(0, 3)))
    fs = symmetrize(g, {1, 2, 3})
    assert len(fs) == 1 and fs.terms()[0][1] == 6


def test_symmetrize_unknown_label():
    with pytest.raises(ValueError):
        symmetrize(parse_graph(EX), {1, 9})
