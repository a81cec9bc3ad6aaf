import itertools
import random
from pathlib import Path

import pytest

from tautrel.graphs import DecoratedGraph, End, Leg, Vertex, canonicalize, is_valid
from tautrel.gwi import parse_graph
from tautrel.relations import RelationRegistry

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def registry():
    return RelationRegistry()


def conventional_strata():
    """The nine symmetrized (1,4,2) orbits in the conventional order."""
    lines = [
        l.strip()
        for l in (DATA / "strata_order_g1n4k2.gwi").read_text().splitlines()
        if l.strip() and not l.startswith("#")
    ]
    return [canonicalize(parse_graph(l)) for l in lines]


def orbit_index_map(reps):
    """Map 1-based enumeration index -> 1-based conventional index."""
    targets = conventional_strata()
    out = {}
    for i, rep in enumerate(reps, start=1):
        for j, tgt in enumerate(targets, start=1):
            for perm in itertools.permutations([1, 2, 3, 4]):
                if canonicalize(rep.relabel(dict(zip([1, 2, 3, 4], perm)))) == tgt:
                    out[i] = j
                    break
            if i in out:
                break
    return out


def random_stable_graph(rng: random.Random, max_half_edges=8, max_genus=2,
                        decorated=True):
    """A random connected valid decorated graph with external labels
    1..n, at most ``max_half_edges`` half-edges and total genus at
    most ``max_genus``."""
    for _ in range(500):
        nv = rng.choice([1, 1, 1, 2, 2, 3])
        genera = [rng.choice([0, 0, 0, 1, 1, 2]) for _ in range(nv)]
        n_legs = rng.randint(1, 5)
        leg_vertices = [rng.randrange(nv) for _ in range(n_legs)]
        n_edges = rng.randint(0, 3)
        ends = []
        for _ in range(n_edges):
            ends.append((rng.randrange(nv), rng.randrange(nv)))
        if n_legs + 2 * n_edges > max_half_edges:
            continue
        psi_budget = rng.choice([0, 0, 1, 1, 2]) if decorated else 0
        legs = []
        for i, v in enumerate(leg_vertices):
            p = rng.randint(0, psi_budget)
            psi_budget -= p
            legs.append(Leg(v, i + 1, p))
        edges = []
        for a, b in ends:
            pa = rng.randint(0, psi_budget)
            psi_budget -= pa
            edges.append((End(a, pa), End(b, 0)))
        kappas = [() for _ in range(nv)]
        if decorated and rng.random() < 0.3:
            kappas[rng.randrange(nv)] = (rng.choice([1, 1, 2]),)
        verts = tuple(Vertex(g, kp) for g, kp in zip(genera, kappas))
        cand = DecoratedGraph(verts, tuple(legs), tuple(edges))
        if not cand.is_connected():
            continue
        if cand.total_genus() > max_genus:
            continue
        if not is_valid(cand):
            continue
        return cand
    raise RuntimeError("random generator failed to produce a valid graph")


@pytest.fixture(scope="session")
def random_corpus():
    rng = random.Random(20240517)
    return [random_stable_graph(rng) for _ in range(500)]
