"""A walk through the decorated-graph layer.

Run:  python3 demos/tour_of_graphs.py
"""

from tautrel import (
    DecoratedGraph,
    Leg,
    Vertex,
    automorphism_count,
    canonicalize,
    dimension,
    format_graph,
    parse_graph,
    symmetrize,
    total_genus,
    validate,
)

# A nodal curve: two rational tails carrying the four marked points,
# both attached to an elliptic bridge.  In bracket notation every
# vertex is one bracket, shared e-names are the nodes.
example = parse_graph("<1 2 e0>_0 <3 4 e1>_0 <e0 e1>_1")
print("graph          ", format_graph(example))
print("total genus    ", total_genus(example))          # 0 + 0 + 1, tree
print("dimension      ", dimension(example))            # moduli of the stratum
print("codimension    ", example.codimension(), "in the (1,4) ambient")
print()

# Stability and the dimension filter are checks, not constructors:
# validate reports violations instead of raising.
too_small = DecoratedGraph((Vertex(0),), (Leg(0, 1), Leg(0, 2)))
print("2g-2+n = 0 case:", validate(too_small))
negative = parse_graph("<1 2 3^1>_0")
print("psi^1 on a 3-valent rational vertex:", validate(negative))
print()

# Isomorphism fixes external labels but not internal names or vertex
# order; canonical forms make that quotient computable.
a = parse_graph("<1 2 e0>_0 <3 4 e1>_0 <e0 e1>_1")
b = parse_graph("<e7 e3>_1 <3 4 e3>_0 <1 2 e7>_0")
print("relabelled copy canonical-equal:", canonicalize(a) == canonicalize(b))

# A loop has a half-edge swap; parallel node-edges can be exchanged.
print("aut of the one-loop vertex   ", automorphism_count(parse_graph("<1 e0 e0>_0")))
print("aut of a banana (two edges)  ", automorphism_count(parse_graph("<1 e0 e1>_0 <2 e0 e1>_0")))
print("aut of the example graph     ", automorphism_count(example))
print()

# Symmetrising over marked points merges isomorphic relabellings: the
# 24 permutations of the example collapse onto 3 graphs of weight 8.
orbit = symmetrize(example, {1, 2, 3, 4})
print("S4-symmetrisation of the example:")
for graph, coeff in orbit.terms():
    print("  %2s * %s" % (coeff, format_graph(graph)))
