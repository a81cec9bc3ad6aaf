"""The three graph surgeries and the combined operators.

Run:  python3 demos/operator_gallery.py
"""

from tautrel import (
    FormalSum,
    apply_r,
    cut_edges,
    dimension,
    format_sum,
    parse_graph,
    reduce_genus,
    split_vertices,
)

example = parse_graph("<1 2 e0>_0 <3 4 e1>_0 <e0 e1>_1")
print("input:", format_sum(FormalSum.single(example)), " dim", dimension(example))
print()

# Cutting an edge frees two half-edges, labelled 5 and 6 both ways,
# one of them picking up an extra psi power.  Results that fail the
# stability or dimension filter are silently dropped; here the terms
# with the psi on a 3-valent rational tail die.
print("cut edges, l=1:")
for g, c in cut_edges(example, 1, 5, 6).terms():
    print("  %4s * %s" % (c, format_sum(FormalSum.single(g))))
print()

# Genus reduction and vertex splitting act on the positive-genus
# vertex; both lower the total dimension by exactly l.
print("genus reduction, l=1:")
for g, c in reduce_genus(example, 1, 5, 6).terms():
    print("  %4s * %s" % (c, format_sum(FormalSum.single(g))))
print()
print("vertex splitting, l=1:")
for g, c in split_vertices(example, 1, 5, 6).terms():
    print("  %4s * %s" % (c, format_sum(FormalSum.single(g))))
print()

# The combined operator is linear and schedule-free; the two new
# labels are symmetric for odd l, antisymmetric for even l.
total = apply_r(FormalSum.single(example), 1)
print("combined operator, l=1: %d terms, all of dimension %d"
      % (len(total), dimension(example) - 1))
swap = {5: 6, 6: 5}
print("l=1 image symmetric under 5<->6:", total.relabel(swap) == total)
l2 = apply_r(FormalSum.single(example), 2)
print("l=2 image antisymmetric:        ", l2.relabel(swap) == l2.scale(-1))
print("l=3 exceeds the dimension bound:", apply_r(FormalSum.single(example), 3).is_zero())
