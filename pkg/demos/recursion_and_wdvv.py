"""Rewriting against the known relations and reducing to normal form.

Run:  python3 demos/recursion_and_wdvv.py
"""

from tautrel import (
    FormalSum,
    RelationRegistry,
    format_sum,
    genus0_trr_rewrite,
    genus1_trr_rewrite,
    parse_graph,
    symmetrize,
    wdvv_relations,
)

reg = RelationRegistry()

# Genus-0 recursion: a psi power on a rational vertex is traded for
# boundary divisors separating it from two reference points.
e = FormalSum.single(parse_graph("<1^1 2 3 4>_0"))
print("psi_1 on the 4-point rational curve:")
print("   ", format_sum(genus0_trr_rewrite(e)))

# Genus-1 recursion: the constant in front of the nonseparating term
# is exactly 1/24.
e = FormalSum.single(parse_graph("<1^1 2>_1"))
print("psi_1 on the 2-point elliptic curve:")
print("   ", format_sum(genus1_trr_rewrite(e)))
print()

# The four-point relation on the smooth 4-point curve equates the
# three ways of pairing the points; its derivatives range over hosts.
host = parse_graph("<1 2 3 4>_0")
for rel in wdvv_relations(host, 0):
    print("relation:", format_sum(rel))
print()

# The five two-component strata with points {3,4} and one extra point,
# symmetrised in 3,4: the four-point relations cut their span from
# five to three dimensions.
v = {
    1: "<3 4 e0>_0 <5 e1 e1 e0>_0",
    2: "<3 5 e0>_0 <4 e1 e1 e0>_0",
    3: "<3 e0 e1>_0 <4 5 e0 e1>_0",
    4: "<5 e0 e1>_0 <3 4 e0 e1>_0",
    5: "<e0 e0 e1>_0 <3 4 5 e1>_0",
}
V = {i: symmetrize(parse_graph(s), {3, 4}) for i, s in v.items()}
print("v1 + v5 - 2 v3 reduces to zero:",
      reg.normal_form(V[1] + V[5] - V[3].scale(2)).is_zero())
print("v2 + v5 - v3 - v4 reduces to zero:",
      reg.normal_form(V[2] + V[5] - V[3] - V[4]).is_zero())
basis = reg.span_basis([V[i] for i in range(1, 6)])
print("basis of the span has", len(basis), "elements")
print()

# Normal forms expose the quotient: every ambient gets a deterministic
# basis of its strata modulo the generated relations.
rb = reg.relation_basis(0, 5, 2)
print("(0,5,2): %d strata collapse to a %d-element basis"
      % (len(rb.classes), len(rb.basis)))
nf = reg.normal_form(V[1])
print("normal form of v1 rewritten over basis classes:")
print("   ", format_sum(nf.as_formal_sum()))
