"""Persisting relations and inducing equations from known ones.

Run:  python3 demos/registry_and_induced.py
"""

import tempfile
from pathlib import Path

from tautrel import (
    RelationRegistry,
    format_sum,
    from_automorphism_convention,
    induce_by_forgetful,
    induce_by_gluing,
    parse_sum,
    to_automorphism_convention,
)
from tautrel.data_files import genus1_four_point_equation

root = Path(tempfile.mkdtemp(prefix="taut-registry-"))
reg = RelationRegistry(root)

# Relation files are one gwi line per relation with a header naming
# the half-edge convention.
reg.relations(0, 4, 1)
path = root / "g0n4k1.gwi"
print("wrote", path)
print(path.read_text())

# The one-point genus-1 recursion pulled back along a forgetful map is
# again a relation, and stays one after a second pullback.
rel = parse_sum("<1^1>_1 - 1/24*<1 e0 e0>_0")
pulled = induce_by_forgetful(rel)
print("pullback to two points:", format_sum(pulled))
print("  reduces to zero:", reg.normal_form(pulled).is_zero())
print()

# Gluing two marked points of the genus-1 four-point equation gives an
# induced equation one genus up (here: only structural checks, the
# genus-2 quotient is outside the shipped inductive range).
eq = genus1_four_point_equation()
glued = induce_by_gluing(eq, 1, 2)
genus = {g.total_genus() for g, _ in glued.terms()}
print("glued equation lives in genus", genus, "with", len(glued), "terms")
print()

# Conventions: strata weighted by automorphisms differ by |Aut| per
# graph; the converters move between the two readings, and imported
# registry files may declare "# convention: automorphism-weighted".
loop = parse_sum("<1 e0 e0>_0")
print("glued-half-edges reading:   ", format_sum(loop))
print("automorphism-weighted twin: ", format_sum(to_automorphism_convention(loop)))
print("round trip ok:", from_automorphism_convention(to_automorphism_convention(loop)) == loop)
