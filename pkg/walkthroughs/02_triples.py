"""From operads to triples and back; compatibility as a detector."""

from fractions import Fraction

from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad
from opcalc.triples import (associated_triple, builtin_triple, check_compatibility, check_triple_laws,
                            induced_operad, roundtrip_identity)

for name in ("tensor", "sym", "free-lie"):
    print(f"operad induced by {name:8s}: {induced_operad(builtin_triple(name, 5)).dims()[1:]}")

for name in ("com", "assoc", "lie", "poisson(2)"):
    f = roundtrip_identity(builtin_operad(name, 4))
    print(f"roundtrip {name:11s} isomorphism: {f.is_isomorphism()}")

T = associated_triple(builtin_operad("assoc", 3))
print("triple laws:", check_triple_laws(T))
elem = T.composite_basis(2).elements[0]
bad = T.perturbed(2, elem, {0: Fraction(2)})
ok, report = check_compatibility(bad, GradedVectorSpace({1: 1}), 3)
print("perturbed triple compatible:", ok)
for c in report["components"]:
    print("  non-natural component", c)
