"""Augmentation towers and the splitting of algebras over primitively generated operads."""

from fractions import Fraction

from opcalc.algebras import FreeAlgebra, layer_compare, quotient_algebra, split_algebra, tower
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad

C = FreeAlgebra(builtin_operad("lie", 5), GradedVectorSpace({1: 2}), 5)
print("free Lie algebra on two generators:", C.dims())
for mode in ("direct", "derived"):
    T = tower(C, 3, mode)
    print(f"  {mode:8s} I/I^n:", {n: d for n, d in T.quotient_dims.items()})
for n in (2, 3):
    print(f"  layer {n} matches lie(n) ⊗ Q^n:", layer_compare(C, n)[0])
print("  split:", split_algebra(C).isomorphism)

# Killing x² in the free commutative algebra on x breaks the splitting exactly at layer 2, degree 2.
D = quotient_algebra(FreeAlgebra(builtin_operad("com", 5), GradedVectorSpace({1: 1}), 5), [{1: Fraction(1)}])
rep = split_algebra(D)
print("K[x]/x²: split", rep.isomorphism, "witness (layer, degree)", rep.witness)
