"""Leray, Poincaré–Birkhoff–Witt and Hochschild–Kostant–Rosenberg at small degrees."""

from opcalc.algebras import (exterior_polynomial_data, heisenberg, hochschild_homology, leray_split, pbw_check,
                             polynomial_data)

for label, A, rule in (("Q[x], |x| = 2", polynomial_data(6, 2), "koszul"),
                       ("Λ(x) ⊗ Q[y]", exterior_polynomial_data(6), "koszul"),
                       ("Q[x], |x| = 1, ungraded signs", polynomial_data(6, 1), "plain")):
    rep = leray_split(A, 6, rule)
    print(f"{label:30s} free on indecomposables: {rep.isomorphism}  Q(A) = {rep.indecomposable_dims}")

# Under graded-commutative signs an odd x must square to zero, so Q[x] with |x| = 1 is not commutative.
print("Q[x], |x| = 1, koszul laws hold:", leray_split(polynomial_data(4, 1), 4, "koszul").laws_ok)

pbw = pbw_check(heisenberg(), 6)
print("U(heisenberg) dims:", [pbw.u_dims[d] for d in range(7)], "bijective:", pbw.symmetrization_bijective)

for k in (1, 2):
    rep = hochschild_homology(k, 3, 4)
    print(f"HH_* = Ω^* for {k} variables:", rep.agrees)
