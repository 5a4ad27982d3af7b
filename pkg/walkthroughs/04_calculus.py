"""Cross effects, Taylor towers and the splitting of analytic functors."""

from opcalc.calculus import (AnalyticFunctor, build_splitting, check_split_condition, cross_effect, differential,
                             layer)
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad

X = GradedVectorSpace({1: 1})
T = AnalyticFunctor(builtin_operad("assoc", 4).seq, name="tensor")
print("cr_2 T(X, X) multilinear part:", cross_effect(T, [X, X], 2).multilinear_dims())
S = AnalyticFunctor(builtin_operad("com", 5).seq, name="sym")
print("D_3 S(X):", layer(S, 3)(X, 4).dims())
print("∇S(X; Y):", differential(S, X, X, 5).dims())

for name in ("com", "assoc", "lie"):
    F = AnalyticFunctor(builtin_operad(name, 4).seq, name=name)
    Y = GradedVectorSpace({1: 2})
    rep = check_split_condition(F, Y, 3, 3)
    sp = build_splitting(F, Y, rep, 3, 3)
    print(f"P_3 {name}(K²) ≅ D_1 ⊕ D_2 ⊕ D_3: {sp.isomorphism}  blocks {sp.block_dims}")
