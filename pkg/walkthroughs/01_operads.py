"""Builtin operads, their laws, and a free operad that is not primitively generated."""

from opcalc.operads import FreeOperad, builtin_operad, check_operad_laws, is_primitively_generated, quadratic_preset
from opcalc.symrep import trivial_module, zero_module
from opcalc.symseq import SymmetricSequence

for name in ("com", "assoc", "lie", "poisson(2)"):
    a = builtin_operad(name, 5)
    print(f"{name:11s} dims {a.dims()[1:]}  law failures: {len(check_operad_laws(a))}")

# The quadratic presentation of Lie (one antisymmetric generator, Jacobi) has the same dimensions.
q = quadratic_preset("lie", 5)
print("quadratic lie dims", q.dims()[1:])

# An operad generated in arity 3 cannot reach arity 2 products: the test names the first gap.
gens = SymmetricSequence([zero_module(0), zero_module(1), zero_module(2), trivial_module(3)], "plain")
print("arity-3 generator:", is_primitively_generated(FreeOperad(gens, 4)))
