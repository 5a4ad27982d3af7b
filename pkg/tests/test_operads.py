"""Operad laws, free and quadratic operads, primitive generation, morphisms."""

from fractions import Fraction
from math import comb, factorial

import pytest

from opcalc.exactlin import GradedLinearMap
from opcalc.operads import (FreeOperad, builtin_operad, check_operad_laws, expression_morphism,
                            is_primitively_generated, quadratic_preset, quotient_comparison)
from opcalc.operads.free import RelationsNotStable, quadratic_operad
from opcalc.symrep import regular_module, sign_module, trivial_module, zero_module
from opcalc.symseq import SymmetricSequence

NAMES = ["com", "assoc", "lie", "poisson(2)"]


def double_factorial(m):
    return 1 if m <= 0 else m * double_factorial(m - 2)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("name", NAMES)
def test_builtin_laws_through_arity_5(name):
    assert check_operad_laws(builtin_operad(name, 5)) == []


def test_poisson_brackets_odd_under_koszul():
    p = builtin_operad("poisson(2)", 3)
    assert p.seq.degrees(2) == [0, 1]
    with pytest.raises(ValueError):
        builtin_operad("poisson(2)", 3, "plain")


@pytest.mark.parametrize("name,k,js,idx", [
    ("assoc", 2, (1, 2), (0, 0, 1)),
    ("lie", 2, (2, 1), (0, 0, 0)),
    ("com", 2, (1, 1), (0, 0, 0)),
])
def test_single_entry_corruption_is_detected(name, k, js, idx):
    a = builtin_operad(name, 4).to_table()
    n = sum(js)
    bad = a.with_entry(k, js, idx, {0: Fraction(7)} if a.dim(n) == 1 else {1: Fraction(3)})
    report = check_operad_laws(bad)
    assert report
    assert all(set(r) >= {"law", "signature", "rank"} for r in report)


def test_table_operad_agrees_with_builtin():
    a = builtin_operad("lie", 4)
    t = a.to_table()
    for k, js in a.signatures():
        assert t.gamma_table(k, js) == a.gamma_table(k, js)


def _seq(*mods):
    return SymmetricSequence([zero_module(0)] + list(mods), "plain")


def test_free_operad_trivial_binary_counts_trees():
    F = FreeOperad(_seq(zero_module(1), trivial_module(2)), 5)
    assert F.dims()[1:] == [1] + [double_factorial(2 * n - 3) for n in range(2, 6)]
    assert check_operad_laws(F, 4) == []


def test_free_operad_regular_binary_counts_planar_trees():
    F = FreeOperad(_seq(zero_module(1), regular_module(2)), 4)
    assert F.dims()[2:] == [factorial(n) * catalan(n - 1) for n in range(2, 5)]


def test_free_operad_universal_property():
    g = sign_module(2)
    F = FreeOperad(_seq(zero_module(1), g), 4)
    lie = builtin_operad("lie", 4)
    ext = F.extend(lie, {2: GradedLinearMap.identity(g.space)})
    assert ext.check() == []


@pytest.mark.parametrize("name", ["com", "lie", "assoc"])
def test_quadratic_presentations(name):
    q = quadratic_preset(name, 5)
    ref = builtin_operad(name, 5)
    assert q.dims() == ref.dims()
    assert check_operad_laws(q, 4) == []
    f = quotient_comparison(q, ref, GradedLinearMap.identity(ref.seq[2].space))
    assert f.check() == [] and f.is_isomorphism()


def test_non_stable_relations_rejected():
    g = regular_module(2)
    # a single planar tree is not a Σ_3-stable relation space on its own
    with pytest.raises(RelationsNotStable):
        quadratic_operad(g, [{0: Fraction(1)}], 4)


def test_lie_to_assoc_morphism():
    f = expression_morphism(builtin_operad("lie", 5), builtin_operad("assoc", 5))
    assert f.check() == []
    assert all(f.components[n].rank() == builtin_operad("lie", 5).dim(n) for n in range(1, 6))


def test_com_to_poisson_morphism():
    f = expression_morphism(builtin_operad("com", 4), builtin_operad("poisson(2)", 4))
    assert f.check() == []


@pytest.mark.parametrize("name", ["com", "assoc", "lie", "poisson(2)"])
def test_builtins_primitively_generated(name):
    ok, witness = is_primitively_generated(builtin_operad(name, 4))
    assert ok and witness is None


def test_arity_three_generator_not_primitively_generated():
    F = FreeOperad(_seq(zero_module(1), zero_module(2), trivial_module(3)), 4)
    ok, witness = is_primitively_generated(F)
    assert not ok
    assert witness == {"n": 2, "dim": 1, "degree": 3}
