"""Cross effects, Taylor tower, differentials and the splitting construction."""

from math import comb

import pytest

from oracles import sym_dims, witt
from opcalc.calculus import (AnalyticFunctor, build_splitting, check_split_condition, coefficient, cross_effect,
                             cross_effect_recursion, derivative_at_zero_matches, differential, dnfa_identity, layer,
                             taylor_polynomial, taylor_projection, chain_rule)
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad

K1 = GradedVectorSpace({1: 1})
K0 = GradedVectorSpace({0: 1})


def F(name, N=4):
    return AnalyticFunctor(builtin_operad(name, N).seq, name=name)


def test_assoc_second_cross_effect_multilinear_part():
    cr = cross_effect(F("assoc"), [K1, K1], 2)
    assert cr.multilinear_dims() == {2: 2}          # xy, yx


def test_com_second_cross_effect():
    cr = cross_effect(F("com"), [K1, K1], 4)
    # x^a y^b with a, b ≥ 1
    assert cr.dims() == {2: 1, 3: 2, 4: 3}


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
def test_cross_effect_recursion(name):
    ok, lhs, rhs = cross_effect_recursion(F(name), [K1, K1, K1], 3)
    assert ok, (lhs, rhs)


def test_linearization_of_tensor_algebra():
    assert taylor_polynomial(F("assoc"), 1)(K1, 4).dims() == {1: 1}


def test_com_layer_three():
    assert layer(F("com"), 3)(K1, 4).dims() == {3: 1}


def test_taylor_projection_is_surjective():
    p = taylor_projection(F("lie"), 2, GradedVectorSpace({1: 2}), 4)
    assert p.rank() == p.target.total_dim


def test_com_differential():
    d = differential(F("com", 5), K1, K1, 5)
    assert d.dims() == {n: 1 for n in range(1, 6)}


@pytest.mark.parametrize("name", ["com", "assoc", "lie", "poisson(2)"])
def test_derivative_at_zero(name):
    assert derivative_at_zero_matches(F(name), GradedVectorSpace({1: 2}), 4)


@pytest.mark.parametrize("name", ["com", "assoc", "lie", "poisson(2)"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coefficient_recovers_component(name, n):
    f = F(name)
    M, iso = coefficient(f, n)
    assert iso.is_isomorphism()
    Mn = f.seq[n]
    for g_new, g_old in zip(M.gens, Mn.gens):
        assert iso @ g_new == g_old @ iso


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
def test_split_condition_and_splitting(name):
    X = GradedVectorSpace({1: 2})
    f = F(name)
    rep = check_split_condition(f, X, 3, 3)
    assert rep.ok
    sp = build_splitting(f, X, rep, 3, 3)
    assert sp.isomorphism
    assert sp.target_dims == taylor_polynomial(f, 3)(X, 3).dims()


def test_split_condition_assoc_rank_at_two():
    rep = check_split_condition(F("assoc"), K1, 2, 2)
    assert rep.multilinear_sections[2].rank() == 2


def test_com_splitting_dims():
    rep = check_split_condition(F("com"), K1, 3, 3)
    sp = build_splitting(F("com"), K1, rep, 3, 3)
    assert sp.isomorphism and sp.target_dims == {1: 1, 2: 1, 3: 1}


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_dnfa_identity(name, k, n):
    ok, lhs, _ = dnfa_identity(F(name), K1, n, k, 3)
    assert ok
    expected = {"com": comb(n + k - 1, k - 1), "assoc": k ** n, "lie": witt(n, k)}[name]
    assert lhs == ({n: expected} if expected else {})


def test_chain_rule_linear_term():
    assert chain_rule(F("lie"), F("assoc"))


def test_symmetric_powers_via_layers():
    X = GradedVectorSpace({1: 2})
    total = {}
    for n in range(1, 5):
        for d, x in layer(F("com"), n)(X, 4).dims().items():
            total[d] = total.get(d, 0) + x
    assert total == sym_dims(2, 4)
