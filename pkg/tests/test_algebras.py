"""Algebras over operads: laws, bar resolution, towers, splittings, classical corollaries."""

from fractions import Fraction

import pytest

from oracles import graded_sym_dims, heisenberg_series, omega_rank, sym_dims, witt
from opcalc.algebras import (FreeAlgebra, NotPrimitivelyGenerated, bar_resolution, check_algebra_laws,
                             exterior_polynomial_data, heisenberg, hochschild_homology, indecomposables,
                             layer_compare, leray_split, pbw_check, polynomial_data, quotient_algebra,
                             split_algebra, tower)
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import FreeOperad, builtin_operad
from opcalc.symrep import trivial_module, zero_module
from opcalc.symseq import SymmetricSequence

NAMES = ["com", "assoc", "lie", "poisson(2)"]


def free(name, k=1, D=4, deg=1):
    return FreeAlgebra(builtin_operad(name, D), GradedVectorSpace({deg: k}), D)


@pytest.mark.parametrize("name", NAMES)
def test_free_algebra_laws(name):
    assert check_algebra_laws(free(name, 2, 4)) == []


def test_free_lie_algebra_dims():
    assert free("lie", 2, 5).dims() == {n: witt(n, 2) for n in range(1, 6)}


def test_free_com_algebra_dims():
    assert free("com", 3, 4).dims() == sym_dims(3, 4)


def test_zeroed_binary_product_is_detected():
    C = free("com", 1, 4)
    broken = C.with_theta(lambda k, mu, cs, v: {} if k == 2 else v)
    sigs = {r["signature"] for r in check_algebra_laws(broken)}
    assert "2;1,2" in sigs


def test_quotient_algebra_laws():
    C = free("com", 1, 6)
    Q = quotient_algebra(C, [{4: Fraction(1)}])          # x^5
    assert Q.dims() == {1: 1, 2: 1, 3: 1, 4: 1}
    assert check_algebra_laws(Q) == []


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
def test_bar_resolution(name):
    B = bar_resolution(free(name, 1 if name != "lie" else 2, 3), 3)
    assert B.check_simplicial_identities() == []
    H = B.normalized_homology(3)
    assert H[0] == dict(sorted(B.C.dims().items()))
    assert all(H[p] == {} for p in (1, 2, 3))
    assert all(h == {} for h in B.normalized_homology(3, augmented=True).values())


def test_bar_resolution_on_quotient():
    C = quotient_algebra(free("com", 1, 3), [{1: Fraction(1)}])   # x² = 0
    B = bar_resolution(C, 2)
    assert B.check_simplicial_identities() == []
    H = B.normalized_homology(2, augmented=True)
    assert all(h == {} for h in H.values())


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
def test_direct_and_derived_towers_agree(name):
    C = free(name, 2, 4)
    d, r = tower(C, 3, "direct"), tower(C, 3, "derived")
    assert d.quotient_dims == r.quotient_dims
    assert d.reconciles()


@pytest.mark.parametrize("name", ["com", "assoc", "lie"])
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("n", [2, 3])
def test_layer_compare(name, k, n):
    ok, layer, rhs = layer_compare(free(name, k, 5), n)
    assert ok, (layer, rhs)


def test_layer_compare_rejects_non_primitive():
    gens = SymmetricSequence([zero_module(0), zero_module(1), zero_module(2), trivial_module(3)], "plain")
    a = FreeOperad(gens, 4)
    C = FreeAlgebra(a, GradedVectorSpace({1: 1}), 4)
    with pytest.raises(NotPrimitivelyGenerated) as exc:
        layer_compare(C, 2)
    assert exc.value.witness["n"] == 2


def test_indecomposables_of_free_algebra():
    Q, _ = indecomposables(free("assoc", 2, 4))
    assert dict(Q.dims) == {1: 2}


@pytest.mark.parametrize("name", NAMES)
def test_split_free_algebra(name):
    rep = split_algebra(free(name, 1 if name == "com" else 2, 5 if name != "poisson(2)" else 4))
    assert rep.isomorphism and rep.witness is None


def test_split_detects_inserted_relation():
    C = quotient_algebra(free("com", 1, 5), [{1: Fraction(1)}])
    rep = split_algebra(C)
    assert not rep.isomorphism
    assert rep.witness == (2, 2)


def test_hkr():
    for k in (1, 2):
        rep = hochschild_homology(k, 3, 4)
        assert rep.agrees
        for q in range(4):
            for d in range(5):
                assert rep.hh[q].get(d, 0) == omega_rank(k, q, d)
    assert hochschild_homology(2, 2, 2).hh[2].get(2, 0) == 1


@pytest.mark.parametrize("A,rule,gens", [
    (polynomial_data(6, 1), "plain", [1]),
    (polynomial_data(6, 2), "koszul", [2]),
    (exterior_polynomial_data(6), "koszul", [1, 2]),
])
def test_leray(A, rule, gens):
    rep = leray_split(A, 6, rule)
    assert rep.laws_ok and rep.isomorphism and rep.series_match
    assert rep.free_dims == graded_sym_dims(gens, 6, rule)


def test_leray_odd_polynomial_violates_koszul_commutativity():
    rep = leray_split(polynomial_data(4, 1), 4, "koszul")
    assert not rep.laws_ok


def test_pbw_heisenberg():
    rep = pbw_check(heisenberg(), 6)
    expected = heisenberg_series(6)
    assert [rep.u_dims.get(d, 0) for d in range(7)] == expected == [1, 2, 4, 6, 9, 12, 16]
    assert rep.symmetrization_bijective
