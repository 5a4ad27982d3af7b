"""Analytic triples, the induced operad, ν, and compatibility."""

from fractions import Fraction
from math import factorial

import pytest

from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad, check_operad_laws
from opcalc.triples import (associated_triple, builtin_triple, canonical_nu, check_compatibility,
                            check_triple_laws, induced_operad, lie_to_assoc_functoriality, roundtrip_identity,
                            same_components, substitution_triple)

NAMES = ["com", "assoc", "lie", "poisson(2)"]


@pytest.mark.parametrize("name", NAMES)
def test_associated_triple_laws(name):
    assert check_triple_laws(associated_triple(builtin_operad(name, 4))) == []


@pytest.mark.parametrize("name", NAMES)
def test_substitution_equals_associated(name):
    a = builtin_operad(name, 4)
    S, T = substitution_triple(a), associated_triple(a)
    for n in range(1, 5):
        for e in T.composite_basis(n).elements:
            assert S.mu(n, e) == T.mu(n, e)


def test_com_triple_evaluates_to_truncated_polynomials():
    T = associated_triple(builtin_operad("com", 5))
    assert T.functor(GradedVectorSpace({1: 1}), 5).dims() == {d: 1 for d in range(1, 6)}


@pytest.mark.parametrize("name,dims", [
    ("tensor", [factorial(n) for n in range(1, 6)]),
    ("sym", [1] * 5),
    ("free-lie", [factorial(n - 1) for n in range(1, 6)]),
])
def test_induced_operad_dims(name, dims):
    a = induced_operad(builtin_triple(name, 5), check=True)
    assert a.dims()[1:] == dims
    assert check_operad_laws(a, 4) == []


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip(name):
    f = roundtrip_identity(builtin_operad(name, 5))
    assert f.check() == []
    assert f.is_isomorphism()


def test_perturbed_triple_fails_laws_and_is_rejected():
    T = associated_triple(builtin_operad("assoc", 3))
    e = T.composite_basis(2).elements[0]
    P = T.perturbed(2, e, {0: Fraction(2)})
    rep = check_triple_laws(P)
    assert rep and any(r["law"] == "associativity" for r in rep)
    with pytest.raises(ValueError):
        induced_operad(P, check=True)


def test_unit_perturbation_detected():
    T = associated_triple(builtin_operad("lie", 3))
    e = ((((0, 1),)), 0, (0,))
    P = T.perturbed(2, e, {})
    assert any(r["law"].startswith("unit") for r in check_triple_laws(P))


@pytest.mark.parametrize("name", NAMES)
def test_nu_is_a_map_of_triples(name):
    nu = canonical_nu(associated_triple(builtin_operad(name, 4)))
    assert nu.check_tripmap() == []
    assert all(f.is_isomorphism() for f in nu.components.values())


def test_nu_on_values_is_iso():
    nu = canonical_nu(associated_triple(builtin_operad("lie", 4)))
    _, _, f = nu.on_values(GradedVectorSpace({1: 2}), 4)
    assert f.is_isomorphism()


@pytest.mark.parametrize("name", NAMES)
def test_compatibility_on_builtins(name):
    ok, rep = check_compatibility(associated_triple(builtin_operad(name, 3)), GradedVectorSpace({1: 1}), 3)
    assert ok and rep["components"] == []


def test_compatibility_lie_two_generators():
    ok, _ = check_compatibility(associated_triple(builtin_operad("lie", 4)), GradedVectorSpace({1: 2}), 4)
    assert ok


def test_compatibility_detects_perturbation():
    T = associated_triple(builtin_operad("assoc", 3))
    e = T.composite_basis(2).elements[0]
    ok, rep = check_compatibility(T.perturbed(2, e, {0: Fraction(2)}), GradedVectorSpace({1: 1}), 3)
    assert not ok
    named = rep["components"]
    assert named and named[0]["arity"] == 2 and named[0]["signature"] == "2;1,1"


def test_functoriality_lie_to_assoc():
    bad, induced, std = lie_to_assoc_functoriality(4)
    assert bad == []
    assert induced.check() == []
    assert same_components(induced, std, induced.source.isos, induced.target.isos)
