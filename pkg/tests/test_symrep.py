"""Symmetric group representations."""

from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opcalc.symrep import (ArityCapError, all_perms, coinvariant_dimension_by_characters, coinvariants, compose,
                           induce, inverse, perm_sign, reduced_word, regular_module, sign_module, transposition,
                           trivial_module, verify_action, apply_permutation, check_arity)

perms5 = st.permutations(range(5)).map(tuple)


@given(perms5, perms5)
def test_compose_inverse(s, t):
    assert compose(s, inverse(s)) == tuple(range(5))
    assert inverse(compose(s, t)) == compose(inverse(t), inverse(s))


@given(perms5)
def test_reduced_word_length_is_inversions(s):
    inv = sum(1 for i in range(5) for j in range(i + 1, 5) if s[i] > s[j])
    assert len(reduced_word(s)) == inv
    assert perm_sign(s) == (-1) ** inv
    p = tuple(range(5))
    for i in reduced_word(s):
        p = compose(p, transposition(5, i))
    assert p == s


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_modules_satisfy_coxeter_relations(n):
    for M in (trivial_module(n), sign_module(n), regular_module(n)):
        assert verify_action(M) == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_action_is_a_homomorphism(n):
    M = regular_module(n)
    for s in all_perms(n)[:6]:
        for t in all_perms(n)[:6]:
            assert apply_permutation(M, compose(s, t)) == apply_permutation(M, s) @ apply_permutation(M, t)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coinvariant_dimensions(n):
    # trivial → 1, sign → 0 (n ≥ 2), regular → 1
    assert coinvariants(trivial_module(n)).space.total_dim == 1
    assert coinvariants(sign_module(n)).space.total_dim == (1 if n == 1 else 0)
    R = regular_module(n)
    C = coinvariants(R)
    assert C.space.total_dim == coinvariant_dimension_by_characters(R) == 1
    assert (C.projection @ C.section).is_identity()


def test_induction_dimension_and_coxeter():
    M = induce([trivial_module(2), sign_module(1)])
    assert M.dim == factorial(3) // factorial(2)
    assert verify_action(M) == []
    assert coinvariants(M).space.total_dim == 1


def test_arity_cap():
    with pytest.raises(ArityCapError):
        check_arity(9)
