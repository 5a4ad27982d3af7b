"""Symmetric sequences, evaluation and composition against series oracles."""

from math import factorial

import pytest

from oracles import bell, composite_dims, egf_dims, EGF, lyndon_count, set_partition_count, sym_dims, witt
from opcalc.exactlin import GradedVectorSpace
from opcalc.operads import builtin_operad
from opcalc.symseq import (CompositeBasis, compose, cycle_index_series, egf, evaluate, series_compose,
                           set_partitions, trivial_sequence)

NAMES = ["com", "assoc", "lie", "poisson(2)"]


@pytest.mark.parametrize("name", NAMES)
def test_builtin_dims_match_egf(name):
    assert builtin_operad(name, 5).dims() == egf_dims(EGF[name], 5)


@pytest.mark.parametrize("n", range(1, 7))
def test_set_partitions_are_bell(n):
    assert len(set_partitions(range(n))) == bell(n) == set_partition_count(n)


def test_com_com_is_bell():
    C = trivial_sequence(6)
    assert compose(C, C).dims()[1:] == [bell(n) for n in range(1, 7)]


@pytest.mark.parametrize("outer", NAMES)
@pytest.mark.parametrize("inner", NAMES)
def test_composition_egf(outer, inner):
    F, G = builtin_operad(outer, 4).seq, builtin_operad(inner, 4).seq
    FG = compose(F, G, 4)
    assert FG.dims() == composite_dims(outer, inner, 4)
    assert [int(x * factorial(n)) for n, x in enumerate(series_compose(egf(F), egf(G), 4))] \
        == FG.dims()


def test_composite_action_is_valid():
    from opcalc.symrep import verify_action
    lie = builtin_operad("lie", 4).seq
    assert verify_action(CompositeBasis(lie, lie, 4).module()) == []


@pytest.mark.parametrize("k", [1, 2, 3])
def test_free_lie_witt(k):
    FX = evaluate(builtin_operad("lie", 6).seq, GradedVectorSpace({1: k}), 6)
    dims = FX.dims()
    for n in range(1, 7):
        assert dims.get(n, 0) == witt(n, k) == lyndon_count(n, k)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("X", [{1: 2}, {1: 1, 2: 1}])
def test_evaluation_matches_cycle_index(name, X):
    a = builtin_operad(name, 4)
    V = GradedVectorSpace(X)
    assert evaluate(a.seq, V, 4).dims() == cycle_index_series(a.seq, V, 4)


def test_com_evaluation_is_symmetric_algebra():
    FX = evaluate(builtin_operad("com", 5).seq, GradedVectorSpace({1: 3}), 5)
    assert FX.dims() == sym_dims(3, 5)


def test_odd_generators_square_to_zero_under_koszul():
    com = builtin_operad("com", 4, "koszul")
    assert evaluate(com.seq, GradedVectorSpace({1: 1}), 4).dims() == {1: 1}
    assert evaluate(com.seq, GradedVectorSpace({1: 1}), 4, "plain").dims() == {1: 1, 2: 1, 3: 1, 4: 1}
