"""Exact linear algebra against sympy and brute force."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import koszul_sign_bruteforce, rank as sympy_rank
from opcalc.exactlin import (Echelon, GradedLinearMap, GradedVectorSpace, format_scalar, kernel_cokernel,
                             permutation_sign, rank, scalar, solve_section, symmetry_map, tensor_product)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_echelon_rank_and_membership(m):
    ech = Echelon()
    for row in m:
        ech.add({j: x for j, x in enumerate(row) if x})
    assert len(ech) == sympy_rank(m)
    for row in m:
        assert ech.contains({j: x for j, x in enumerate(row) if x})


@given(st.permutations(range(5)), st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_permutation_sign_bruteforce(order, degs):
    assert permutation_sign(order, degs) == koszul_sign_bruteforce(order, degs)
    assert permutation_sign(order, degs, "plain") == 1


@given(small)
def test_scalar_roundtrip(x):
    assert scalar(format_scalar(x)) == x


def _map(V, W, m):
    return GradedLinearMap(V, W, [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(len(m[0]))])


@given(matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_kernel_cokernel_dimensions(m):
    V = GradedVectorSpace({0: len(m[0])})
    W = GradedVectorSpace({0: len(m)})
    f = _map(V, W, m)
    K, C = kernel_cokernel(f)
    r = sympy_rank(m)
    assert K.space.total_dim == len(m[0]) - r
    assert C.space.total_dim == len(m) - r
    assert (f @ K.inclusion).is_zero()
    assert (C.projection @ f).is_zero()


def test_section_of_surjection():
    V = GradedVectorSpace({1: 3, 2: 1})
    W = GradedVectorSpace({1: 2})
    p = GradedLinearMap(V, W, [{0: Fraction(1)}, {0: Fraction(1), 1: Fraction(2)}, {1: Fraction(1)}, {}])
    s = solve_section(p)
    assert (p @ s).is_identity()


def test_graded_symmetry_is_involution_with_signs():
    V = GradedVectorSpace({1: 1, 2: 1})
    tau = symmetry_map(V, V, "koszul")
    back = symmetry_map(V, V, "koszul")
    assert (back @ tau).is_identity()
    # odd ⊗ odd picks up −1
    VV = tensor_product(V, V)
    assert VV.total_dim == 4
    assert tau.columns[0] == {0: Fraction(-1)}
