"""Finite-dimensional representations of the symmetric groups.

A representation of Σ_n is stored by the images of the adjacent
transpositions s_1..s_{n-1}.  Permutations are tuples in one-line notation
on 0..n-1 (``perm[i]`` is the image of i) and compose as functions:
``compose(σ, τ)(i) == σ[τ[i]]``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .exactlin import (
    ONE,
    Echelon,
    GradedLinearMap,
    GradedVectorSpace,
    SparseVec,
    vec_iadd,
)

DEFAULT_ARITY_CAP = 7

Perm = Tuple[int, ...]


class ArityCapError(ValueError):
    """An operation would enumerate a symmetric group beyond the arity cap."""


def check_arity(n: int, cap: Optional[int] = None) -> None:
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if n > cap:
        raise ArityCapError(f"arity {n} exceeds cap {cap}")


# --------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(s: Sequence[int], t: Sequence[int]) -> Perm:
    return tuple(s[i] for i in t)


def inverse(s: Sequence[int]) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def transposition(n: int, i: int) -> Perm:
    """The adjacent transposition s_{i+1} swapping i and i+1 (0-based i)."""
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def validate_perm(s: Sequence[int], n: int) -> Perm:
    s = tuple(int(x) for x in s)
    if len(s) != n or sorted(s) != list(range(n)):
        raise ValueError(f"not a permutation of {n} letters: {s}")
    return s


def reduced_word(s: Sequence[int]) -> List[int]:
    """Indices i with s = s_{i_1} ∘ s_{i_2} ∘ ... (0-based, bubble-sort factorization)."""
    p = list(s)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                swaps.append(i)
                changed = True
    return swaps[::-1]


def perm_sign(s: Sequence[int]) -> int:
    return -1 if len(reduced_word(s)) % 2 else 1


@lru_cache(maxsize=None)
def all_perms(n: int) -> Tuple[Perm, ...]:
    return tuple(itertools.permutations(range(n)))


def cycle_lengths(s: Sequence[int]) -> List[int]:
    seen = [False] * len(s)
    out = []
    for i in range(len(s)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = s[j]
                k += 1
            out.append(k)
    return out


def block_permutation(sigma: Sequence[int], sizes: Sequence[int]) -> Perm:
    """σ(j_1..j_k): moves block s (of size sizes[s]) to block position σ(s)."""
    k = len(sizes)
    inv = inverse(sigma)
    new_sizes = [sizes[inv[t]] for t in range(k)]
    new_off = [sum(new_sizes[:t]) for t in range(k)]
    out = []
    for s in range(k):
        out.extend(new_off[sigma[s]] + i for i in range(sizes[s]))
    return tuple(out)


def block_sum(perms: Sequence[Sequence[int]]) -> Perm:
    out: List[int] = []
    off = 0
    for p in perms:
        out.extend(off + x for x in p)
        off += len(p)
    return tuple(out)


# --------------------------------------------------------------------------
# modules


class SymGroupModule:
    """A graded Σ_n-representation given by the images of adjacent transpositions."""

    def __init__(self, arity: int, space: GradedVectorSpace, gens: Sequence[GradedLinearMap]):
        self.arity = int(arity)
        self.space = space
        self.gens: Tuple[GradedLinearMap, ...] = tuple(gens)
        if len(self.gens) != max(self.arity - 1, 0):
            raise ValueError(f"Σ_{arity} needs {max(arity - 1, 0)} generators, got {len(self.gens)}")
        for g in self.gens:
            if g.source != space or g.target != space:
                raise ValueError("generator is not an endomorphism of the module space")
        self._cache: Dict[Perm, GradedLinearMap] = {}

    @property
    def dim(self) -> int:
        return self.space.total_dim

    def __repr__(self):
        return f"SymGroupModule(arity={self.arity}, dims={dict(self.space.dims)})"

    def act(self, perm: Sequence[int]) -> GradedLinearMap:
        return apply_permutation(self, perm)

    def act_on(self, perm: Sequence[int], v: Mapping[int, Fraction]) -> SparseVec:
        return self.act(perm).apply(v)


def verify_action(M: SymGroupModule) -> List[Tuple]:
    """Violated Coxeter relations, e.g. ``(1, "square")`` or ``(1, 2, "braid")`` (1-based)."""
    report = []
    g = M.gens
    ident = GradedLinearMap.identity(M.space)
    for i in range(len(g)):
        if g[i] @ g[i] != ident:
            report.append((i + 1, "square"))
    for i in range(len(g) - 1):
        a, b = g[i], g[i + 1]
        if a @ b @ a != b @ a @ b:
            report.append((i + 1, i + 2, "braid"))
    for i in range(len(g)):
        for j in range(i + 2, len(g)):
            if g[i] @ g[j] != g[j] @ g[i]:
                report.append((i + 1, j + 1, "commute"))
    return report


def apply_permutation(M: SymGroupModule, perm: Sequence[int]) -> GradedLinearMap:
    s = validate_perm(perm, M.arity)
    hit = M._cache.get(s)
    if hit is not None:
        return hit
    result = GradedLinearMap.identity(M.space)
    for i in reduced_word(s):
        result = result @ M.gens[i]
    M._cache[s] = result
    return result


# --------------------------------------------------------------------------
# standard modules


def _gens_from_perm_action(n: int, images) -> List[GradedLinearMap]:
    """Generators of a monomial representation; ``images(i)`` gives columns for s_{i+1}."""
    return [images(i) for i in range(n - 1)]


def trivial_module(n: int, degree: int = 0) -> SymGroupModule:
    V = GradedVectorSpace({degree: 1})
    return SymGroupModule(n, V, [GradedLinearMap.identity(V) for _ in range(max(n - 1, 0))])


def sign_module(n: int, degree: int = 0) -> SymGroupModule:
    V = GradedVectorSpace({degree: 1})
    return SymGroupModule(n, V, [GradedLinearMap.identity(V).scale(-1) for _ in range(max(n - 1, 0))])


def zero_module(n: int) -> SymGroupModule:
    V = GradedVectorSpace()
    return SymGroupModule(n, V, [GradedLinearMap.zero(V, V) for _ in range(max(n - 1, 0))])


def permutation_module(n: int, points: Sequence, act, degree: int = 0) -> SymGroupModule:
    """Span of ``points`` with Σ_n acting by ``act(perm, point) -> point``."""
    index = {p: i for i, p in enumerate(points)}
    V = GradedVectorSpace({degree: len(points)})
    gens = []
    for i in range(n - 1):
        t = transposition(n, i)
        gens.append(GradedLinearMap(V, V, [{index[act(t, p)]: ONE} for p in points]))
    return SymGroupModule(n, V, gens)


def regular_module(n: int, degree: int = 0) -> SymGroupModule:
    """Left regular representation on permutations (basis ordered lexicographically)."""
    return permutation_module(n, all_perms(n), lambda t, p: compose(t, p), degree)


def module_from_generator_matrices(n: int, degrees: Sequence[int], gens: Sequence[Sequence[Sequence]]) -> SymGroupModule:
    V = GradedVectorSpace.from_degrees(degrees)
    if list(degrees) != V.basis_degrees():
        raise ValueError("basis degrees must be listed in ascending order")
    maps = []
    for g in gens:
        cols = [dict() for _ in range(V.total_dim)]
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = Fraction(x)
        maps.append(GradedLinearMap(V, V, cols))
    return SymGroupModule(n, V, maps)


# --------------------------------------------------------------------------
# invariants / coinvariants


class Coinvariants(NamedTuple):
    space: GradedVectorSpace
    projection: GradedLinearMap
    section: GradedLinearMap


def averaging_operator(M: SymGroupModule, cap: Optional[int] = None) -> GradedLinearMap:
    """e = (1/n!) Σ_σ ρ(σ)."""
    check_arity(M.arity, cap)
    total = GradedLinearMap.zero(M.space, M.space)
    for s in all_perms(M.arity):
        total = total + apply_permutation(M, s)
    return total.scale(Fraction(1, factorial(M.arity)))


def coinvariants(M: SymGroupModule, cap: Optional[int] = None) -> Coinvariants:
    """Coinvariants M_Σn realized as the image of the averaging idempotent.

    The projection sends v to the coordinates of e(v) on the image basis; the
    section includes the image basis back into M, realizing M_Σn ≅ M^Σn.
    """
    e = averaging_operator(M, cap)
    S = M.space
    dims: Dict[int, int] = {}
    picked: List[Tuple[int, List[int]]] = []
    for d in S.degrees:
        ech = Echelon()
        cols = [j for j in S.flat_range(d) if ech.add(e.columns[j])]
        dims[d] = len(cols)
        picked.append((d, cols))
    Q = GradedVectorSpace(dims)
    section_cols: List[SparseVec] = []
    proj_cols: List[SparseVec] = [dict() for _ in range(S.total_dim)]
    from .exactlin import SpanSolver
    for d, cols in picked:
        vecs = [e.columns[j] for j in cols]
        section_cols.extend(vecs)
        if not vecs:
            continue
        solver = SpanSolver(vecs)
        off = Q.offset(d)
        for j in S.flat_range(d):
            c = solver.coordinates(e.columns[j])
            proj_cols[j] = {off + k: x for k, x in c.items()}
    return Coinvariants(Q, GradedLinearMap(S, Q, proj_cols), GradedLinearMap(Q, S, section_cols))


def coinvariant_dimension_by_characters(M: SymGroupModule, cap: Optional[int] = None) -> int:
    """(1/n!) Σ_σ tr ρ(σ): the multiplicity of the trivial character."""
    check_arity(M.arity, cap)
    total = Fraction(0)
    for s in all_perms(M.arity):
        m = apply_permutation(M, s)
        total += sum(c.get(j, 0) for j, c in enumerate(m.columns))
    total /= factorial(M.arity)
    assert total.denominator == 1
    return int(total)


class RelationQuotient:
    """Quotient of a space by the span of (ρ(g) − χ(g))v over chosen group generators.

    Basis of the quotient = standard basis vectors that are not pivots of the
    relation echelon form; :meth:`coordinates` reduces and reads them off.
    """

    def __init__(self, dim: int, relations: Echelon):
        self.ech = relations
        self.free = [i for i in range(dim) if i not in relations.rows]
        self.pos = {i: k for k, i in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def coordinates(self, v: Mapping[int, Fraction]) -> SparseVec:
        r = self.ech.reduce(v)
        return {self.pos[i]: x for i, x in r.items()}

    def lift(self, k: int) -> int:
        return self.free[k]


def relation_quotient(M: SymGroupModule, generator_indices: Sequence[int],
                      characters: Optional[Sequence[int]] = None) -> RelationQuotient:
    """M / span{(s_i − χ_i)v : i in generator_indices}; χ_i defaults to +1."""
    ech = Echelon()
    for pos, i in enumerate(generator_indices):
        chi = 1 if characters is None else characters[pos]
        g = M.gens[i]
        for j in range(M.dim):
            v = dict(g.columns[j])
            vec_iadd(v, {j: ONE}, Fraction(-chi))
            if v:
                ech.add(v)
    return RelationQuotient(M.dim, ech)


# --------------------------------------------------------------------------
# induction from Young subgroups


def shuffles(sizes: Sequence[int]) -> List[Perm]:
    """Minimal-length coset representatives of Σ_{j1}×…×Σ_{jk} in Σ_j.

    Each is the order-preserving-on-blocks permutation sending block s onto a
    chosen subset; ordered by (length, one-line notation).
    """
    n = sum(sizes)
    out = []

    def rec(remaining, s, acc):
        if s == len(sizes):
            out.append(acc)
            return
        for subset in itertools.combinations(sorted(remaining), sizes[s]):
            rec(remaining - set(subset), s + 1, acc + list(subset))

    rec(set(range(n)), 0, [])
    perms = [tuple(p) for p in out]
    perms.sort(key=lambda p: (len(reduced_word(p)), p))
    return perms


def _young_decompose(p: Perm, sizes: Sequence[int]) -> Tuple[Perm, List[Perm]]:
    """Write p = c ∘ h with c a minimal coset rep and h in the Young subgroup."""
    offs = [sum(sizes[:s]) for s in range(len(sizes))]
    c: List[int] = []
    hs: List[Perm] = []
    for s, m in enumerate(sizes):
        imgs = [p[offs[s] + i] for i in range(m)]
        srt = sorted(imgs)
        c.extend(srt)
        hs.append(tuple(srt.index(x) for x in imgs))
    return tuple(c), hs


def tensor_modules_outer(parts: Sequence[SymGroupModule]):
    """Flat basis of M_1⊗…⊗M_k as index tuples (degree ascending, lexicographic)."""
    degs = [m.space.basis_degrees() for m in parts]
    tuples = list(itertools.product(*[range(m.dim) for m in parts]))
    tuples.sort(key=lambda t: (sum(degs[s][t[s]] for s in range(len(t))), t))
    return tuples, [sum(degs[s][t[s]] for s in range(len(t))) for t in tuples]


def induce(parts: Sequence[SymGroupModule], cap: Optional[int] = None) -> SymGroupModule:
    """Ind from Σ_{j1}×…×Σ_{jk} to Σ_j of M_1⊗…⊗M_k."""
    sizes = [m.arity for m in parts]
    n = sum(sizes)
    check_arity(n, cap)
    reps = shuffles(sizes)
    rep_index = {c: i for i, c in enumerate(reps)}
    tuples, tdeg = tensor_modules_outer(parts)
    t_index = {t: i for i, t in enumerate(tuples)}
    basis = [(c, t) for c in reps for t in range(len(tuples))]
    basis.sort(key=lambda b: (tdeg[b[1]], rep_index[b[0]], b[1]))
    index = {b: i for i, b in enumerate(basis)}
    V = GradedVectorSpace.from_degrees(tdeg[t] for _, t in basis)
    gens = []
    for i in range(n - 1):
        s = transposition(n, i)
        cols = []
        for c, t in basis:
            c2, hs = _young_decompose(compose(s, c), sizes)
            vec = {(): ONE}
            for pos, (m, h) in enumerate(zip(parts, hs)):
                col = apply_permutation(m, h).columns[tuples[t][pos]]
                new = {}
                for key, x in vec.items():
                    for j, y in col.items():
                        k2 = key + (j,)
                        new[k2] = new.get(k2, 0) + x * y
                vec = new
            cols.append({index[(c2, t_index[k])]: x for k, x in vec.items() if x})
        gens.append(GradedLinearMap(V, V, cols))
    return SymGroupModule(n, V, gens)


def character_inner_product_trivial(M: SymGroupModule) -> int:
    return coinvariant_dimension_by_characters(M)
