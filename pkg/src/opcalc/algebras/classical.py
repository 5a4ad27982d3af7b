"""Classical corollaries: Hochschild homology of polynomial algebras, Leray splitting, PBW."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactlin import ONE, Echelon, GradedVectorSpace, SparseVec, vec_iadd
from ..operads.builtins import builtin_operad
from .algebra import binary_algebra, check_algebra_laws
from .tower import find_section, indecomposables, split_algebra

Monomial = Tuple[int, ...]


def monomials(k: int, d: int) -> List[Monomial]:
    """Exponent vectors of total degree d in k variables."""
    if k == 0:
        return [()] if d == 0 else []
    out = []
    for e in range(d, -1, -1):
        for rest in monomials(k - 1, d - e):
            out.append((e,) + rest)
    return out


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# Hochschild homology


@dataclass
class HochschildReport:
    k_vars: int
    q_max: int
    D: int
    hh: Dict[int, Dict[int, int]]       # q ↦ degree ↦ rank
    omega: Dict[int, Dict[int, int]]
    agrees: bool


def omega_rank(k: int, q: int, d: int) -> int:
    """dim Λ^q(k) ⊗ A in internal degree d = C(k, q) · #monomials of degree d − q."""
    if d < q:
        return 0
    return comb(k, q) * comb(d - q + k - 1, k - 1) if k else (1 if q == 0 and d == 0 else 0)


def _chains(k: int, q: int, d: int) -> List[Tuple[Monomial, ...]]:
    """Basis of the normalized chains A ⊗ Ā^{⊗q} in internal degree d."""
    out = []
    for parts in _degree_splits(d, q):
        pools = [monomials(k, parts[0])] + [monomials(k, p) for p in parts[1:]]
        out.extend(itertools.product(*pools))
    return out


def _degree_splits(d: int, q: int):
    # d0 ≥ 0, d1..dq ≥ 1
    for d0 in range(d - q + 1):
        for rest in _positive_compositions(d - d0, q):
            yield (d0,) + rest


def _positive_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def _hochschild_boundary(chain: Tuple[Monomial, ...]) -> Dict[Tuple[Monomial, ...], int]:
    q = len(chain) - 1
    out: Dict[Tuple[Monomial, ...], int] = {}
    for i in range(q):
        new = chain[:i] + (_mono_mul(chain[i], chain[i + 1]),) + chain[i + 2:]
        out[new] = out.get(new, 0) + (-1) ** i
    new = (_mono_mul(chain[q], chain[0]),) + chain[1:q]
    out[new] = out.get(new, 0) + (-1) ** q
    return {c: x for c, x in out.items() if x}


def _boundary_rank(k: int, q: int, d: int) -> int:
    if q <= 0:
        return 0
    target = {c: i for i, c in enumerate(_chains(k, q - 1, d))}
    ech = Echelon()
    for c in _chains(k, q, d):
        ech.add({target[t]: Fraction(x) for t, x in _hochschild_boundary(c).items()})
    return len(ech)


def hochschild_homology(k_vars: int, q_max: int, D: int) -> HochschildReport:
    """HH_q of K[x_1..x_k] (generators in degree 1) via normalized Hochschild chains, compared with Ω^q."""
    hh: Dict[int, Dict[int, int]] = {}
    om: Dict[int, Dict[int, int]] = {}
    for q in range(q_max + 1):
        hh[q], om[q] = {}, {}
        for d in range(D + 1):
            dim = len(_chains(k_vars, q, d))
            h = dim - _boundary_rank(k_vars, q, d) - _boundary_rank(k_vars, q + 1, d)
            hh[q][d] = h
            om[q][d] = omega_rank(k_vars, q, d)
    return HochschildReport(k_vars, q_max, D, hh, om, hh == om)


# --------------------------------------------------------------------------
# Leray


@dataclass
class CommutativeAlgebraData:
    """A connected graded-commutative algebra by its augmentation-ideal basis and multiplication.

    ``comultiplication`` is optional bialgebra data; it is carried but not
    consulted by the splitting.
    """
    degrees: List[int]
    mul: Dict[Tuple[int, int], SparseVec]
    labels: Optional[List[str]] = None
    comultiplication: Optional[Dict[int, SparseVec]] = None


def polynomial_data(D: int, degree: int = 1) -> CommutativeAlgebraData:
    """K[x] with deg x = ``degree``: augmentation ideal x, x², … through degree D.

    Under the koszul rule an odd x must square to zero, so odd degrees need the plain rule.
    """
    top = D // degree
    degs = [degree * (i + 1) for i in range(top)]
    mul = {(i, j): {i + j + 1: ONE} for i in range(top) for j in range(top) if i + j + 2 <= top}
    return CommutativeAlgebraData(degs, mul, [f"x^{i + 1}" for i in range(top)])


def exterior_polynomial_data(D: int) -> CommutativeAlgebraData:
    """Λ(x) ⊗ K[y] with deg x = 1, deg y = 2."""
    monos = []
    for d in range(1, D + 1):
        for a in (0, 1):
            if (d - a) % 2 == 0:
                monos.append((a, (d - a) // 2))
    idx = {m: i for i, m in enumerate(monos)}
    mul = {}
    for (a, b), i in idx.items():
        for (c, e), j in idx.items():
            if a + c > 1:
                continue
            m = (a + c, b + e)
            if m in idx:
                mul[(i, j)] = {idx[m]: ONE}
    labels = [("x" if a else "") + (f"y^{b}" if b else "") for a, b in monos]
    return CommutativeAlgebraData([a + 2 * b for a, b in monos], mul, labels)


@dataclass
class LerayReport:
    indecomposable_dims: Dict[int, int]
    algebra_dims: Dict[int, int]
    free_dims: Dict[int, int]
    isomorphism: bool
    series_match: bool
    laws_ok: bool


def _free_commutative_series(qdegs: Sequence[int], D: int, sign_rule: str = "koszul") -> Dict[int, int]:
    """Π (1 − t^d)^{−1} for even d and (1 + t^d) for odd d, truncated; constant term dropped.

    With ``plain`` signs every generator is polynomial.
    """
    poly = {0: 1}
    for d in qdegs:
        new: Dict[int, int] = {}
        powers = [0, d] if d % 2 and sign_rule == "koszul" else list(range(0, D + 1, d))
        for a, x in poly.items():
            for p in powers:
                if a + p <= D:
                    new[a + p] = new.get(a + p, 0) + x
        poly = new
    return {k: v for k, v in sorted(poly.items()) if k > 0 and v}


def leray_split(A: CommutativeAlgebraData, D: int, sign_rule: str = "koszul") -> LerayReport:
    """Split a connected graded-commutative algebra as the free one on its indecomposables."""
    if any(d <= 0 for d in A.degrees):
        raise ValueError("algebra must be connected")
    com = builtin_operad("com", D)
    carrier = GradedVectorSpace.from_degrees(A.degrees)
    if A.degrees != sorted(A.degrees):
        raise ValueError("basis must be listed by ascending degree")
    C = binary_algebra(com, carrier, D, mul=lambda i, j: A.mul.get((i, j), {}), sign_rule=sign_rule,
                       name="A")
    laws = check_algebra_laws(C, N=min(D, 4))
    phi = find_section(C)
    report = split_algebra(C, phi)
    Q, _ = indecomposables(C)
    series = _free_commutative_series(Q.basis_degrees(), D, sign_rule)
    return LerayReport(dict(Q.dims), C.dims(), report.source_dims, report.isomorphism,
                       series == dict(sorted(C.dims().items())), not laws)


# --------------------------------------------------------------------------
# PBW


@dataclass
class LieAlgebraData:
    """A finite-dimensional graded Lie algebra by basis degrees and brackets [e_i, e_j] for i < j."""
    degrees: List[int]
    bracket: Dict[Tuple[int, int], SparseVec]
    labels: Optional[List[str]] = None

    def br(self, i: int, j: int) -> SparseVec:
        if i == j:
            return {}
        if i < j:
            return self.bracket.get((i, j), {})
        return {k: -x for k, x in self.bracket.get((j, i), {}).items()}


def heisenberg() -> LieAlgebraData:
    """x, y in degree 1 and z in degree 2 with [x, y] = z."""
    return LieAlgebraData([1, 1, 2], {(0, 1): {2: ONE}}, ["x", "y", "z"])


Word = Tuple[int, ...]


def _words(degs: Sequence[int], d: int) -> List[Word]:
    if d == 0:
        return [()]
    out = []
    for i, e in enumerate(degs):
        if e <= d:
            out.extend((i,) + w for w in _words(degs, d - e))
    return out


def pbw_normal_form(L: LieAlgebraData, word: Word) -> Dict[Word, Fraction]:
    """Rewrite a word in U(L) to sorted monomials using yx = xy − [x, y] for x < y."""
    out: Dict[Word, Fraction] = {}
    todo = [(tuple(word), ONE)]
    while todo:
        w, c = todo.pop()
        for p in range(len(w) - 1):
            if w[p] > w[p + 1]:
                swapped = w[:p] + (w[p + 1], w[p]) + w[p + 2:]
                todo.append((swapped, c))
                for e, x in L.br(w[p], w[p + 1]).items():
                    todo.append((w[:p] + (e,) + w[p + 2:], c * x))
                break
        else:
            out[w] = out.get(w, 0) + c
    return {w: x for w, x in out.items() if x}


@dataclass
class PBWReport:
    u_dims: Dict[int, int]          # U(L) by linear algebra on T(L)/ideal
    s_dims: Dict[int, int]          # sorted monomials
    normal_form_dims: Dict[int, int]
    symmetrization_bijective: bool
    expected: Dict[int, int]


def _sym_monomials(degs: Sequence[int], d: int) -> List[Word]:
    return [w for w in _words(degs, d) if list(w) == sorted(w)]


def _series_coeffs(degs: Sequence[int], D: int) -> Dict[int, int]:
    poly = {0: 1}
    for e in degs:
        new: Dict[int, int] = {}
        for a, x in poly.items():
            for p in range(0, D + 1, e):
                if a + p <= D:
                    new[a + p] = new.get(a + p, 0) + x
        poly = new
    return dict(sorted(poly.items()))


def pbw_check(L: LieAlgebraData, D: int) -> PBWReport:
    """Compare S(L) → U(L) by symmetrization, with U(L) computed as T(L)/(ab − ba − [a,b])."""
    degs = L.degrees
    u_dims, s_dims, nf_dims = {}, {}, {}
    bij = True
    words_by_deg = {d: _words(degs, d) for d in range(D + 1)}
    index = {d: {w: i for i, w in enumerate(ws)} for d, ws in words_by_deg.items()}
    for d in range(D + 1):
        ideal = Echelon()
        idx = index[d]
        for a, b in itertools.product(range(len(degs)), repeat=2):
            rd = d - degs[a] - degs[b]
            if rd < 0:
                continue
            for ld in range(rd + 1):
                for u in words_by_deg[ld]:
                    for v in words_by_deg[rd - ld]:
                        vec: Dict[int, Fraction] = {}
                        vec_iadd(vec, {idx[u + (a, b) + v]: ONE})
                        vec_iadd(vec, {idx[u + (b, a) + v]: ONE}, -ONE)
                        for e, x in L.br(a, b).items():
                            vec_iadd(vec, {idx[u + (e,) + v]: ONE}, -x)
                        if vec:
                            ideal.add(vec)
        u_dims[d] = len(words_by_deg[d]) - len(ideal)
        monos = _sym_monomials(degs, d)
        s_dims[d] = len(monos)
        # normal forms: every word rewrites into sorted monomials, and these stay independent mod the ideal
        nf = set()
        for w in words_by_deg[d]:
            nf.update(pbw_normal_form(L, w))
        nf_dims[d] = len(nf)
        # symmetrization S(L) → U(L): rank modulo the ideal
        ech = Echelon(ideal.rows.values())
        base = len(ech)
        for m in monos:
            vec: Dict[int, Fraction] = {}
            perms = set(itertools.permutations(m))
            for p in perms:
                vec_iadd(vec, {idx[p]: Fraction(1, len(perms))})
            ech.add(vec)
        if len(ech) - base != len(monos) or len(monos) != u_dims[d]:
            bij = False
    return PBWReport(u_dims, s_dims, nf_dims, bij, _series_coeffs(degs, D))
