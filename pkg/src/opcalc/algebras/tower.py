"""The augmentation tower I/Iⁿ, its layers, Q_n, and the splitting procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from ..exactlin import (ONE, Echelon, GradedLinearMap, GradedVectorSpace, SparseVec, kernel_cokernel,
                        solve_section, vec_iadd)
from ..operads.base import compositions, multilinear
from ..symseq import EvaluatedSpace, evaluate_map
from .algebra import AlgebraOverOperad, FreeAlgebra, degree_tuples, echelon_dims
from .bar import MonadTower, chain_homology


class NotPrimitivelyGenerated(ValueError):
    def __init__(self, witness):
        super().__init__(f"operad is not primitively generated; witness {witness}")
        self.witness = witness


# --------------------------------------------------------------------------
# powers of the augmentation ideal


def _rows_by_degree(ech: Echelon, degs) -> Dict[int, List[SparseVec]]:
    out: Dict[int, List[SparseVec]] = {}
    for p, row in ech.rows.items():
        out.setdefault(degs[p], []).append(row)
    return out


def ideal_powers(C: AlgebraOverOperad, n_max: int) -> List[Echelon]:
    """[I^1, …, I^{n_max}] with I^1 = C and I^n spanned by θ_k(I^{m_1}, …, I^{m_k}), k ≥ 2, Σm = max(n, k)."""
    a = C.operad
    degs = C.degs
    powers = [Echelon({i: ONE} for i in range(C.dim))]
    for n in range(2, n_max + 1):
        ech = Echelon()
        by_deg = [None] + [_rows_by_degree(P, degs) for P in powers]
        for k in range(2, C.max_arity + 1):
            total = max(n, k)
            for ms in compositions(total, k):
                if any(m > len(powers) for m in ms):
                    continue
                mind = [min(by_deg[m]) if by_deg[m] else None for m in ms]
                if any(x is None for x in mind):
                    continue
                for mu in range(a.dim(k)):
                    budget = C.D - a.degree(k, mu)
                    if sum(mind) > budget:
                        continue
                    _products(C, k, mu, [by_deg[m] for m in ms], budget, ech)
        powers.append(ech)
    return powers


def _products(C, k, mu, pools, budget, ech):
    def rec(s, left, acc):
        if s == k:
            v = C.theta_vec({mu: ONE}, acc)
            if v:
                ech.add(v)
            return
        rest_min = sum(min(p) for p in pools[s + 1:])
        for d, rows in pools[s].items():
            if d + rest_min > left:
                continue
            for r in rows:
                rec(s + 1, left - d, acc + [r])
    rec(0, budget, [])


def quotient_map(C: AlgebraOverOperad, sub: Echelon) -> Tuple[GradedVectorSpace, GradedLinearMap, List[int]]:
    """C → C/sub with basis the non-pivot carrier vectors."""
    free = [i for i in range(C.dim) if i not in sub.rows]
    pos = {i: k for k, i in enumerate(free)}
    Q = GradedVectorSpace.from_degrees(C.degs[i] for i in free)
    cols = [{pos[j]: x for j, x in sub.reduce({i: ONE}).items()} for i in range(C.dim)]
    return Q, GradedLinearMap(C.carrier, Q, cols), free


def _dims_minus(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    out = {}
    for d in sorted(set(a) | set(b)):
        x = a.get(d, 0) - b.get(d, 0)
        if x:
            out[d] = x
    return out


# --------------------------------------------------------------------------
# Q_n


def q_n_functor(C: AlgebraOverOperad, n: int):
    """Cokernel of θ_n: a(n) ⊗_{Σ_n} C^{⊗n} → C with its projection."""
    if n < 2:
        raise ValueError("Q_n needs n ≥ 2")
    if n > C.max_arity:
        return C.carrier, GradedLinearMap.identity(C.carrier)
    _, th = C.theta_map(n)
    _, coker = kernel_cokernel(th)
    return coker.space, coker.projection


# --------------------------------------------------------------------------
# tower


@dataclass
class AugmentationTower:
    algebra: AlgebraOverOperad
    mode: str
    n_max: int
    quotient_dims: Dict[int, Dict[int, int]]           # n ↦ dims of I/Iⁿ
    layer_dims: Dict[int, Dict[int, int]]              # n ↦ dims of Iⁿ/I^{n+1}
    connecting_surjective: Dict[int, bool] = field(default_factory=dict)
    homology: Dict[int, Dict[int, Dict[int, int]]] = field(default_factory=dict)

    def reconciles(self) -> bool:
        for n in range(1, self.n_max):
            lhs = self.quotient_dims[n + 1]
            rhs = {}
            for d in set(self.quotient_dims[n]) | set(self.layer_dims[n]):
                x = self.quotient_dims[n].get(d, 0) + self.layer_dims[n].get(d, 0)
                if x:
                    rhs[d] = x
            if dict(sorted(lhs.items())) != dict(sorted(rhs.items())):
                return False
        return True


def _direct(C: AlgebraOverOperad, n_max: int):
    powers = ideal_powers(C, n_max + 1)
    total = C.dims()
    qd = {1: {}}
    for n in range(2, n_max + 2):
        qd[n] = _dims_minus(total, echelon_dims(powers[n - 1], C.degs))
    ld = {n: _dims_minus(qd[n + 1], qd[n]) for n in range(1, n_max + 1)}
    return powers, qd, ld


def tower(C: AlgebraOverOperad, n_max: int, mode: str = "direct", P: int = 2) -> AugmentationTower:
    """I/Iⁿ(C) for 1 ≤ n ≤ n_max + 1 and layers Iⁿ/I^{n+1} for n ≤ n_max."""
    if mode == "direct":
        powers, qd, ld = _direct(C, n_max)
        surj = {n: True for n in range(1, n_max + 1)}
        return AugmentationTower(C, mode, n_max, qd, ld, surj)
    if mode != "derived":
        raise ValueError(f"unknown tower mode {mode!r}")
    if C.degs and min(C.degs) <= 0:
        raise ValueError("derived tower needs a connected algebra")
    return _derived(C, n_max, P)


def _derived(C: AlgebraOverOperad, n_max: int, P: int) -> AugmentationTower:
    """Apply the direct I/Iⁿ levelwise to the free bar levels T(T^p C) and take homology."""
    from .bar import BarResolution
    B = BarResolution(C, P)
    T = B.T
    levels = list(range(P + 2))
    frees = [T.free_on(p) for p in levels]           # B_p = T(T^p C) as a free algebra
    powers = [ideal_powers(F, n_max + 1) for F in frees]
    qd: Dict[int, Dict[int, int]] = {1: {}}
    hom: Dict[int, Dict[int, Dict[int, int]]] = {}
    surj: Dict[int, bool] = {}
    for n in range(2, n_max + 2):
        spaces, projs, frees_idx = [], [], []
        for p in levels:
            Q, proj, free = quotient_map(frees[p], powers[p][n - 1])
            spaces.append(Q)
            projs.append(proj)
            frees_idx.append(free)
        bnds = []
        for p in range(1, P + 2):
            dp = B.boundary(p)
            cols = [projs[p - 1].apply(dp.columns[j]) for j in frees_idx[p]]
            bnds.append(GradedLinearMap(spaces[p], spaces[p - 1], cols))
        degen = []
        for p in levels:
            ech = Echelon()
            for i in range(p):
                s = B.degeneracy(p - 1, i)
                for j in frees_idx[p - 1]:
                    ech.add(projs[p].apply(s.columns[j]))
            degen.append(ech)
        h = chain_homology(spaces, bnds, degen)
        hom[n] = h
        qd[n] = h[0]
    for n in range(1, n_max + 1):
        surj[n] = all(qd[n].get(d, 0) <= qd[n + 1].get(d, 0) for d in qd[n])
    ld = {n: _dims_minus(qd[n + 1], qd[n]) for n in range(1, n_max + 1)}
    return AugmentationTower(C, "derived", n_max, qd, ld, surj, hom)


# --------------------------------------------------------------------------
# layers versus a(n) ⊗ (I/I²)^{⊗n}


def indecomposables(C: AlgebraOverOperad):
    """I/I²(C) with its projection C → I/I²."""
    powers = ideal_powers(C, 2)
    Q, proj, _ = quotient_map(C, powers[1])
    return Q, proj


def layer_compare(C: AlgebraOverOperad, n: int, mode: str = "direct", P: int = 2,
                  test_dims=(1, 2)) -> Tuple[bool, Dict[int, int], Dict[int, int]]:
    """Compare Iⁿ/I^{n+1}(C) with a(n) ⊗_{Σ_n} (I/I²(C))^{⊗n} degreewise ≤ D."""
    from ..operads.primgen import is_primitively_generated
    ok, witness = is_primitively_generated(C.operad, list(test_dims), N=min(C.operad.max_arity, n + 1))
    if not ok:
        raise NotPrimitivelyGenerated(witness)
    T = tower(C, n, mode, P)
    layer = dict(sorted(T.layer_dims[n].items()))
    Q, _ = indecomposables(C)
    rhs = EvaluatedSpace(C.operad.seq, Q, C.D, C.sign_rule, arities=[n]).dims()
    rhs = dict(sorted((d, x) for d, x in rhs.items() if x))
    return layer == rhs, layer, rhs


# --------------------------------------------------------------------------
# splitting


def find_section(C: AlgebraOverOperad) -> Optional[GradedLinearMap]:
    """A right inverse φ: I/I²(C) → C of the projection."""
    _, proj = indecomposables(C)
    return solve_section(proj)


@dataclass
class SplitReport:
    isomorphism: bool
    alpha: GradedLinearMap
    quotient_isos: Dict[int, bool]
    layer_isos: Dict[int, bool]
    witness: Optional[Tuple[int, int]]
    source_dims: Dict[int, int]
    target_dims: Dict[int, int]


class SectionError(ValueError):
    pass


def split_algebra(C: AlgebraOverOperad, phi: Optional[GradedLinearMap] = None,
                  n_max: Optional[int] = None) -> SplitReport:
    """Build α = θ∘T(φ): T_a(I/I²C) → C and test I/Iⁿ(α) and the layer maps for isomorphism.

    The witness is the first (layer n, degree) where Iⁿ/I^{n+1}(α) fails to be bijective.
    """
    Q, proj = indecomposables(C)
    if phi is None:
        phi = solve_section(proj)
    if phi is None or not (proj @ phi).is_identity():
        raise SectionError("φ is not a section of C → I/I²(C)")
    n_max = C.D if n_max is None else n_max
    TQ = FreeAlgebra(C.operad, Q, C.D, C.sign_rule)
    cols = []
    for i in range(TQ.dim):
        n, m, w = TQ.space.lift(i)
        cols.append(C.theta_vec({m: ONE}, [phi.columns[x] for x in w]))
    alpha = GradedLinearMap(TQ.carrier, C.carrier, cols)
    src = ideal_powers(TQ, n_max + 1)
    tgt = ideal_powers(C, n_max + 1)
    qiso: Dict[int, bool] = {}
    liso: Dict[int, bool] = {}
    witness = None
    for n in range(1, n_max + 1):
        # layer map Iⁿ/I^{n+1}: restrict α to Iⁿ(TQ), land in Iⁿ(C), reduce mod I^{n+1}(C)
        bad = _layer_failure(alpha, src[n - 1], src[n], tgt[n - 1], tgt[n], TQ.degs, C.degs)
        liso[n] = bad is None
        if bad is not None and witness is None:
            witness = (n, bad)
        qiso[n + 1] = all(liso[m] for m in range(1, n + 1))
    qiso[1] = True
    return SplitReport(alpha.is_isomorphism(), alpha, dict(sorted(qiso.items())), liso, witness,
                       TQ.dims(), C.dims())


def _layer_failure(alpha, s_hi, s_lo, t_hi, t_lo, sdegs, tdegs) -> Optional[int]:
    """First degree where the induced map s_hi/s_lo → t_hi/t_lo is not bijective."""
    degrees = sorted(set(sdegs) | set(tdegs))
    for d in degrees:
        src_rows = [r for p, r in s_hi.rows.items() if sdegs[p] == d]
        src_lo = [r for p, r in s_lo.rows.items() if sdegs[p] == d]
        tgt_hi = sum(1 for p in t_hi.rows if tdegs[p] == d)
        tgt_lo_rows = [r for p, r in t_lo.rows.items() if tdegs[p] == d]
        dim_src = len(src_rows) - len(src_lo)
        dim_tgt = tgt_hi - len(tgt_lo_rows)
        ech = Echelon(tgt_lo_rows)
        base = len(ech)
        for r in src_rows:
            ech.add(alpha.apply(r))
        rank = len(ech) - base
        if not (dim_src == dim_tgt == rank):
            return d
    return None
