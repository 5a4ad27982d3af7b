"""The two-sided bar construction B_p = T^{p+1}C with faces, degeneracies, and normalized homology."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..exactlin import ONE, Echelon, GradedLinearMap, GradedVectorSpace, SparseVec, vec_iadd
from ..symseq import EvaluatedSpace, evaluate_map
from .algebra import AlgebraOverOperad, FreeAlgebra


class MonadTower:
    """The spaces T^m C for m ≤ depth, with μ, η, ξ and T applied to maps."""

    def __init__(self, C: AlgebraOverOperad, depth: int):
        self.C = C
        self.a = C.operad
        self.D = C.D
        self.levels: List[EvaluatedSpace] = []
        spaces: List[GradedVectorSpace] = [C.carrier]
        for m in range(1, depth + 1):
            E = EvaluatedSpace(self.a.seq, spaces[-1], self.D, C.sign_rule)
            self.levels.append(E)
            spaces.append(E.space)
        self.spaces = spaces
        self._free: Dict[int, FreeAlgebra] = {}

    def space(self, m: int) -> GradedVectorSpace:
        return self.spaces[m]

    def evaluated(self, m: int) -> EvaluatedSpace:
        """T^m C as the evaluation T(T^{m−1}C), m ≥ 1."""
        return self.levels[m - 1]

    def apply_T(self, f: GradedLinearMap, src: int, tgt: int, times: int) -> GradedLinearMap:
        """T^times(f) for f: T^src C → T^tgt C."""
        for r in range(1, times + 1):
            f = evaluate_map(self.evaluated(src + r), self.evaluated(tgt + r), f)
        return f

    def free_on(self, m: int) -> FreeAlgebra:
        """T(T^m C) as a free algebra sharing the basis of level m+1."""
        hit = self._free.get(m)
        if hit is None:
            hit = FreeAlgebra(self.a, self.spaces[m], self.D, self.C.sign_rule)
            self._free[m] = hit
        return hit

    def mu(self, m: int) -> GradedLinearMap:
        """μ: T T(T^m C) → T(T^m C), i.e. level m+2 → m+1."""
        F = self.free_on(m)
        TT = self.evaluated(m + 2)
        cols = []
        for i in range(TT.total_dim):
            n, mm, w = TT.lift(i)
            cols.append(F.theta(n, mm, w))
        return GradedLinearMap(TT.space, F.carrier, cols)

    def eta(self, m: int) -> GradedLinearMap:
        """η: T^m C → T(T^m C)."""
        E = self.evaluated(m + 1)
        cols = [E.coords(1, self.a.unit, (x,)) for x in range(self.spaces[m].total_dim)]
        return GradedLinearMap(self.spaces[m], E.space, cols)

    def xi(self) -> GradedLinearMap:
        """ξ: T C → C, the algebra structure."""
        E = self.evaluated(1)
        cols = []
        for i in range(E.total_dim):
            n, m, w = E.lift(i)
            cols.append(self.C.theta(n, m, w))
        return GradedLinearMap(E.space, self.C.carrier, cols)


class BarResolution:
    """B_p = T^{p+1} C for p ≤ P+1, faces d_i = T^i μ T^{p−i−1}, d_p = T^p ξ, s_i = T^{i+1} η T^{p−i}."""

    def __init__(self, C: AlgebraOverOperad, P: int):
        if C.degs and min(C.degs) <= 0:
            raise ValueError("bar resolution needs a connected carrier")
        self.C = C
        self.P = P
        self.T = MonadTower(C, P + 2)
        self._faces: Dict[Tuple[int, int], GradedLinearMap] = {}
        self._degs: Dict[Tuple[int, int], GradedLinearMap] = {}

    def level(self, p: int) -> GradedVectorSpace:
        return self.T.space(p + 1)

    def augmentation(self) -> GradedLinearMap:
        return self.T.xi()

    def face(self, p: int, i: int) -> GradedLinearMap:
        key = (p, i)
        if key not in self._faces:
            if i == p:
                f = self.T.apply_T(self.T.xi(), 1, 0, p)
            else:
                # μ at T^{p−i−1}C sits on level p−i+1 → p−i, then T^i
                f = self.T.apply_T(self.T.mu(p - i - 1), p - i + 1, p - i, i)
            self._faces[key] = f
        return self._faces[key]

    def degeneracy(self, p: int, i: int) -> GradedLinearMap:
        key = (p, i)
        if key not in self._degs:
            self._degs[key] = self.T.apply_T(self.T.eta(p - i), p - i, p - i + 1, i + 1)
        return self._degs[key]

    def check_simplicial_identities(self, P: Optional[int] = None) -> List[dict]:
        P = self.P if P is None else P
        bad = []

        def cmp(name, p, lhs, rhs):
            if lhs != rhs:
                bad.append({"identity": name, "level": p, "rank": (lhs - rhs).rank()})

        for p in range(2, P + 1):
            for j in range(p + 1):
                for i in range(j):
                    cmp(f"d{i}d{j}=d{j - 1}d{i}", p, self.face(p - 1, i) @ self.face(p, j),
                        self.face(p - 1, j - 1) @ self.face(p, i))
        for p in range(0, P):
            for j in range(p + 1):
                s = self.degeneracy(p, j)
                ident = GradedLinearMap.identity(self.level(p))
                cmp(f"d{j}s{j}=id", p, self.face(p + 1, j) @ s, ident)
                cmp(f"d{j + 1}s{j}=id", p, self.face(p + 1, j + 1) @ s, ident)
                for i in range(p + 2):
                    if i < j:
                        cmp(f"d{i}s{j}=s{j - 1}d{i}", p, self.face(p + 1, i) @ s,
                            self.degeneracy(p - 1, j - 1) @ self.face(p, i))
                    elif i > j + 1:
                        cmp(f"d{i}s{j}=s{j}d{i - 1}", p, self.face(p + 1, i) @ s,
                            self.degeneracy(p - 1, j) @ self.face(p, i - 1))
        for p in range(0, P - 1):
            for j in range(p + 1):
                for i in range(j + 1):
                    cmp(f"s{i}s{j}=s{j + 1}s{i}", p, self.degeneracy(p + 1, i) @ self.degeneracy(p, j),
                        self.degeneracy(p + 1, j + 1) @ self.degeneracy(p, i))
        return bad

    def boundary(self, p: int) -> GradedLinearMap:
        """Σ (−1)^i d_i : B_p → B_{p−1}; for p = 0 the augmentation."""
        if p == 0:
            return self.augmentation()
        out = self.face(p, 0)
        for i in range(1, p + 1):
            f = self.face(p, i)
            out = out - f if i % 2 else out + f
        return out

    def degenerate(self, p: int) -> Echelon:
        ech = Echelon()
        for i in range(p):
            for col in self.degeneracy(p - 1, i).columns:
                ech.add(col)
        return ech

    def normalized_homology(self, P: Optional[int] = None, augmented: bool = False) -> Dict[int, Dict[int, int]]:
        """dims of H_p of B_*/degenerate, p ≤ P, per internal degree."""
        P = self.P if P is None else P
        return chain_homology(
            [self.level(p) for p in range(P + 2)],
            [self.boundary(p) for p in range(1, P + 2)],
            [self.degenerate(p) for p in range(P + 2)],
            augmentation=(self.augmentation(), self.C.carrier) if augmented else None,
        )


def chain_homology(spaces, boundaries, degenerate, augmentation=None) -> Dict[int, Dict[int, int]]:
    """Homology of a normalized chain complex.

    ``spaces[p]`` is C_p, ``boundaries[p−1]`` is ∂_p: C_p → C_{p−1},
    ``degenerate[p]`` an echelon of the degenerate subspace of C_p.  Homology
    is reported for p < len(spaces) − 1.  With an augmentation ε: C_0 → A the
    augmented complex is used in degree 0.
    """
    top = len(spaces) - 1

    def ranks(f: GradedLinearMap, target_degen: Optional[Echelon], src_degen: Echelon, tdegs):
        # rank per degree of the induced map on normalized complexes
        out: Dict[int, int] = {}
        sdegs = f.source.basis_degrees()
        free_src = [j for j in range(f.source.total_dim) if j not in src_degen.rows]
        per: Dict[int, Echelon] = {}
        base: Dict[int, int] = {}
        for j in free_src:
            d = sdegs[j]
            if d not in per:
                ech = Echelon()
                if target_degen is not None:
                    for piv, row in target_degen.rows.items():
                        if tdegs[piv] == d:
                            ech.add(row)
                per[d] = ech
                base[d] = len(ech)
            per[d].add(f.columns[j])
        for d, ech in per.items():
            out[d] = len(ech) - base[d]
        return out

    ndims = []
    for p in range(top + 1):
        degs = spaces[p].basis_degrees()
        dd: Dict[int, int] = {}
        for j, d in enumerate(degs):
            if j not in degenerate[p].rows:
                dd[d] = dd.get(d, 0) + 1
        ndims.append(dd)
    rk = [{}]
    for p in range(1, top + 1):
        rk.append(ranks(boundaries[p - 1], degenerate[p - 1], degenerate[p], spaces[p - 1].basis_degrees()))
    if augmentation is not None:
        eps, _ = augmentation
        rk[0] = ranks(eps, None, degenerate[0], None)
    out: Dict[int, Dict[int, int]] = {}
    for p in range(top):
        h = {}
        for d, n in ndims[p].items():
            x = n - rk[p].get(d, 0) - rk[p + 1].get(d, 0)
            if x:
                h[d] = x
        out[p] = dict(sorted(h.items()))
    return out


def bar_resolution(C: AlgebraOverOperad, P: int) -> BarResolution:
    return BarResolution(C, P)
