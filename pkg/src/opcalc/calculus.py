"""Cross effects, Taylor polynomials, layers, differentials, and the tower splitting for analytic functors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import ONE, GradedLinearMap, GradedVectorSpace, SparseVec
from .symrep import SymGroupModule, coinvariants, transposition
from .symseq import EvaluatedSpace, SymmetricSequence, cycle_index_series, evaluate_map


class AnalyticFunctor:
    """X ↦ ⊕ F[n] ⊗_{Σ_n} X^{⊗n} for a reduced symmetric sequence F."""

    def __init__(self, seq: SymmetricSequence, sign_rule: Optional[str] = None, name: Optional[str] = None):
        if seq[0].dim:
            raise ValueError("analytic functors are taken reduced: F[0] = 0")
        self.seq = seq
        self.sign_rule = sign_rule or seq.sign_rule
        self.name = name or seq.name

    @property
    def max_arity(self) -> int:
        return self.seq.max_arity

    def __call__(self, X: GradedVectorSpace, D: int) -> EvaluatedSpace:
        return EvaluatedSpace(self.seq, X, D, self.sign_rule)

    def on_map(self, FX: EvaluatedSpace, FY: EvaluatedSpace, f: GradedLinearMap) -> GradedLinearMap:
        return evaluate_map(FX, FY, f)


# --------------------------------------------------------------------------
# labeled direct sums


@dataclass
class LabeledSum:
    """X_1 ⊕ … ⊕ X_k with flat basis ordered by (degree, summand, local index)."""
    space: GradedVectorSpace
    summand: List[int]
    local: List[int]
    inclusions: List[GradedLinearMap]
    projections: List[GradedLinearMap]


def labeled_sum(Xs: Sequence[GradedVectorSpace]) -> LabeledSum:
    entries = []
    for s, X in enumerate(Xs):
        for j, d in enumerate(X.basis_degrees()):
            entries.append((d, s, j))
    entries.sort()
    space = GradedVectorSpace.from_degrees(d for d, _, _ in entries)
    summand = [s for _, s, _ in entries]
    local = [j for _, _, j in entries]
    pos = {(s, j): i for i, (_, s, j) in enumerate(entries)}
    incs, projs = [], []
    for s, X in enumerate(Xs):
        incs.append(GradedLinearMap(X, space, [{pos[(s, j)]: ONE} for j in range(X.total_dim)]))
        projs.append(GradedLinearMap(space, X, [{local[i]: ONE} if summand[i] == s else {}
                                                for i in range(len(entries))]))
    return LabeledSum(space, summand, local, incs, projs)


def wedge(X: GradedVectorSpace, k: int) -> LabeledSum:
    """∨_k X = k labeled copies of X."""
    return labeled_sum([X] * k)


def fold_map(S: LabeledSum, X: GradedVectorSpace) -> GradedLinearMap:
    """The map + : ∨_k X → X."""
    return GradedLinearMap(S.space, X, [{S.local[i]: ONE} for i in range(S.space.total_dim)])


def _multidegree(FS: EvaluatedSpace, S: LabeledSum, i: int, k: int) -> Tuple[int, ...]:
    _, w, _ = FS.basis[i]
    md = [0] * k
    for x in w:
        md[S.summand[x]] += 1
    return tuple(md)


def _sub_map(FS: EvaluatedSpace, keep: List[int]) -> Tuple[GradedVectorSpace, GradedLinearMap, GradedLinearMap]:
    """Coordinate subspace spanned by ``keep``: (space, inclusion, projection)."""
    V = GradedVectorSpace.from_degrees(FS.degree(i) for i in keep)
    pos = {i: t for t, i in enumerate(keep)}
    inc = GradedLinearMap(V, FS.space, [{i: ONE} for i in keep])
    proj = GradedLinearMap(FS.space, V, [{pos[i]: ONE} if i in pos else {} for i in range(FS.total_dim)])
    return V, inc, proj


# --------------------------------------------------------------------------
# cross effects


@dataclass
class MultiFunctorValue:
    inputs: List[GradedVectorSpace]
    space: GradedVectorSpace
    multidegrees: List[Tuple[int, ...]]
    ambient: EvaluatedSpace
    basis: List[int]                   # indices into the ambient evaluation
    inclusion: GradedLinearMap
    projection: GradedLinearMap

    def dims(self) -> Dict[int, int]:
        return dict(self.space.dims)

    def multilinear_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for i, md in zip(self.basis, self.multidegrees):
            if all(m == 1 for m in md):
                d = self.ambient.degree(i)
                out[d] = out.get(d, 0) + 1
        return out


def cross_effect(F: AnalyticFunctor, inputs: Sequence[GradedVectorSpace], D: int) -> MultiFunctorValue:
    """cr_k F(X_1, …, X_k): the summand of F(X_1 ⊕ … ⊕ X_k) using every input."""
    k = len(inputs)
    if k < 1:
        raise ValueError("cross effects need k ≥ 1")
    S = labeled_sum(inputs)
    FS = F(S.space, D)
    keep, mds = [], []
    for i in range(FS.total_dim):
        md = _multidegree(FS, S, i, k)
        if all(m > 0 for m in md):
            keep.append(i)
            mds.append(md)
    V, inc, proj = _sub_map(FS, keep)
    return MultiFunctorValue(list(inputs), V, mds, FS, keep, inc, proj)


def cross_effect_recursion(F: AnalyticFunctor, inputs: Sequence[GradedVectorSpace], D: int) -> Tuple[bool, Dict, Dict]:
    """cr_{k−1}F(X_1⊕X_2, X_3, …) ≅ cr_kF(X_1, X_2, …) ⊕ cr_{k−1}F(X_1, X_3, …) ⊕ cr_{k−1}F(X_2, X_3, …)."""
    X1, X2, rest = inputs[0], inputs[1], list(inputs[2:])
    lhs = cross_effect(F, [labeled_sum([X1, X2]).space] + rest, D).dims()
    rhs: Dict[int, int] = {}
    for part in (cross_effect(F, list(inputs), D), cross_effect(F, [X1] + rest, D),
                 cross_effect(F, [X2] + rest, D)):
        for d, x in part.dims().items():
            rhs[d] = rhs.get(d, 0) + x
    clean = lambda m: {d: x for d, x in sorted(m.items()) if x}
    return clean(lhs) == clean(rhs), clean(lhs), clean(rhs)


# --------------------------------------------------------------------------
# Taylor tower


def taylor_polynomial(F: AnalyticFunctor, n: int) -> AnalyticFunctor:
    return AnalyticFunctor(F.seq.truncate(n), F.sign_rule, f"P{n}({F.name})")


def layer(F: AnalyticFunctor, n: int) -> AnalyticFunctor:
    return AnalyticFunctor(F.seq.only(n), F.sign_rule, f"D{n}({F.name})")


def taylor_projection(F: AnalyticFunctor, n: int, X: GradedVectorSpace, D: int) -> GradedLinearMap:
    """p_n: F(X) → P_nF(X)."""
    FX, PX = F(X, D), taylor_polynomial(F, n)(X, D)
    return GradedLinearMap(FX.space, PX.space,
                           [{PX.index[FX.basis[i]]: ONE} if FX.basis[i] in PX.index else {}
                            for i in range(FX.total_dim)])


def coefficient(F: AnalyticFunctor, n: int) -> Tuple[SymGroupModule, GradedLinearMap]:
    """D_1^{(n)} cr_n F(S, …, S) with S = K in degree 0, as a Σ_n-module by permuting the inputs.

    Returns the module and its identification with F[n].
    """
    K = GradedVectorSpace({0: 1})
    top = max(F.seq.degrees(n), default=0)
    cr = cross_effect(AnalyticFunctor(F.seq.only(n), F.sign_rule), [K] * n, top)
    ml = [t for t, md in enumerate(cr.multidegrees) if all(m == 1 for m in md)]
    FS = cr.ambient
    idx = [cr.basis[t] for t in ml]
    V = GradedVectorSpace.from_degrees(FS.degree(i) for i in idx)
    pos = {i: t for t, i in enumerate(idx)}
    S = labeled_sum([K] * n)
    gens = []
    for t in range(n - 1):
        swap = transposition(n, t)
        perm = GradedLinearMap(S.space, S.space, [{_swap_copy(S, i, swap)[0]: ONE}
                                                   for i in range(S.space.total_dim)])
        Fp = evaluate_map(FS, FS, perm)
        gens.append(GradedLinearMap(V, V, [{pos[j]: x for j, x in Fp.columns[i].items()} for i in idx]))
    M = SymGroupModule(n, V, gens)
    Mn = F.seq[n]
    # multilinear element (n, (0..n−1), q) is q-th free vector of an unrelated quotient = q-th basis vector
    iso = GradedLinearMap(V, Mn.space, [{FS.lift(i)[1]: ONE} for i in idx])
    return M, iso


# --------------------------------------------------------------------------
# differentials


@dataclass
class Differential:
    space: GradedVectorSpace
    projection: GradedLinearMap        # F(X ⊕ Y) → ∇F(X; Y)
    inclusion: GradedLinearMap
    ambient: EvaluatedSpace
    basis: List[int]

    def dims(self) -> Dict[int, int]:
        return dict(self.space.dims)


def differential(F: AnalyticFunctor, X: GradedVectorSpace, Y: GradedVectorSpace, D: int) -> Differential:
    """∇F(X; Y): the part of F(X ⊕ Y) linear in X."""
    S = labeled_sum([X, Y])
    FS = F(S.space, D)
    keep = [i for i in range(FS.total_dim) if _multidegree(FS, S, i, 2)[0] == 1]
    V, inc, proj = _sub_map(FS, keep)
    return Differential(V, proj, inc, FS, keep)


def derivative_at_zero_matches(F: AnalyticFunctor, X: GradedVectorSpace, D: int) -> bool:
    """∇F(X; 0) ≅ D_1F(X) = F[1] ⊗ X."""
    lhs = differential(F, X, GradedVectorSpace(), D).dims()
    rhs = layer(F, 1)(X, D).dims()
    return {d: x for d, x in lhs.items() if x} == {d: x for d, x in rhs.items() if x}


# --------------------------------------------------------------------------
# tower splitting


@dataclass
class SplitSection:
    n: int
    copy: int
    section: GradedLinearMap           # ∇F(X_i; ∨_{others}X) → F(∨_n X)
    composite_identity: bool
    rank: int


@dataclass
class SplitConditionReport:
    sections: List[SplitSection]
    multilinear_sections: Dict[int, GradedLinearMap]   # D_1^{(n)}F(∨_n X) → F(∨_n X)
    wedges: Dict[int, Tuple[LabeledSum, EvaluatedSpace, List[int]]]

    @property
    def ok(self) -> bool:
        return all(s.composite_identity for s in self.sections)


def check_split_condition(F: AnalyticFunctor, X: GradedVectorSpace, n_max: int, D: int) -> SplitConditionReport:
    """For each n ≤ n_max and copy i, the part of F(∨_n X) linear in copy i splits off by a section."""
    sections: List[SplitSection] = []
    ml_secs: Dict[int, GradedLinearMap] = {}
    wedges = {}
    if all(F.seq[n].dim == 0 for n in range(1, F.max_arity + 1)):
        return SplitConditionReport([], {}, {})
    for n in range(1, n_max + 1):
        S = wedge(X, n)
        FS = F(S.space, D)
        mds = [_multidegree(FS, S, i, n) for i in range(FS.total_dim)]
        for c in range(n):
            keep = [i for i in range(FS.total_dim) if mds[i][c] == 1]
            V, inc, proj = _sub_map(FS, keep)
            comp = proj @ inc
            sections.append(SplitSection(n, c, inc, comp.is_identity(), comp.rank()))
        ml = [i for i in range(FS.total_dim) if all(m == 1 for m in mds[i])]
        V, inc, proj = _sub_map(FS, ml)
        ml_secs[n] = inc
        wedges[n] = (S, FS, ml)
    return SplitConditionReport(sections, ml_secs, wedges)


class SectionPreconditionError(ValueError):
    def __init__(self, n):
        super().__init__(f"supplied section fails the composite-identity condition at n={n}")
        self.n = n


@dataclass
class SplittingReport:
    isomorphism: bool
    block_map: GradedLinearMap         # ⊕_n (D_1^{(n)}F(∨_nX))_{Σ_n} → P_{n_max}F(X)
    block_dims: Dict[int, Dict[int, int]]
    target_dims: Dict[int, int]


def build_splitting(F: AnalyticFunctor, X: GradedVectorSpace, report: SplitConditionReport, n_max: int,
                    D: int) -> SplittingReport:
    """Assemble D_1^{(n)}F(∨_nX) → F(∨_nX) → F(X) (fold), descend to Σ_n-coinvariants, and check the sum is iso."""
    for s in report.sections:
        if not s.composite_identity:
            raise SectionPreconditionError(s.n)
    PX = taylor_polynomial(F, n_max)(X, D)
    FX = F(X, D)
    blocks: List[Tuple[GradedVectorSpace, List[SparseVec]]] = []
    block_dims = {}
    for n in range(1, n_max + 1):
        if n not in report.multilinear_sections:
            continue
        S, FS, ml = report.wedges[n]
        sec = report.multilinear_sections[n]
        fold = evaluate_map(FS, FX, fold_map(S, X))
        pos = {i: t for t, i in enumerate(ml)}
        V = sec.source
        gens = []
        for t in range(n - 1):
            swap = transposition(n, t)
            perm = GradedLinearMap(S.space, S.space, [{_swap_copy(S, i, swap)[0]: ONE}
                                                       for i in range(S.space.total_dim)])
            Fp = evaluate_map(FS, FS, perm)
            gens.append(GradedLinearMap(V, V, [{pos[j]: x for j, x in Fp.columns[i].items()} for i in ml]))
        M = SymGroupModule(n, V, gens)
        co = coinvariants(M, cap=max(7, n))
        lifted = co.section                  # coinvariants → M (averaged representatives)
        cols = []
        for c in lifted.columns:
            v = fold.apply(sec.apply(c))
            cols.append({PX.index[FX.basis[j]]: x for j, x in v.items() if FX.basis[j] in PX.index})
        blocks.append((co.space, cols))
        block_dims[n] = dict(co.space.dims)
    degs = []
    cols = []
    for V, cs in blocks:
        for d, c in zip(V.basis_degrees(), cs):
            degs.append((d, c))
    degs.sort(key=lambda e: e[0])
    src = GradedVectorSpace.from_degrees(d for d, _ in degs)
    block = GradedLinearMap(src, PX.space, [c for _, c in degs])
    return SplittingReport(block.is_isomorphism(), block, block_dims, PX.dims())


def _swap_copy(S: LabeledSum, i: int, swap) -> Tuple[int]:
    s, j = S.summand[i], S.local[i]
    for t in range(S.space.total_dim):
        if S.summand[t] == swap[s] and S.local[t] == j:
            return (t,)
    raise IndexError(i)


def dnfa_identity(F: AnalyticFunctor, X: GradedVectorSpace, n: int, k: int, D: int) -> Tuple[bool, Dict, Dict]:
    """dim D_nF(∨_k X) against the cycle-index count of F[n] ⊗_{Σ_n} (∨_k X)^{⊗n}."""
    S = wedge(X, k)
    lhs = layer(F, n)(S.space, D).dims()
    rhs = cycle_index_series(F.seq.only(n), S.space, D, F.sign_rule)
    clean = lambda m: {d: x for d, x in sorted(m.items()) if x}
    return clean(lhs) == clean(rhs), clean(lhs), clean(rhs)


def chain_rule(F: AnalyticFunctor, G: AnalyticFunctor) -> bool:
    """(F∘G)[1] ≅ F[1] ⊗ G[1] on the partition basis."""
    from .symseq import compose
    FG = compose(F.seq, G.seq, 1)
    return FG[1].dim == F.seq[1].dim * G.seq[1].dim
