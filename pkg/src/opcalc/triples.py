"""Analytic triples, the triple → operad construction, and the compatibility machinery."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .calculus import AnalyticFunctor, coefficient
from .exactlin import ONE, Echelon, GradedLinearMap, GradedVectorSpace, SparseVec, permutation_sign, vec_add, vec_iadd
from .operads.base import Operad, OperadMorphism, multilinear, signature_str
from .operads.builtins import ExpressionOperad, builtin_operad, evaluate_tree, v_add
from .symrep import block_permutation, inverse, transposition
from .symseq import CompositeBasis, EvaluatedSpace, SymmetricSequence, compose, set_partitions

Elem = Tuple[Tuple[Tuple[int, ...], ...], int, Tuple[int, ...]]   # (blocks, f, gs)
MuFn = Callable[[int, Elem], SparseVec]


def elem_signature(elem: Elem) -> str:
    blocks, _, _ = elem
    return signature_str(len(blocks), [len(B) for B in blocks])


class AnalyticTriple:
    """A functor F (by its coefficients) with μ: F∘F ⇒ F on the partition basis and η: K → F[1]."""

    def __init__(self, seq: SymmetricSequence, mu: MuFn, eta: SparseVec, name: str = ""):
        self.seq = seq
        self.functor = AnalyticFunctor(seq)
        self._mu = mu
        self.eta = dict(eta)
        self.name = name or seq.name
        self._cache: Dict[Tuple[int, Elem], SparseVec] = {}
        self._bases: Dict[int, CompositeBasis] = {}

    @property
    def sign_rule(self) -> str:
        return self.seq.sign_rule

    @property
    def max_arity(self) -> int:
        return self.seq.max_arity

    def composite_basis(self, n: int) -> CompositeBasis:
        hit = self._bases.get(n)
        if hit is None:
            hit = CompositeBasis(self.seq, self.seq, n)
            self._bases[n] = hit
        return hit

    def mu(self, n: int, elem: Elem) -> SparseVec:
        key = (n, elem)
        hit = self._cache.get(key)
        if hit is None:
            hit = {i: x for i, x in self._mu(n, elem).items() if x}
            self._cache[key] = hit
        return hit

    def mu_vec(self, blocks, f: Mapping[int, Fraction], gs: Sequence[Mapping[int, Fraction]]) -> SparseVec:
        n = sum(len(B) for B in blocks)
        out: SparseVec = {}
        for (fi, *gi), c in multilinear([f] + list(gs)):
            vec_iadd(out, self.mu(n, (tuple(blocks), fi, tuple(gi))), c)
        return out

    def mu_map(self, n: int) -> GradedLinearMap:
        B = self.composite_basis(n)
        return GradedLinearMap(B.space, self.seq[n].space, [self.mu(n, e) for e in B.elements])

    def perturbed(self, n: int, elem: Elem, value: SparseVec) -> "AnalyticTriple":
        """Copy with a single μ component replaced."""
        base = self

        def mu(m, e):
            if m == n and e == elem:
                return dict(value)
            return base.mu(m, e)
        return AnalyticTriple(self.seq, mu, self.eta, self.name + "*")

    def __repr__(self):
        return f"AnalyticTriple({self.name}, dims={self.seq.dims()})"


# --------------------------------------------------------------------------
# constructions


def associated_triple(a: Operad, check: bool = False) -> AnalyticTriple:
    """T_a with μ(π, f, g) = σ_π · γ(f; g_1, …, g_k)."""
    if check:
        from .operads.base import check_operad_laws
        rep = check_operad_laws(a)
        if rep:
            raise ValueError(f"operad laws fail: {rep[0]}")

    def mu(n, elem):
        blocks, f, gs = elem
        js = [len(B) for B in blocks]
        val = a.gamma(f, tuple(zip(js, gs)))
        sigma = [x for B in blocks for x in B]
        return a.act(n, sigma, val)
    return AnalyticTriple(a.seq, mu, a.unit, f"T_{a.name}")


def substitution_triple(a: ExpressionOperad) -> AnalyticTriple:
    """μ by substituting expressions: the outer tree is evaluated on the inner values placed on their labels."""
    model = a.model
    ops = model.ops()

    def mu(n, elem):
        blocks, f, gs = elem
        args, degs = [], []
        for B, g in zip(blocks, gs):
            args.append(_place(model, a.values[len(B)][g], B))
            degs.append(a.degree(len(B), g))
        val = evaluate_tree(a.trees[len(blocks)][f], args, degs, ops)
        return a.coordinates(n, val)
    return AnalyticTriple(a.seq, mu, a.unit, f"S_{a.name}")


def _place(model, value, labels):
    if hasattr(model, "relabel_sorted"):
        return model.relabel_sorted(value, list(labels))
    return model.relabel(value, list(labels))


def builtin_triple(name: str, N: int) -> AnalyticTriple:
    """tensor (T(X)), sym (S(X)), lie (free Lie algebra), or any builtin operad name, by substitution."""
    alias = {"tensor": "assoc", "sym": "com", "free-lie": "lie"}
    return substitution_triple(builtin_operad(alias.get(name, name), N))


# --------------------------------------------------------------------------
# laws


def _record(failures, key, diff):
    if diff:
        failures.setdefault(key, []).append(diff)


def check_triple_laws(T: AnalyticTriple, N: Optional[int] = None) -> List[dict]:
    """Unit, naturality (Σ_n-equivariance), and associativity of μ through arity N."""
    N = T.max_arity if N is None else min(N, T.max_arity)
    F = T.seq
    koszul = T.sign_rule == "koszul"
    failures: Dict[Tuple[str, str], List[SparseVec]] = {}
    for n in range(1, N + 1):
        for i in range(F[n].dim):
            e = {i: ONE}
            left = T.mu_vec([tuple(range(n))], T.eta, [e])
            _record(failures, ("unit-left", signature_str(1, [n])), vec_add(left, e, -ONE))
            right = T.mu_vec([(x,) for x in range(n)], e, [T.eta] * n)
            _record(failures, ("unit-right", signature_str(n, [1] * n)), vec_add(right, e, -ONE))
    for n in range(1, N + 1):
        B = T.composite_basis(n)
        for t in range(n - 1):
            s = transposition(n, t)
            for elem in B.elements:
                lhs = _mu_on(T, B, B.act(s, elem))
                rhs = F[n].act_on(s, T.mu(n, elem))
                _record(failures, ("naturality", elem_signature(elem)), vec_add(lhs, rhs, -ONE))
    for n in range(1, N + 1):
        for outer in set_partitions(range(n)):
            k = len(outer)
            if not F[k].dim:
                continue
            inner_options = [set_partitions(U) for U in outer]
            for inners in itertools.product(*inner_options):
                _associativity(T, n, outer, inners, koszul, failures)
    report = [{"law": law, "signature": sig, "rank": len(Echelon(d))} for (law, sig), d in failures.items()]
    report.sort(key=lambda r: (r["law"], r["signature"]))
    return report


def _mu_on(T: AnalyticTriple, B: CompositeBasis, vec: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for j, c in vec.items():
        vec_iadd(out, T.mu(B.n, B.elements[j]), c)
    return out


def _associativity(T: AnalyticTriple, n, outer, inners, koszul, failures):
    """Compare μ∘(Fμ) and μ∘(μF) on the nested partition (outer blocks U_s, sub-blocks B_{s,t})."""
    F = T.seq
    k = len(outer)
    ms = [len(p) for p in inners]
    if any(not F[m].dim for m in ms):
        return
    subs = [(s, t, B) for s, p in enumerate(inners) for t, B in enumerate(p)]
    if any(not F[len(B)].dim for _, _, B in subs):
        return
    order = sorted(range(len(subs)), key=lambda r: min(subs[r][2]))
    rank_of = {order[r]: r for r in range(len(order))}
    ranges = [range(F[k].dim)] + [range(F[m].dim) for m in ms] + [range(F[len(B)].dim) for _, _, B in subs]
    sig = signature_str(k, [len(U) for U in outer]) + "|" + ",".join(str(m) for m in ms)
    diffs = []
    for idx in itertools.product(*ranges):
        f = idx[0]
        gs = idx[1:1 + k]
        hs = idx[1 + k:]
        # route A: combine each g_s with its h's inside U_s, then f with the results
        mids = []
        pos = 0
        for s, U in enumerate(outer):
            rank = {x: r for r, x in enumerate(U)}
            local_blocks = tuple(tuple(rank[x] for x in B) for B in inners[s])
            hh = hs[pos:pos + ms[s]]
            mids.append(T.mu(len(U), (local_blocks, gs[s], tuple(hh))))
            pos += ms[s]
        route_a = T.mu_vec(outer, {f: ONE}, mids)
        # route B: combine f with the g's on the middle labels (ranks of sub-blocks), then with the h's
        mid_blocks = []
        pos = 0
        for s in range(k):
            mid_blocks.append(tuple(sorted(rank_of[pos + t] for t in range(ms[s]))))
            pos += ms[s]
        fg = T.mu(len(subs), (tuple(mid_blocks), f, tuple(gs)))
        sorted_blocks = tuple(subs[r][2] for r in order)
        sorted_h = [{hs[r]: ONE} for r in order]
        route_b = T.mu_vec(sorted_blocks, fg, sorted_h)
        if koszul:
            pos = 0
            seq_deg = [F.degrees(k)[f]]
            # source order: f, g_1, h_1*, g_2, h_2*, …
            src = [("f",)]
            for s in range(k):
                src.append(("g", s))
                seq_deg.append(F.degrees(ms[s])[gs[s]])
                for t in range(ms[s]):
                    src.append(("h", pos + t))
                    seq_deg.append(F.degrees(len(subs[pos + t][2]))[hs[pos + t]])
                pos += ms[s]
            tgt = [("f",)] + [("g", s) for s in range(k)] + [("h", r) for r in order]
            where = {x: i for i, x in enumerate(src)}
            perm = [where[x] for x in tgt]
            if permutation_sign(perm, seq_deg) < 0:
                route_b = {i: -x for i, x in route_b.items()}
        d = vec_add(route_a, route_b, -ONE)
        if d:
            diffs.append(d)
    if diffs:
        failures.setdefault(("associativity", sig), []).extend(diffs)


# --------------------------------------------------------------------------
# triples → operads


class InducedOperad(Operad):
    """a_T(n) = D_1^{(n)} cr_n F(S), γ = μ on consecutive partitions."""

    def __init__(self, T: AnalyticTriple, N: Optional[int] = None):
        self.triple = T
        N = T.max_arity if N is None else min(N, T.max_arity)
        self.isos: Dict[int, GradedLinearMap] = {}
        comps = [T.seq[0]]
        for n in range(1, N + 1):
            M, iso = coefficient(T.functor, n)
            self.isos[n] = iso
            comps.append(M)
        seq = SymmetricSequence(comps, T.sign_rule, name=f"a({T.name})")
        # coordinates in a_T(n) agree with F[n] through iso; keep a map back
        self._back = {n: _inverse(iso) for n, iso in self.isos.items()}
        unit = self._back[1].apply(T.eta) if N >= 1 else {}
        super().__init__(seq, unit, seq.name)

    def to_functor(self, n: int, v: Mapping[int, Fraction]) -> SparseVec:
        return self.isos[n].apply(v)

    def from_functor(self, n: int, v: Mapping[int, Fraction]) -> SparseVec:
        return self._back[n].apply(v)

    def _gamma(self, mu, nus):
        blocks = []
        off = 0
        for j, _ in nus:
            blocks.append(tuple(range(off, off + j)))
            off += j
        k = len(nus)
        fv = self.to_functor(k, {mu: ONE})
        gv = [self.to_functor(j, {i: ONE}) for j, i in nus]
        val = self.triple.mu_vec(blocks, fv, gv)
        return self.from_functor(off, val)


def _inverse(f: GradedLinearMap) -> GradedLinearMap:
    from .exactlin import solve_section
    s = solve_section(f)
    if s is None or not (s @ f).is_identity():
        raise ValueError("coefficient identification is not invertible")
    return s


def induced_operad(T: AnalyticTriple, N: Optional[int] = None, check: bool = False) -> InducedOperad:
    if check:
        rep = check_triple_laws(T, N)
        if rep:
            raise ValueError(f"triple laws fail: {rep[0]}")
    return InducedOperad(T, N)


def roundtrip_identity(a: Operad, N: Optional[int] = None) -> OperadMorphism:
    """induced_operad(associated_triple(a)) → a via the coefficient identification."""
    ind = InducedOperad(associated_triple(a), N)
    return OperadMorphism(ind, a, dict(ind.isos))


def triple_morphism_to_operad(ind_src: InducedOperad, ind_tgt: InducedOperad,
                              components: Mapping[int, GradedLinearMap]) -> OperadMorphism:
    """Operad map induced by a natural transformation given on coefficients."""
    comps = {n: ind_tgt._back[n] @ f @ ind_src.isos[n] for n, f in components.items() if n in ind_src.isos}
    return OperadMorphism(ind_src, ind_tgt, comps)


def check_triple_morphism(S: AnalyticTriple, T: AnalyticTriple, components: Mapping[int, GradedLinearMap],
                          N: Optional[int] = None) -> List[str]:
    """Signatures where φ∘μ_S ≠ μ_T∘(φ∘φ)."""
    N = min(S.max_arity, T.max_arity) if N is None else N
    bad = []
    for n in range(1, N + 1):
        B = S.composite_basis(n)
        for elem in B.elements:
            blocks, f, gs = elem
            lhs = components[n].apply(S.mu(n, elem))
            rhs = T.mu_vec(blocks, components[len(blocks)].columns[f],
                           [components[len(Bk)].columns[g] for Bk, g in zip(blocks, gs)])
            if vec_add(lhs, rhs, -ONE):
                bad.append(elem_signature(elem))
    return sorted(set(bad))


# --------------------------------------------------------------------------
# ν: T_{a_T} ⇒ T and compatibility


class CanonicalNu:
    """ν on coefficients (a_T(n) → F[n]) and on values T_{a_T}(X) → F(X)."""

    def __init__(self, T: AnalyticTriple, N: Optional[int] = None):
        self.T = T
        self.a = InducedOperad(T, N)
        self.components: Dict[int, GradedLinearMap] = {}
        for n in self.a.isos:
            self.components[n] = self._component(n)

    def _component(self, n: int) -> GradedLinearMap:
        """Unit insertion then multiplication: m ↦ μ(singletons; m, η, …, η)."""
        T = self.T
        cols = []
        for i in range(self.a.dim(n)):
            m = self.a.to_functor(n, {i: ONE})
            cols.append(T.mu_vec([(x,) for x in range(n)], m, [T.eta] * n))
        return GradedLinearMap(self.a.seq[n].space, T.seq[n].space, cols)

    def on_values(self, X: GradedVectorSpace, D: int) -> Tuple[EvaluatedSpace, EvaluatedSpace, GradedLinearMap]:
        src = EvaluatedSpace(self.a.seq, X, D, self.T.sign_rule)
        tgt = EvaluatedSpace(self.T.seq, X, D, self.T.sign_rule)
        cols = []
        for i in range(src.total_dim):
            n, m, w = src.lift(i)
            cols.append(tgt.coords(n, self.components[n].columns[m], w))
        return src, tgt, GradedLinearMap(src.space, tgt.space, cols)

    def check_tripmap(self, N: Optional[int] = None) -> List[str]:
        """ν∘μ_{a} = μ_T∘(ν∘ν) on every composite basis element of (a∘a)[n]."""
        a_triple = associated_triple(self.a)
        comps = self.components
        return check_triple_morphism(a_triple, self.T, comps, N)


def canonical_nu(T: AnalyticTriple, N: Optional[int] = None) -> CanonicalNu:
    return CanonicalNu(T, N)


def check_compatibility(T: AnalyticTriple, X: GradedVectorSpace, D: int) -> Tuple[bool, dict]:
    """Compare the two actions a_T(k) ⊗ F(X)^{⊗k} → F(X): through ν then μ, and through γ of a_T.

    On a mismatch the report names the μ components that fail naturality.
    """
    N = min(T.max_arity, D)
    nu = CanonicalNu(T, N)
    a = nu.a
    rule = T.sign_rule
    FX = EvaluatedSpace(T.seq, X, D, rule)
    FFseq = compose(T.seq, T.seq, N)
    FFX = EvaluatedSpace(FFseq, X, D, rule)
    bases = {n: T.composite_basis(n) for n in range(1, N + 1)}
    src = EvaluatedSpace(a.seq, FX.space, D, rule)
    mismatched = []
    for i in range(src.total_dim):
        k, m, w = src.lift(i)
        lifts = [FX.lift(c) for c in w]
        total = sum(n for n, _, _ in lifts)
        if total > N:
            continue
        # route 2: induced-operad action, then ν
        sign = 1
        if rule == "koszul":
            for p in range(k):
                wdeg = sum(FX.xdeg[x] for x in lifts[p][2])
                for q in range(p + 1, k):
                    if wdeg % 2 and T.seq.degrees(lifts[q][0])[lifts[q][1]] % 2:
                        sign = -sign
        xs = tuple(x for _, _, ws in lifts for x in ws)
        g = a.gamma_vec({m: ONE}, [(n, a.from_functor(n, {mm: ONE})) for n, mm, _ in lifts])
        route2 = FX.coords(total, nu.components[total].apply(g), xs)
        if sign < 0:
            route2 = {x: -y for x, y in route2.items()}
        # route 1: ν on the outer layer, canonicalize in (F∘F)(X), lift, apply μ
        fvec = nu.components[k].columns[m]
        route1: SparseVec = {}
        off = 0
        blocks = []
        for n, _, _ in lifts:
            blocks.append(tuple(range(off, off + n)))
            off += n
        gidx = tuple(mm for _, mm, _ in lifts)
        for f, c in fvec.items():
            elem = (tuple(blocks), f, gidx)
            B = bases[total]
            ff_vec = {B.index[elem]: c}
            coords = FFX.coords(total, ff_vec, xs)
            if sign < 0:
                coords = {x: -y for x, y in coords.items()}
            for j, cj in coords.items():
                n2, e2, w2 = FFX.lift(j)
                vec_iadd(route1, FX.coords(n2, T.mu(n2, B.elements[e2]), w2), cj)
        if vec_add(route1, route2, -ONE):
            mismatched.append(i)
    ok = not mismatched
    report = {"mismatches": len(mismatched), "components": []}
    if not ok:
        report["components"] = _non_natural_components(T, N)
    return ok, report


def _non_natural_components(T: AnalyticTriple, N: int) -> List[dict]:
    out = []
    for n in range(1, N + 1):
        B = T.composite_basis(n)
        for elem in B.elements:
            for t in range(n - 1):
                s = transposition(n, t)
                lhs = _mu_on(T, B, B.act(s, elem))
                rhs = T.seq[n].act_on(s, T.mu(n, elem))
                if vec_add(lhs, rhs, -ONE):
                    out.append({"arity": n, "blocks": [list(b) for b in elem[0]], "f": elem[1],
                                "gs": list(elem[2]), "signature": elem_signature(elem)})
                    break
    return out


def lie_to_assoc_functoriality(N: int) -> Tuple[List[str], OperadMorphism, OperadMorphism]:
    """The inclusion free-Lie triple → tensor triple and the operad map it induces.

    Returns (triple-morphism failures, induced map, standard Lie → Assoc map).
    """
    from .operads.free import expression_morphism
    lie, assoc = builtin_operad("lie", N), builtin_operad("assoc", N)
    L, T = substitution_triple(lie), substitution_triple(assoc)
    std = expression_morphism(lie, assoc, N)
    bad = check_triple_morphism(L, T, std.components, N)
    induced = triple_morphism_to_operad(InducedOperad(L, N), InducedOperad(T, N), std.components)
    return bad, induced, std


def same_components(f: OperadMorphism, g: OperadMorphism, iso_src: Mapping[int, GradedLinearMap],
                    iso_tgt: Mapping[int, GradedLinearMap]) -> bool:
    """f agrees with g after transport along the coefficient identifications."""
    return all(iso_tgt[n] @ f.components[n] == g.components[n] @ iso_src[n] for n in f.components)
