"""Algebras over operads: free algebras, algebras from binary operations, quotients, law checks."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..exactlin import (ONE, Echelon, GradedLinearMap, GradedVectorSpace, SparseVec, koszul_sign,
                        permutation_sign, vec_add, vec_iadd)
from ..operads.base import Operad, compositions, multilinear, signature_str
from ..operads.builtins import TreeOps, evaluate_tree
from ..symrep import transposition
from ..symseq import EvaluatedSpace

Theta = Callable[[int, int, Tuple[int, ...]], SparseVec]


def degree_tuples(degs: Sequence[int], k: int, budget: int) -> List[Tuple[int, ...]]:
    """All ordered k-tuples of basis indices with total degree ≤ budget (degs ascending, positive)."""
    if k == 0:
        return [()]
    out = []
    for i, d in enumerate(degs):
        if d > budget:
            break
        for rest in degree_tuples(degs, k - 1, budget - d):
            out.append((i,) + rest)
    return out


def echelon_dims(ech: Echelon, degs: Sequence[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in ech.rows:
        out[degs[p]] = out.get(degs[p], 0) + 1
    return out


class AlgebraOverOperad:
    """A graded space C with action maps θ_k: a(k) ⊗ C^{⊗k} → C, truncated to degree ≤ D.

    ``theta(k, mu, cs)`` evaluates θ on basis element ``mu`` of a(k) and a tuple
    of carrier basis indices.  Convention: θ(σ·μ; c_1, …) = ±θ(μ; c_σ(1), …).
    """

    def __init__(self, operad: Operad, carrier: GradedVectorSpace, theta: Theta, D: int,
                 sign_rule: Optional[str] = None, name: str = ""):
        self.operad = operad
        self.carrier = carrier
        self._theta = theta
        self.D = D
        self.sign_rule = sign_rule or operad.sign_rule
        self.name = name
        self.degs = carrier.basis_degrees()
        self._cache: Dict[Tuple[int, int, Tuple[int, ...]], SparseVec] = {}
        if self.degs and min(self.degs) <= 0:
            raise ValueError("carrier must be concentrated in positive degrees")

    @property
    def dim(self) -> int:
        return len(self.degs)

    @property
    def max_arity(self) -> int:
        return min(self.operad.max_arity, self.D)

    def dims(self) -> Dict[int, int]:
        return dict(self.carrier.dims)

    def vec_degree(self, v: Mapping[int, Fraction]) -> Optional[int]:
        ds = {self.degs[i] for i in v}
        return ds.pop() if len(ds) == 1 else None

    def theta(self, k: int, mu: int, cs: Sequence[int]) -> SparseVec:
        cs = tuple(cs)
        if k > self.operad.max_arity:
            return {}
        if self.operad.degree(k, mu) + sum(self.degs[c] for c in cs) > self.D:
            return {}
        key = (k, mu, cs)
        hit = self._cache.get(key)
        if hit is None:
            hit = {i: x for i, x in self._theta(k, mu, cs).items() if x}
            self._cache[key] = hit
        return hit

    def theta_vec(self, mu: Mapping[int, Fraction], cs: Sequence[Mapping[int, Fraction]]) -> SparseVec:
        k = len(cs)
        out: SparseVec = {}
        for (m, *idx), c in multilinear([mu] + list(cs)):
            vec_iadd(out, self.theta(k, m, tuple(idx)), c)
        return out

    def source_space(self, n: int) -> EvaluatedSpace:
        """a(n) ⊗_{Σ_n} C^{⊗n}, truncated to degree ≤ D."""
        return EvaluatedSpace(self.operad.seq, self.carrier, self.D, self.sign_rule, arities=[n])

    def theta_map(self, n: int) -> Tuple[EvaluatedSpace, GradedLinearMap]:
        src = self.source_space(n)
        cols = []
        for i in range(src.total_dim):
            _, m, w = src.lift(i)
            cols.append(self.theta(n, m, w))
        return src, GradedLinearMap(src.space, self.carrier, cols)

    def with_theta(self, override: Callable[[int, int, Tuple[int, ...], SparseVec], SparseVec],
                   name: str = "") -> "AlgebraOverOperad":
        """Copy with θ post-processed by ``override(k, mu, cs, value)``; used for corruption tests."""
        base = self

        def theta(k, mu, cs):
            return override(k, mu, cs, base.theta(k, mu, cs))
        return AlgebraOverOperad(self.operad, self.carrier, theta, self.D, self.sign_rule, name or self.name)

    def __repr__(self):
        return f"AlgebraOverOperad({self.operad.name}, dims={self.dims()}, D={self.D})"


# --------------------------------------------------------------------------
# constructors


class FreeAlgebra(AlgebraOverOperad):
    """T_a(X) = ⊕ a(n) ⊗_{Σ_n} X^{⊗n} with θ induced by γ."""

    def __init__(self, operad: Operad, X: GradedVectorSpace, D: int, sign_rule: Optional[str] = None):
        rule = sign_rule or operad.sign_rule
        self.X = X
        self.space = EvaluatedSpace(operad.seq, X, D, rule)
        super().__init__(operad, self.space.space, self._free_theta, D, rule, f"T_{operad.name}")

    def _free_theta(self, k: int, mu: int, cs: Tuple[int, ...]) -> SparseVec:
        a = self.operad
        lifts = [self.space.lift(c) for c in cs]
        total = sum(n for n, _, _ in lifts)
        if total > a.max_arity:
            return {}
        sign = 1
        if self.sign_rule == "koszul":
            for i in range(k):
                wdeg = sum(self.space.xdeg[x] for x in lifts[i][2])
                for j in range(i + 1, k):
                    sign *= koszul_sign(wdeg, a.degree(lifts[j][0], lifts[j][1]))
        g = a.gamma(mu, tuple((n, m) for n, m, _ in lifts))
        w = tuple(x for _, _, ws in lifts for x in ws)
        out = self.space.coords(total, g, w)
        return out if sign > 0 else {i: -x for i, x in out.items()}

    def generator(self, x: int) -> SparseVec:
        """Image of the basis vector x of X under η: X → T_a(X)."""
        return self.space.coords(1, self.operad.unit, (x,))

    def generator_inclusion(self) -> GradedLinearMap:
        return GradedLinearMap(self.X, self.carrier, [self.generator(x) for x in range(self.X.total_dim)])


def binary_algebra(operad, carrier: GradedVectorSpace, D: int, mul=None, br=None,
                   sign_rule: Optional[str] = None, name: str = "") -> AlgebraOverOperad:
    """Algebra over a builtin operad from bilinear operations on carrier basis indices.

    ``mul(i, j)`` / ``br(i, j)`` return sparse vectors; θ evaluates the
    tree naming each operad basis element.
    """
    rule = sign_rule or operad.sign_rule
    degs = carrier.basis_degrees()

    def lift(op):
        if op is None:
            return None

        def f(u, v, du=0, dv=0):
            out: SparseVec = {}
            for i, x in u.items():
                for j, y in v.items():
                    if degs[i] + degs[j] <= D:
                        vec_iadd(out, op(i, j), x * y)
            return out
        return f

    ops = TreeOps(lift(mul), lift(br), 0, rule == "koszul")

    def theta(k, mu, cs):
        return evaluate_tree(operad.tree(k, mu), [{c: ONE} for c in cs], [degs[c] for c in cs], ops)
    return AlgebraOverOperad(operad, carrier, theta, D, rule, name)


def algebra_ideal(C: AlgebraOverOperad, relations: Iterable[SparseVec]) -> Echelon:
    """Smallest subspace containing the relations and closed under θ with any other inputs."""
    ech = Echelon()
    todo = []
    for r in relations:
        if ech.add(r):
            todo.append(dict(r))
    a = C.operad
    while todo:
        r = todo.pop()
        dr = C.vec_degree(r)
        for k in range(2, C.max_arity + 1):
            for mu in range(a.dim(k)):
                budget = C.D - dr - a.degree(k, mu)
                if budget < k - 1:
                    continue
                for others in degree_tuples(C.degs, k - 1, budget):
                    for pos in range(k):
                        cs = [{c: ONE} for c in others]
                        cs.insert(pos, r)
                        v = C.theta_vec({mu: ONE}, cs)
                        if v and ech.add(v):
                            todo.append(v)
    return ech


class QuotientAlgebra(AlgebraOverOperad):
    """C / J for an ideal J (given as an echelon form); basis = non-pivot carrier vectors."""

    def __init__(self, parent: AlgebraOverOperad, ideal: Echelon, name: str = ""):
        self.parent = parent
        self.ideal = ideal
        self.free = [i for i in range(parent.dim) if i not in ideal.rows]
        self.pos = {i: k for k, i in enumerate(self.free)}
        carrier = GradedVectorSpace.from_degrees(parent.degs[i] for i in self.free)
        super().__init__(parent.operad, carrier, self._q_theta, parent.D, parent.sign_rule,
                         name or f"{parent.name}/J")

    def reduce(self, v: Mapping[int, Fraction]) -> SparseVec:
        return {self.pos[i]: x for i, x in self.ideal.reduce(v).items()}

    def projection(self) -> GradedLinearMap:
        return GradedLinearMap(self.parent.carrier, self.carrier,
                               [self.reduce({i: ONE}) for i in range(self.parent.dim)])

    def _q_theta(self, k, mu, cs):
        return self.reduce(self.parent.theta(k, mu, tuple(self.free[c] for c in cs)))


def quotient_algebra(C: AlgebraOverOperad, relations: Iterable[SparseVec], name: str = "") -> QuotientAlgebra:
    return QuotientAlgebra(C, algebra_ideal(C, relations), name)


# --------------------------------------------------------------------------
# law checks


def check_algebra_laws(C: AlgebraOverOperad, N: Optional[int] = None) -> List[dict]:
    """Unit, equivariance, and associativity of θ on basis inputs through arity N and degree D.

    Entries: {"law", "signature", "detail", "rank"} with the signature of the
    operad composition involved.
    """
    a = C.operad
    N = C.max_arity if N is None else min(N, C.max_arity)
    koszul = C.sign_rule == "koszul"
    degs = C.degs
    failures: Dict[Tuple[str, str, str], List[SparseVec]] = {}

    def record(key, diff):
        if diff:
            failures.setdefault(key, []).append(diff)

    for c in range(C.dim):
        record(("unit", "1", ""), vec_add(C.theta_vec(a.unit, [{c: ONE}]), {c: ONE}, -ONE))
    for k in range(2, N + 1):
        for mu in range(a.dim(k)):
            budget = C.D - a.degree(k, mu)
            for cs in degree_tuples(degs, k, budget):
                for t in range(k - 1):
                    sigma = transposition(k, t)
                    lhs = C.theta_vec(a.act(k, sigma, {mu: ONE}), [{c: ONE} for c in cs])
                    sw = list(cs)
                    sw[t], sw[t + 1] = sw[t + 1], sw[t]
                    rhs = C.theta(k, mu, tuple(sw))
                    if koszul and degs[cs[t]] % 2 and degs[cs[t + 1]] % 2:
                        rhs = {i: -x for i, x in rhs.items()}
                    record(("equivariance", str(k), f"s{t + 1}"), vec_add(lhs, rhs, -ONE))
    for k, js in a.signatures(N):
        n = sum(js)
        for idx in itertools.product(range(a.dim(k)), *[range(a.dim(j)) for j in js]):
            mu, nus = idx[0], tuple(zip(js, idx[1:]))
            opdeg = a.degree(k, mu) + sum(a.degree(j, i) for j, i in nus)
            comp = a.gamma(mu, nus)
            for cs in degree_tuples(degs, n, C.D - opdeg):
                lhs = C.theta_vec(comp, [{c: ONE} for c in cs])
                inner = []
                pos = 0
                sign = 1
                before = 0
                for j, i in nus:
                    block = cs[pos:pos + j]
                    inner.append(C.theta(j, i, block))
                    if koszul:
                        sign *= koszul_sign(a.degree(j, i), before)
                    before += sum(degs[c] for c in block)
                    pos += j
                rhs = C.theta_vec({mu: ONE}, inner)
                if sign < 0:
                    rhs = {i: -x for i, x in rhs.items()}
                record(("associativity", signature_str(k, js), ""), vec_add(lhs, rhs, -ONE))
    report = [{"law": law, "signature": sig, "detail": det, "rank": len(Echelon(d))}
              for (law, sig, det), d in failures.items()]
    report.sort(key=lambda r: (r["law"], r["signature"], r["detail"]))
    return report
