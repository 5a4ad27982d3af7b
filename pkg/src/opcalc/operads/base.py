"""Operads over graded vector spaces: structure maps, law checks, morphisms.

Conventions.  Σ_n acts on a(n) on the left by relabeling inputs, so that
``(σ·μ)(a_1, …, a_n) = ± μ(a_σ(1), …, a_σ(n))``.  The composite
``gamma(mu, nus)`` substitutes ν_s into input s, with the inputs of ν_s
occupying the s-th consecutive block of labels.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..exactlin import (
    ONE,
    Echelon,
    GradedLinearMap,
    SparseVec,
    koszul_sign,
    permutation_sign,
    vec_add,
    vec_iadd,
)
from ..symrep import apply_permutation, block_permutation, block_sum, identity_perm, transposition
from ..symseq import SymmetricSequence

Node = Tuple[int, int]  # (arity, basis index)


class ArityOverflow(ValueError):
    """A composite would exceed the operad's arity truncation."""


def signature_str(k: int, js: Sequence[int]) -> str:
    return f"{k};{','.join(str(j) for j in js)}"


def compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multilinear(vectors: Sequence[Mapping[int, Fraction]]):
    """Iterate (index tuple, coefficient) over the tensor product of sparse vectors."""
    for combo in itertools.product(*[list(v.items()) for v in vectors]):
        c = ONE
        idx = []
        for i, x in combo:
            c *= x
            idx.append(i)
        yield tuple(idx), c


class Operad:
    """Base class; subclasses implement :meth:`_gamma` on basis elements."""

    def __init__(self, seq: SymmetricSequence, unit: SparseVec, name: Optional[str] = None):
        self.seq = seq
        self.unit = dict(unit)
        self.name = name or seq.name
        self._cache: Dict[Tuple[int, Tuple[Node, ...]], SparseVec] = {}

    # basic data
    @property
    def sign_rule(self) -> str:
        return self.seq.sign_rule

    @property
    def max_arity(self) -> int:
        return self.seq.max_arity

    def dim(self, n: int) -> int:
        return self.seq[n].dim

    def dims(self) -> List[int]:
        return self.seq.dims()

    def degree(self, n: int, i: int) -> int:
        return self.seq.degrees(n)[i]

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, dims={self.dims()})"

    # structure maps
    def _gamma(self, mu: int, nus: Tuple[Node, ...]) -> SparseVec:
        raise NotImplementedError

    def gamma(self, mu: int, nus: Sequence[Node]) -> SparseVec:
        nus = tuple((int(j), int(i)) for j, i in nus)
        total = sum(j for j, _ in nus)
        if total > self.max_arity:
            raise ArityOverflow(f"composite arity {total} exceeds {self.max_arity}")
        key = (mu, nus)
        hit = self._cache.get(key)
        if hit is None:
            hit = {k: x for k, x in self._gamma(mu, nus).items() if x}
            self._cache[key] = hit
        return hit

    def gamma_vec(self, mu: Mapping[int, Fraction], nus: Sequence[Tuple[int, Mapping[int, Fraction]]]) -> SparseVec:
        out: SparseVec = {}
        arities = [j for j, _ in nus]
        for (m, *idx), c in multilinear([mu] + [v for _, v in nus]):
            vec_iadd(out, self.gamma(m, tuple(zip(arities, idx))), c)
        return out

    def act(self, n: int, perm: Sequence[int], v: Mapping[int, Fraction]) -> SparseVec:
        return apply_permutation(self.seq[n], perm).apply(v)

    def gamma_table(self, k: int, js: Sequence[int]) -> Dict[Tuple[int, ...], SparseVec]:
        """All values of γ at signature (k; j_1, …, j_k), keyed by basis index tuples."""
        ranges = [range(self.dim(k))] + [range(self.dim(j)) for j in js]
        out = {}
        for idx in itertools.product(*ranges):
            v = self.gamma(idx[0], tuple(zip(js, idx[1:])))
            if v:
                out[idx] = v
        return out

    def signatures(self, N: Optional[int] = None) -> List[Tuple[int, Tuple[int, ...]]]:
        N = self.max_arity if N is None else N
        out = []
        for total in range(1, N + 1):
            for k in range(1, total + 1):
                if not self.dim(k):
                    continue
                for js in compositions(total, k):
                    if all(self.dim(j) for j in js):
                        out.append((k, js))
        return out

    def to_table(self, N: Optional[int] = None) -> "TableOperad":
        N = self.max_arity if N is None else N
        seq = self.seq.truncate(N)
        tables = {sig: self.gamma_table(*sig) for sig in self.signatures(N)}
        return TableOperad(seq, self.unit, tables, name=self.name)


class TableOperad(Operad):
    """Operad given by explicit γ tables; missing entries are zero."""

    def __init__(self, seq, unit, tables: Mapping[Tuple[int, Tuple[int, ...]], Mapping[Tuple[int, ...], SparseVec]],
                 name: Optional[str] = None):
        super().__init__(seq, unit, name)
        self.tables = {(k, tuple(js)): {tuple(i): dict(v) for i, v in t.items()} for (k, js), t in tables.items()}

    def _gamma(self, mu, nus):
        js = tuple(j for j, _ in nus)
        t = self.tables.get((len(nus), js), {})
        return dict(t.get((mu,) + tuple(i for _, i in nus), {}))

    def with_entry(self, k: int, js: Sequence[int], idx: Sequence[int], value: SparseVec) -> "TableOperad":
        tables = {key: dict(t) for key, t in self.tables.items()}
        tables.setdefault((k, tuple(js)), {})[tuple(idx)] = dict(value)
        return TableOperad(self.seq, self.unit, tables, self.name)


# --------------------------------------------------------------------------
# law checks


def _vec_degrees(a: Operad, nodes: Sequence[Node]) -> List[int]:
    return [a.degree(j, i) for j, i in nodes]


def _record(failures: Dict, key, diff: SparseVec):
    if diff:
        failures.setdefault(key, []).append(diff)


def check_operad_laws(a: Operad, N: Optional[int] = None) -> List[dict]:
    """Exhaustive check of associativity, unit, and equivariance through arity N.

    Each report entry names the law, the signature ``"k;j_1,…,j_k"`` of the
    first composition involved, extra detail, and the rank of the span of
    all discrepancy vectors found there.
    """
    N = a.max_arity if N is None else min(N, a.max_arity)
    koszul = a.sign_rule == "koszul"
    failures: Dict[Tuple[str, str, str], List[SparseVec]] = {}
    unit = a.unit
    # unit laws
    for n in range(1, N + 1):
        for i in range(a.dim(n)):
            left = a.gamma_vec(unit, [(n, {i: ONE})])
            _record(failures, ("unit-left", signature_str(1, [n]), ""), vec_add(left, {i: ONE}, -ONE))
            right = a.gamma_vec({i: ONE}, [(1, unit)] * n)
            _record(failures, ("unit-right", signature_str(n, [1] * n), ""), vec_add(right, {i: ONE}, -ONE))
    sigs = a.signatures(N)
    for k, js in sigs:
        J = sum(js)
        bases = [range(a.dim(k))] + [range(a.dim(j)) for j in js]
        tuples = list(itertools.product(*bases))
        # equivariance under the outer action
        for t in range(k - 1):
            sigma = transposition(k, t)
            new_js = [js[sigma[s]] for s in range(k)]
            P = block_permutation(sigma, new_js)
            for idx in tuples:
                mu, nus = idx[0], tuple(zip(js, idx[1:]))
                lhs = a.gamma_vec(a.act(k, sigma, {mu: ONE}), [(j, {i: ONE}) for j, i in nus])
                swapped = tuple(nus[sigma[s]] for s in range(k))
                rhs = a.act(J, P, a.gamma(mu, swapped))
                if koszul:
                    degs = _vec_degrees(a, nus)
                    if permutation_sign(sigma, degs) < 0:
                        rhs = {x: -y for x, y in rhs.items()}
                _record(failures, ("equivariance", signature_str(k, js), f"s{t + 1}"), vec_add(lhs, rhs, -ONE))
        # equivariance under block actions
        offs = [sum(js[:s]) for s in range(k)]
        for s, j in enumerate(js):
            for t in range(j - 1):
                tau = transposition(j, t)
                parts = [identity_perm(x) for x in js]
                parts[s] = tau
                big = block_sum(parts)
                for idx in tuples:
                    mu, nus = idx[0], list(zip(js, idx[1:]))
                    vecs = [(jj, {ii: ONE}) for jj, ii in nus]
                    vecs[s] = (j, a.act(j, tau, {nus[s][1]: ONE}))
                    lhs = a.gamma_vec({mu: ONE}, vecs)
                    rhs = a.act(J, big, a.gamma(mu, tuple(nus)))
                    _record(failures, ("block-equivariance", signature_str(k, js), f"block{s + 1}:s{t + 1}"),
                            vec_add(lhs, rhs, -ONE))
        # associativity
        for ls in _inner_compositions(a, J, N):
            blocks = []
            pos = 0
            for j in js:
                blocks.append(ls[pos:pos + j])
                pos += j
            inner_bases = [range(a.dim(l)) for l in ls]
            for idx in tuples:
                mu, nus = idx[0], tuple(zip(js, idx[1:]))
                mid = a.gamma(mu, nus)
                for lam in itertools.product(*inner_bases):
                    lams = tuple(zip(ls, lam))
                    lhs = a.gamma_vec(mid, [(l, {i: ONE}) for l, i in lams])
                    pieces = []
                    pos = 0
                    for s, (j, i) in enumerate(nus):
                        pieces.append((sum(ls[pos:pos + j]), a.gamma(i, lams[pos:pos + j])))
                        pos += j
                    rhs = a.gamma_vec({mu: ONE}, pieces)
                    if koszul:
                        sign = 1
                        pos = 0
                        before = 0
                        for s, (j, i) in enumerate(nus):
                            sign *= koszul_sign(a.degree(j, i), before)
                            before += sum(a.degree(l, x) for l, x in lams[pos:pos + j])
                            pos += j
                        if sign < 0:
                            rhs = {x: -y for x, y in rhs.items()}
                    _record(failures, ("associativity", signature_str(k, js), signature_str(J, ls)),
                            vec_add(lhs, rhs, -ONE))
    report = []
    for (law, sig, detail), diffs in failures.items():
        report.append({"law": law, "signature": sig, "detail": detail, "rank": len(Echelon(diffs))})
    report.sort(key=lambda r: (r["law"], r["signature"], r["detail"]))
    return report


def _inner_compositions(a: Operad, J: int, N: int):
    for total in range(J, N + 1):
        for ls in compositions(total, J):
            if all(a.dim(l) for l in ls):
                yield ls


# --------------------------------------------------------------------------
# morphisms


class OperadMorphism:
    """Per-arity equivariant maps a(n) → b(n) commuting with γ and units."""

    def __init__(self, source: Operad, target: Operad, components: Mapping[int, GradedLinearMap]):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __call__(self, n: int, v: Mapping[int, Fraction]) -> SparseVec:
        f = self.components.get(n)
        return f.apply(v) if f is not None else {}

    def arities(self) -> List[int]:
        return sorted(self.components)

    def check(self, N: Optional[int] = None) -> List[dict]:
        a, b = self.source, self.target
        N = min(a.max_arity, b.max_arity) if N is None else N
        report = []
        diff = vec_add(self(1, a.unit), b.unit, -ONE)
        if diff:
            report.append({"law": "unit", "signature": "1", "detail": "", "rank": 1})
        for n in range(2, N + 1):
            M, T = a.seq[n], b.seq[n]
            f = self.components.get(n)
            if f is None:
                continue
            for t in range(n - 1):
                if f @ M.gens[t] != T.gens[t] @ f:
                    report.append({"law": "equivariance", "signature": str(n), "detail": f"s{t + 1}",
                                   "rank": (f @ M.gens[t] - T.gens[t] @ f).rank()})
        for k, js in a.signatures(N):
            diffs = []
            for idx in itertools.product(range(a.dim(k)), *[range(a.dim(j)) for j in js]):
                nus = tuple(zip(js, idx[1:]))
                lhs = self(sum(js), a.gamma(idx[0], nus))
                rhs = b.gamma_vec(self(k, {idx[0]: ONE}), [(j, self(j, {i: ONE})) for j, i in nus])
                d = vec_add(lhs, rhs, -ONE)
                if d:
                    diffs.append(d)
            if diffs:
                report.append({"law": "gamma", "signature": signature_str(k, js), "detail": "",
                               "rank": len(Echelon(diffs))})
        return report

    def is_isomorphism(self, N: Optional[int] = None) -> bool:
        N = min(self.source.max_arity, self.target.max_arity) if N is None else N
        for n in range(1, N + 1):
            f = self.components.get(n)
            if f is None:
                if self.source.dim(n) or self.target.dim(n):
                    return False
                continue
            if not f.is_isomorphism():
                return False
        return True

    def compose(self, other: "OperadMorphism") -> "OperadMorphism":
        """``self ∘ other``."""
        comps = {n: self.components[n] @ other.components[n]
                 for n in other.components if n in self.components}
        return OperadMorphism(other.source, self.target, comps)
