"""Symmetric sequences (linear species) and their analytic functors.

A sequence M[0..N] of Σ_n-modules determines the functor
X ↦ ⊕_n M[n] ⊗_{Σ_n} X^{⊗n}.  Basis elements of the value are triples
``(n, w, q)``: ``w`` is a weakly increasing tuple of X-basis indices and ``q``
indexes a basis of M[n] modulo the stabilizer of ``w``.  Composition products
use the set-partition basis ``(blocks, f, gs)`` with blocks ordered by their
minimal element.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exactlin import (
    ONE,
    SIGN_RULES,
    GradedLinearMap,
    GradedVectorSpace,
    SparseVec,
    permutation_sign,
    vec_iadd,
)
from .symrep import (
    RelationQuotient,
    SymGroupModule,
    all_perms,
    apply_permutation,
    check_arity,
    cycle_lengths,
    inverse,
    regular_module,
    relation_quotient,
    sign_module,
    transposition,
    trivial_module,
    verify_action,
    zero_module,
)

Blocks = Tuple[Tuple[int, ...], ...]


class ConvergenceError(ValueError):
    """An evaluation would not be finite under the requested caps."""


class SymmetricSequence:
    """Components M[0..N]; M[n] is a :class:`SymGroupModule` of arity n."""

    def __init__(self, components: Sequence[SymGroupModule], sign_rule: str = "plain",
                 unital: bool = False, name: Optional[str] = None, validate: bool = False):
        if sign_rule not in SIGN_RULES:
            raise ValueError(f"unknown sign rule {sign_rule!r}")
        comps = list(components)
        if not comps:
            comps = [zero_module(0)]
        for n, m in enumerate(comps):
            if m.arity != n:
                raise ValueError(f"component {n} has arity {m.arity}")
            if validate and verify_action(m):
                raise ValueError(f"component {n} violates the Coxeter relations")
        if comps[0].dim and not unital:
            raise ValueError("M[0] must vanish unless the sequence is flagged unital")
        self.components: Tuple[SymGroupModule, ...] = tuple(comps)
        self.sign_rule = sign_rule
        self.unital = unital
        self.name = name

    @property
    def max_arity(self) -> int:
        return len(self.components) - 1

    def __getitem__(self, n: int) -> SymGroupModule:
        if 0 <= n < len(self.components):
            return self.components[n]
        return zero_module(n)

    def dims(self) -> List[int]:
        return [m.dim for m in self.components]

    def degrees(self, n: int) -> List[int]:
        return self[n].space.basis_degrees()

    def truncate(self, n: int) -> "SymmetricSequence":
        comps = [self[k] for k in range(min(n, self.max_arity) + 1)]
        return SymmetricSequence(comps, self.sign_rule, self.unital, self.name)

    def only(self, n: int) -> "SymmetricSequence":
        comps = [self[k] if k == n else zero_module(k) for k in range(self.max_arity + 1)]
        return SymmetricSequence(comps, self.sign_rule, False, self.name)

    def __repr__(self):
        return f"SymmetricSequence({self.name or ''} dims={self.dims()})"


def zero_sequence(N: int, sign_rule: str = "plain") -> SymmetricSequence:
    return SymmetricSequence([zero_module(n) for n in range(N + 1)], sign_rule, name="zero")


def unit_sequence(N: int, sign_rule: str = "plain") -> SymmetricSequence:
    comps = [trivial_module(1) if n == 1 else zero_module(n) for n in range(N + 1)]
    return SymmetricSequence(comps, sign_rule, name="unit")


def trivial_sequence(N: int, sign_rule: str = "plain") -> SymmetricSequence:
    comps = [zero_module(0)] + [trivial_module(n) for n in range(1, N + 1)]
    return SymmetricSequence(comps, sign_rule, name="com")


def regular_sequence(N: int, sign_rule: str = "plain") -> SymmetricSequence:
    comps = [zero_module(0)] + [regular_module(n) for n in range(1, N + 1)]
    return SymmetricSequence(comps, sign_rule, name="assoc")


def sign_sequence(N: int, sign_rule: str = "plain") -> SymmetricSequence:
    comps = [zero_module(0)] + [sign_module(n) for n in range(1, N + 1)]
    return SymmetricSequence(comps, sign_rule, name="sign")


# --------------------------------------------------------------------------
# evaluation


def _stable_argsort(v: Sequence[int]) -> List[int]:
    return sorted(range(len(v)), key=lambda i: (v[i], i))


def _multisets(degs: Sequence[int], n: int, budget: int, start: int = 0):
    """Weakly increasing index tuples of length n with total degree ≤ budget.

    ``degs`` must be ascending (flat basis order).
    """
    if n == 0:
        yield ()
        return
    for i in range(start, len(degs)):
        if degs[i] * n > budget:
            break
        for rest in _multisets(degs, n - 1, budget - degs[i], i):
            yield (i,) + rest


class EvaluatedSpace:
    """The value F(X) truncated to internal degree ≤ D, with basis bookkeeping."""

    def __init__(self, F: SymmetricSequence, X: GradedVectorSpace, D: int,
                 sign_rule: Optional[str] = None, arities: Optional[Iterable[int]] = None):
        self.F = F
        self.X = X
        self.D = D
        self.sign_rule = sign_rule or F.sign_rule
        self.xdeg = X.basis_degrees()
        if self.xdeg and min(self.xdeg) <= 0 and F.unital:
            raise ConvergenceError("unital sequence evaluated on a space with nonpositive degrees")
        self._quot: Dict[Tuple, RelationQuotient] = {}
        self.arities = sorted(arities) if arities is not None else list(range(F.max_arity + 1))
        entries = []
        for n in self.arities:
            M = F[n]
            if not M.dim:
                continue
            mdeg = M.space.basis_degrees()
            budget = D - min(mdeg)
            if n == 0:
                types = [()]
            elif self.xdeg and min(self.xdeg) <= 0:
                types = [t for t in itertools.combinations_with_replacement(range(len(self.xdeg)), n)
                         if sum(self.xdeg[i] for i in t) <= budget]
            else:
                types = list(_multisets(self.xdeg, n, budget))
            for w in types:
                wdeg = sum(self.xdeg[i] for i in w)
                Q = self.quotient(n, w)
                for q, free in enumerate(Q.free):
                    d = mdeg[free] + wdeg
                    if d <= D:
                        entries.append((d, n, w, q))
        entries.sort()
        self.basis: List[Tuple[int, Tuple[int, ...], int]] = [(n, w, q) for _, n, w, q in entries]
        self._deg = [d for d, _, _, _ in entries]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.space = GradedVectorSpace.from_degrees(self._deg)

    # structure
    def quotient(self, n: int, w: Tuple[int, ...]) -> RelationQuotient:
        gens, chars = [], []
        for i in range(n - 1):
            if w[i] == w[i + 1]:
                gens.append(i)
                odd = self.sign_rule == "koszul" and self.xdeg[w[i]] % 2
                chars.append(-1 if odd else 1)
        key = (n, tuple(gens), tuple(chars))
        Q = self._quot.get(key)
        if Q is None:
            Q = relation_quotient(self.F[n], gens, chars)
            self._quot[key] = Q
        return Q

    @property
    def total_dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self._deg[i]

    def arity(self, i: int) -> int:
        return self.basis[i][0]

    def lift(self, i: int) -> Tuple[int, int, Tuple[int, ...]]:
        """(n, index into M[n], sorted X-index tuple) representing basis element i."""
        n, w, q = self.basis[i]
        return n, self.quotient(n, w).lift(q), w

    def coords(self, n: int, m: SparseVec, v: Sequence[int]) -> SparseVec:
        """Coordinates of the class of m ⊗ x_{v_1} ⊗ … ⊗ x_{v_n} (v in any order)."""
        if not m:
            return {}
        v = tuple(v)
        if sum(self.xdeg[i] for i in v) > self.D:
            return {}
        order = _stable_argsort(v)
        w = tuple(v[i] for i in order)
        if list(w) != list(v):
            sigma = inverse(order)
            m = apply_permutation(self.F[n], sigma).apply(m)
            if self.sign_rule == "koszul":
                eps = permutation_sign(order, [self.xdeg[i] for i in v])
                if eps < 0:
                    m = {k: -x for k, x in m.items()}
        Q = self.quotient(n, w)
        out: SparseVec = {}
        for q, x in Q.coordinates(m).items():
            j = self.index.get((n, w, q))
            if j is not None:
                out[j] = x
        return out

    def arity_indices(self, n: int) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b[0] == n]

    def dims(self) -> Dict[int, int]:
        return dict(self.space.dims)

    def __repr__(self):
        return f"EvaluatedSpace({self.F.name}, dims={self.dims()})"


def evaluate(F: SymmetricSequence, X: GradedVectorSpace, D: int,
             sign_rule: Optional[str] = None) -> EvaluatedSpace:
    return EvaluatedSpace(F, X, D, sign_rule)


def evaluate_map(FX: EvaluatedSpace, FY: EvaluatedSpace, f: GradedLinearMap) -> GradedLinearMap:
    """F(f): F(X) → F(Y) for a degree-preserving linear map f: X → Y."""
    cols = []
    for i in range(FX.total_dim):
        n, m, w = FX.lift(i)
        terms: Dict[Tuple[int, ...], Fraction] = {(): ONE}
        for x in w:
            new: Dict[Tuple[int, ...], Fraction] = {}
            for key, c in terms.items():
                for y, a in f.columns[x].items():
                    k2 = key + (y,)
                    new[k2] = new.get(k2, 0) + c * a
            terms = new
        out: SparseVec = {}
        for v, c in terms.items():
            if c:
                vec_iadd(out, FY.coords(n, {m: ONE}, v), c)
        cols.append(out)
    return GradedLinearMap(FX.space, FY.space, cols)


# --------------------------------------------------------------------------
# composition product


def set_partitions(labels: Sequence[int]) -> List[Blocks]:
    """All set partitions, blocks sorted by minimum, in a fixed recursive order."""
    labels = list(labels)
    if not labels:
        return [()]
    first, rest = labels[0], labels[1:]
    out = []
    for k in range(len(rest) + 1):
        for others in itertools.combinations(rest, k):
            remaining = [x for x in rest if x not in others]
            for tail in set_partitions(remaining):
                out.append(((first,) + others,) + tail)
    return out


def relabel_partition(sigma: Sequence[int], blocks: Blocks):
    """Apply σ to a partition; return (new blocks, κ, per-block rank permutations).

    κ[s] is the new position of block s; ρ_s sends position i of block s to
    the position of σ(b_i) in the new block.
    """
    images = [tuple(sigma[b] for b in B) for B in blocks]
    order = sorted(range(len(blocks)), key=lambda s: min(images[s]))
    kappa = inverse(order)
    new_blocks = tuple(tuple(sorted(images[s])) for s in order)
    rhos = []
    for img in images:
        srt = sorted(img)
        rhos.append(tuple(srt.index(x) for x in img))
    return new_blocks, kappa, rhos


class CompositeBasis:
    """Basis of (F∘G)[n]: (blocks, f, gs) ordered by degree then lexicographically."""

    def __init__(self, F: SymmetricSequence, G: SymmetricSequence, n: int, sign_rule: Optional[str] = None):
        self.F, self.G, self.n = F, G, n
        self.sign_rule = sign_rule or F.sign_rule
        entries = []
        for blocks in set_partitions(range(n)):
            k = len(blocks)
            fdeg = F.degrees(k)
            gdeg = [G.degrees(len(B)) for B in blocks]
            if not fdeg or any(not g for g in gdeg):
                continue
            for f in range(len(fdeg)):
                for gs in itertools.product(*[range(len(g)) for g in gdeg]):
                    d = fdeg[f] + sum(gdeg[s][gs[s]] for s in range(k))
                    entries.append((d, blocks, f, gs))
        entries.sort()
        self.elements = [(b, f, g) for _, b, f, g in entries]
        self.degrees = [d for d, _, _, _ in entries]
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.space = GradedVectorSpace.from_degrees(self.degrees)

    def act(self, sigma: Sequence[int], elem) -> SparseVec:
        blocks, f, gs = elem
        new_blocks, kappa, rhos = relabel_partition(sigma, blocks)
        k = len(blocks)
        fvec = apply_permutation(self.F[k], kappa).columns[f]
        gvecs = [apply_permutation(self.G[len(B)], rhos[s]).columns[gs[s]] for s, B in enumerate(blocks)]
        order = inverse(kappa)
        sign = 1
        if self.sign_rule == "koszul":
            gdeg = [self.G.degrees(len(B))[gs[s]] for s, B in enumerate(blocks)]
            sign = permutation_sign(order, gdeg)
        out: SparseVec = {}
        for fi, fc in fvec.items():
            for combo in itertools.product(*[list(gvecs[order[t]].items()) for t in range(k)]):
                c = fc * sign
                idx = []
                for gi, gc in combo:
                    c *= gc
                    idx.append(gi)
                key = self.index[(new_blocks, fi, tuple(idx))]
                out[key] = out.get(key, 0) + c
        return {k2: x for k2, x in out.items() if x}

    def module(self) -> SymGroupModule:
        V = self.space
        gens = []
        for i in range(self.n - 1):
            t = transposition(self.n, i)
            gens.append(GradedLinearMap(V, V, [self.act(t, e) for e in self.elements]))
        return SymGroupModule(self.n, V, gens)


def compose(F: SymmetricSequence, G: SymmetricSequence, N: Optional[int] = None) -> SymmetricSequence:
    """The composition product F∘G on the set-partition basis, through arity N."""
    if G[0].dim:
        raise ConvergenceError("composition requires G[0] = 0")
    if N is None:
        N = min(F.max_arity * max(G.max_arity, 1), max(F.max_arity, G.max_arity))
    comps = [zero_module(0)] + [CompositeBasis(F, G, n).module() for n in range(1, N + 1)]
    return SymmetricSequence(comps, F.sign_rule, name=f"({F.name}∘{G.name})")


# --------------------------------------------------------------------------
# series and oracles


def poincare_series(FX: EvaluatedSpace) -> Dict[int, int]:
    return FX.dims()


def cycle_index_series(F: SymmetricSequence, X: GradedVectorSpace, D: int,
                       sign_rule: Optional[str] = None) -> Dict[int, int]:
    """Independent oracle: (1/n!) Σ_σ χ_M(σ) Π_{cycles} p_X(t^ℓ) with Koszul cycle signs."""
    rule = sign_rule or F.sign_rule
    xdeg = X.basis_degrees()
    out: Dict[int, Fraction] = {}
    for n in range(F.max_arity + 1):
        M = F[n]
        if not M.dim:
            continue
        check_arity(n)
        mdeg = M.space.basis_degrees()
        acc: Dict[int, Fraction] = {}
        for s in all_perms(n):
            rho = apply_permutation(M, s)
            chi: Dict[int, Fraction] = {}
            for j, col in enumerate(rho.columns):
                x = col.get(j)
                if x:
                    chi[mdeg[j]] = chi.get(mdeg[j], 0) + x
            if not chi:
                continue
            poly = {0: Fraction(1)}
            for ell in cycle_lengths(s):
                p: Dict[int, Fraction] = {}
                for d in xdeg:
                    sgn = -1 if (rule == "koszul" and d % 2 and (ell - 1) % 2) else 1
                    p[ell * d] = p.get(ell * d, 0) + sgn
                poly = _poly_mul(poly, p, D)
            for a, x in chi.items():
                for b, y in poly.items():
                    if a + b <= D:
                        acc[a + b] = acc.get(a + b, 0) + x * y
        for d, x in acc.items():
            out[d] = out.get(d, 0) + x / factorial(n)
    res = {}
    for d, x in out.items():
        if x:
            if x.denominator != 1:
                raise ArithmeticError("non-integral orbit count")
            res[d] = int(x)
    return dict(sorted(res.items()))


def _poly_mul(a: Dict[int, Fraction], b: Dict[int, Fraction], D: int) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= D:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def egf(F: SymmetricSequence) -> List[Fraction]:
    """Coefficients dim M[n] / n!."""
    return [Fraction(F[n].dim, factorial(n)) for n in range(F.max_arity + 1)]


def series_compose(f: Sequence[Fraction], g: Sequence[Fraction], N: int) -> List[Fraction]:
    """Coefficients of f(g(t)) through t^N, assuming g(0) = 0."""
    if g and g[0]:
        raise ValueError("inner series must have zero constant term")
    out = [Fraction(0)] * (N + 1)
    power = [Fraction(1)] + [Fraction(0)] * N
    for k in range(len(f)):
        if k:
            power = [sum(power[i] * (g[j - i] if j - i < len(g) else 0) for i in range(j + 1))
                     for j in range(N + 1)]
        for j in range(N + 1):
            out[j] += f[k] * power[j]
    return out


def free_module_series(F: SymmetricSequence, X: GradedVectorSpace, D: int) -> Dict[int, int]:
    """f(p_X(t)) with f(x) = Σ dim M[n] xⁿ/n!; exact only when every M[n] is a free Σ_n-module."""
    p: Dict[int, Fraction] = {}
    for d in X.basis_degrees():
        p[d] = p.get(d, 0) + 1
    out: Dict[int, Fraction] = {}
    power = {0: Fraction(1)}
    for n in range(F.max_arity + 1):
        if n:
            power = _poly_mul(power, p, D)
        for dm, cnt in F[n].space.dims:
            for d, x in power.items():
                if d + dm <= D:
                    out[d + dm] = out.get(d + dm, 0) + Fraction(cnt, factorial(n)) * x
    return {d: int(x) for d, x in sorted(out.items()) if x}
