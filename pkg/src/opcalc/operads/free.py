"""Free operads on rooted trees, quadratic quotients, and operad morphisms.

A tree is either a leaf ``("L", label)`` or a vertex ``("V", k, b, children)``
decorated by basis element ``b`` of gens[k].  Canonical trees order children
by minimal leaf; ``g(c_1, …, c_k)`` with unordered children is rewritten as
``(ρ·g)(c_sorted)`` where ρ(i) is the rank of child i.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exactlin import ONE, Echelon, GradedLinearMap, GradedVectorSpace, SparseVec, vec_iadd
from ..symrep import SymGroupModule, apply_permutation, inverse, transposition, zero_module
from ..symseq import SymmetricSequence, set_partitions
from .base import Operad, OperadMorphism, compositions

Tree = tuple


def leaf(i: int) -> Tree:
    return ("L", i)


def vertex(k: int, b: int, children: Sequence[Tree]) -> Tree:
    return ("V", k, b, tuple(children))


def min_leaf(t: Tree) -> int:
    if t[0] == "L":
        return t[1]
    return min(min_leaf(c) for c in t[3])


def leaves(t: Tree) -> List[int]:
    if t[0] == "L":
        return [t[1]]
    out: List[int] = []
    for c in t[3]:
        out.extend(leaves(c))
    return out


def vertex_count(t: Tree) -> int:
    if t[0] == "L":
        return 0
    return 1 + sum(vertex_count(c) for c in t[3])


def relabel(t: Tree, sigma: Sequence[int]) -> Tree:
    if t[0] == "L":
        return ("L", sigma[t[1]])
    return ("V", t[1], t[2], tuple(relabel(c, sigma) for c in t[3]))


def graft(t: Tree, subs: Sequence[Tree]) -> Tree:
    """Replace leaf i by subs[i]."""
    if t[0] == "L":
        return subs[t[1]]
    return ("V", t[1], t[2], tuple(graft(c, subs) for c in t[3]))


def tree_str(t: Tree) -> str:
    if t[0] == "L":
        return str(t[1] + 1)
    return f"g{t[1]}.{t[2]}(" + ",".join(tree_str(c) for c in t[3]) + ")"


class FreeOperad(Operad):
    """Free operad on a symmetric sequence of generators, truncated by arity and vertex count."""

    def __init__(self, gens: SymmetricSequence, N: int, max_vertices: Optional[int] = None):
        self.gens = gens
        self.max_vertices = max_vertices if max_vertices is not None else N
        self._canon_cache: Dict[Tree, Dict[Tree, Fraction]] = {}
        self.basis: List[List[Tree]] = []
        self.index: List[Dict[Tree, int]] = []
        comps = []
        for n in range(N + 1):
            trees = [] if n == 0 else self._enumerate(tuple(range(n)), self.max_vertices)
            trees = sorted(set(t for t, _ in trees), key=lambda t: (self.tree_degree(t), tree_str(t)))
            self.basis.append(trees)
            self.index.append({t: i for i, t in enumerate(trees)})
            V = GradedVectorSpace.from_degrees(self.tree_degree(t) for t in trees)
            gmaps = []
            for i in range(n - 1):
                s = transposition(n, i)
                gmaps.append(GradedLinearMap(V, V, [self.tree_vector(n, relabel(t, s)) for t in trees]))
            comps.append(SymGroupModule(n, V, gmaps) if trees else zero_module(n))
        seq = SymmetricSequence(comps, "plain", name=f"free({gens.name or 'gens'})")
        super().__init__(seq, {0: ONE} if N >= 1 else {}, seq.name)

    # trees
    def tree_degree(self, t: Tree) -> int:
        if t[0] == "L":
            return 0
        return self.gens.degrees(t[1])[t[2]] + sum(self.tree_degree(c) for c in t[3])

    def _enumerate(self, labels: Tuple[int, ...], budget: int) -> List[Tuple[Tree, int]]:
        out: List[Tuple[Tree, int]] = []
        if len(labels) == 1:
            out.append((leaf(labels[0]), 0))
        if budget <= 0:
            return out
        for k in range(1, len(labels) + 1):
            dk = self.gens[k].dim if k <= self.gens.max_arity else 0
            if not dk:
                continue
            parts = [(labels,)] if k == 1 else [p for p in set_partitions(labels) if len(p) == k]
            for blocks in parts:
                child_opts = [self._enumerate(B, budget - 1) for B in blocks]
                for combo in itertools.product(*child_opts):
                    used = 1 + sum(v for _, v in combo)
                    if used > budget:
                        continue
                    for b in range(dk):
                        out.append((vertex(k, b, [t for t, _ in combo]), used))
        return out

    def canonicalize(self, t: Tree) -> Dict[Tree, Fraction]:
        """Expand a tree with arbitrary child order into canonical trees."""
        hit = self._canon_cache.get(t)
        if hit is not None:
            return hit
        if t[0] == "L":
            res = {t: ONE}
        elif vertex_count(t) > self.max_vertices:
            res = {}
        else:
            _, k, b, children = t
            kids = [self.canonicalize(c) for c in children]
            mins = [min_leaf(c) for c in children]
            order = sorted(range(k), key=lambda i: mins[i])
            rho = inverse(order)
            dec = apply_permutation(self.gens[k], rho).columns[b] if k > 1 else {b: ONE}
            res = {}
            for combo in itertools.product(*[list(kids[i].items()) for i in order]):
                c = ONE
                for _, x in combo:
                    c *= x
                ch = tuple(tr for tr, _ in combo)
                for b2, y in dec.items():
                    key = ("V", k, b2, ch)
                    res[key] = res.get(key, 0) + c * y
            res = {key: x for key, x in res.items() if x}
        self._canon_cache[t] = res
        return res

    def tree_vector(self, n: int, t: Tree) -> SparseVec:
        out: SparseVec = {}
        for tr, x in self.canonicalize(t).items():
            j = self.index[n].get(tr)
            if j is not None:
                out[j] = out.get(j, 0) + x
        return {j: x for j, x in out.items() if x}

    def _gamma(self, mu, nus):
        k = len(nus)
        subs = []
        off = 0
        for j, i in nus:
            subs.append(relabel(self.basis[j][i], [off + x for x in range(j)]))
            off += j
        return self.tree_vector(off, graft(self.basis[k][mu], subs))

    def generator_vector(self, k: int, b: int) -> SparseVec:
        return self.tree_vector(k, vertex(k, b, [leaf(i) for i in range(k)]))

    # universal property
    def extend(self, target: Operad, gen_maps: Mapping[int, GradedLinearMap]) -> OperadMorphism:
        """The unique operad morphism free(gens) → target restricting to ``gen_maps``."""
        N = min(self.max_arity, target.max_arity)
        cache: Dict[Tree, SparseVec] = {}

        def value(t: Tree) -> SparseVec:
            # element of target(#leaves) in the ranks of t's leaves
            if t[0] == "L":
                return dict(target.unit)
            hit = cache.get(t)
            if hit is not None:
                return hit
            _, k, b, children = t
            labels = sorted(leaves(t))
            rank = {x: r for r, x in enumerate(labels)}
            gen_img = gen_maps[k].columns[b] if k in gen_maps else {}
            kid_vals = [(len(leaves(c)), value(c)) for c in children]
            composite = target.gamma_vec(gen_img, kid_vals)
            sigma = []
            for c in children:
                sigma.extend(rank[x] for x in sorted(leaves(c)))
            res = target.act(len(labels), sigma, composite)
            cache[t] = res
            return res

        comps = {}
        for n in range(1, N + 1):
            cols = [value(t) for t in self.basis[n]]
            comps[n] = GradedLinearMap(self.seq[n].space, target.seq[n].space, cols)
        return OperadMorphism(self, target, comps)

    def generated_rank(self, n: int) -> int:
        """Rank of the span of composites of generators with lower-arity elements."""
        ech = Echelon()
        for k in range(1, n + 1):
            for b in range(self.gens[k].dim if k <= self.gens.max_arity else 0):
                g = self.generator_vector(k, b) if k <= self.max_arity else {}
                if not g:
                    continue
                for js in compositions(n, k):
                    if k == 1 and js == (n,):
                        ranges = [range(self.dim(n))]
                    else:
                        ranges = [range(self.dim(j)) for j in js]
                    for idx in itertools.product(*ranges):
                        if k == 1 and js == (n,) and n > 1 and vertex_count(self.basis[n][idx[0]]) == 0:
                            continue
                        ech.add(self.gamma_vec(g, [(j, {i: ONE}) for j, i in zip(js, idx)]))
        if n == 1:
            ech.add(self.unit)
        _saturate(self, n, ech)
        return len(ech)


class QuotientOperad(Operad):
    """Quotient of an operad by an ideal given per arity as an echelon form."""

    def __init__(self, parent: Operad, ideal: Mapping[int, Echelon], name: Optional[str] = None):
        self.parent = parent
        self.ideal = {n: ideal.get(n, Echelon()) for n in range(parent.max_arity + 1)}
        self.free_idx: List[List[int]] = []
        self.pos: List[Dict[int, int]] = []
        comps = []
        for n in range(parent.max_arity + 1):
            ech = self.ideal[n]
            free = [i for i in range(parent.dim(n)) if i not in ech.rows]
            self.free_idx.append(free)
            self.pos.append({i: k for k, i in enumerate(free)})
            pdeg = parent.seq.degrees(n)
            V = GradedVectorSpace.from_degrees(pdeg[i] for i in free)
            if not free:
                comps.append(zero_module(n))
                continue
            M = parent.seq[n]
            gens = [GradedLinearMap(V, V, [self.reduce(n, g.columns[i]) for i in free]) for g in M.gens]
            comps.append(SymGroupModule(n, V, gens))
        seq = SymmetricSequence(comps, parent.sign_rule, name=name or f"{parent.name}/I")
        super().__init__(seq, self.reduce(1, parent.unit), name or seq.name)

    def reduce(self, n: int, v: Mapping[int, Fraction]) -> SparseVec:
        r = self.ideal[n].reduce(v)
        return {self.pos[n][i]: x for i, x in r.items()}

    def lift(self, n: int, v: Mapping[int, Fraction]) -> SparseVec:
        return {self.free_idx[n][i]: x for i, x in v.items()}

    def _gamma(self, mu, nus):
        k = len(nus)
        val = self.parent.gamma_vec(self.lift(k, {mu: ONE}), [(j, self.lift(j, {i: ONE})) for j, i in nus])
        return self.reduce(sum(j for j, _ in nus), val)


class RelationsNotStable(ValueError):
    """Quadratic relations do not span a Σ_3-subrepresentation."""


def quadratic_operad(gens2: SymGroupModule, relations: Sequence[SparseVec], N: int,
                     name: Optional[str] = None) -> QuotientOperad:
    """Quotient of the free operad on an arity-2 module by the ideal generated by relations in arity 3."""
    gseq = SymmetricSequence([zero_module(0), zero_module(1), gens2], "plain", name="gens")
    F = FreeOperad(gseq, N)
    ideal: Dict[int, Echelon] = {}
    if N >= 3:
        ech = Echelon(relations)
        for r in list(ech.rows.values()):
            for i in range(2):
                if not ech.contains(F.act(3, transposition(3, i), r)):
                    raise RelationsNotStable("relations are not closed under the Σ_3 action")
        ideal[3] = ech
    gen_vecs = [F.generator_vector(2, b) for b in range(gens2.dim)]
    for n in range(4, N + 1):
        ech = Echelon()
        prev = list(ideal[n - 1].rows.values())
        unit = F.unit
        for x in prev:
            for g in gen_vecs:
                for i in range(n - 1):
                    args = [(1, unit)] * (n - 1)
                    args[i] = (2, g)
                    ech.add(F.gamma_vec(x, args))
                ech.add(F.gamma_vec(g, [(n - 1, x), (1, unit)]))
                ech.add(F.gamma_vec(g, [(1, unit), (n - 1, x)]))
        _saturate(F, n, ech)
        ideal[n] = ech
    return QuotientOperad(F, ideal, name)


def _saturate(a: Operad, n: int, ech: Echelon) -> None:
    gens = a.seq[n].gens
    todo = list(ech.rows.values())
    while todo:
        v = todo.pop()
        for g in gens:
            w = g.apply(v)
            if ech.add(w):
                todo.append(w)


# --------------------------------------------------------------------------
# presentation fixtures


def _binary_free(gens2: SymGroupModule) -> FreeOperad:
    gseq = SymmetricSequence([zero_module(0), zero_module(1), gens2], "plain", name="gens")
    return FreeOperad(gseq, 3)


def _t(b, l, r):
    return vertex(2, b, [l, r])


def com_relations(gens2: SymGroupModule) -> List[SparseVec]:
    F = _binary_free(gens2)
    x = [leaf(i) for i in range(3)]
    t1 = F.tree_vector(3, _t(0, _t(0, x[0], x[1]), x[2]))
    t2 = F.tree_vector(3, _t(0, _t(0, x[0], x[2]), x[1]))
    t3 = F.tree_vector(3, _t(0, x[0], _t(0, x[1], x[2])))
    from ..exactlin import vec_add
    return [vec_add(t1, t2, -ONE), vec_add(t2, t3, -ONE)]


def jacobi_relation(gens2: SymGroupModule) -> List[SparseVec]:
    F = _binary_free(gens2)
    x = [leaf(i) for i in range(3)]
    out: SparseVec = {}
    for a, b, c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        vec_iadd(out, F.tree_vector(3, _t(0, _t(0, x[a], x[b]), x[c])))
    return [out]


def associativity_relations(gens2: SymGroupModule) -> List[SparseVec]:
    F = _binary_free(gens2)
    x = [leaf(i) for i in range(3)]
    from ..exactlin import vec_add
    out = []
    for a, b, c in itertools.permutations(range(3)):
        lhs = F.tree_vector(3, _t(0, _t(0, x[a], x[b]), x[c]))
        rhs = F.tree_vector(3, _t(0, x[a], _t(0, x[b], x[c])))
        out.append(vec_add(lhs, rhs, -ONE))
    return out


def quadratic_preset(name: str, N: int) -> QuotientOperad:
    from ..symrep import regular_module, sign_module, trivial_module
    if name == "com":
        g = trivial_module(2)
        return quadratic_operad(g, com_relations(g), N, "quadratic(com)")
    if name == "lie":
        g = sign_module(2)
        return quadratic_operad(g, jacobi_relation(g), N, "quadratic(lie)")
    if name == "assoc":
        g = regular_module(2)
        return quadratic_operad(g, associativity_relations(g), N, "quadratic(assoc)")
    raise ValueError(f"unknown quadratic preset {name!r}")


# --------------------------------------------------------------------------
# morphisms between builtins


def expression_morphism(source, target, N: Optional[int] = None) -> OperadMorphism:
    """Morphism between expression operads whose free-algebra models share values.

    Lie → Assoc sends a bracket to its commutator expansion; Com → poisson(n)
    is the inclusion of products.
    """
    N = min(source.max_arity, target.max_arity) if N is None else N
    comps = {}
    for n in range(1, N + 1):
        cols = [target.coordinates(n, source.values[n][i]) for i in range(source.dim(n))]
        comps[n] = GradedLinearMap(source.seq[n].space, target.seq[n].space, cols)
    return OperadMorphism(source, target, comps)


def quotient_comparison(q: QuotientOperad, target: Operad, gen_map: GradedLinearMap) -> OperadMorphism:
    """Morphism quotient → target induced from a map on arity-2 generators.

    Raises ValueError if the extension does not kill the ideal.
    """
    F = q.parent
    ext = F.extend(target, {2: gen_map})
    comps = {}
    for n in range(1, q.max_arity + 1):
        f = ext.components[n]
        for row in q.ideal[n].rows.values():
            if f.apply(row):
                raise ValueError(f"generator map does not kill the ideal in arity {n}")
        cols = [f.columns[i] for i in q.free_idx[n]]
        comps[n] = GradedLinearMap(q.seq[n].space, target.seq[n].space, cols)
    return OperadMorphism(q, target, comps)
