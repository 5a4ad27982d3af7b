"""Builtin operads realized inside free algebras.

Each basis element of a(n) is an expression tree in the inputs x_0..x_{n-1};
its value is a multilinear element of a free algebra.  Composition is
substitution, the Σ_n action is relabeling, and coordinates are recovered by
solving against the basis values.

Trees are nested tuples: ``("x", i)``, ``("mul", t_1, …, t_m)`` and
``("br", t_1, t_2)``.  Products have degree 0 and brackets degree ``s``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ..exactlin import ONE, GradedLinearMap, GradedVectorSpace, SparseVec, SpanSolver, permutation_sign
from ..symrep import SymGroupModule, all_perms, transposition, zero_module
from ..symseq import SymmetricSequence, set_partitions
from .base import Operad

Value = Dict[Hashable, Fraction]
Tree = tuple


# --------------------------------------------------------------------------
# value helpers


def v_add(a: Value, b: Value, c: Fraction = ONE) -> Value:
    out = dict(a)
    for k, x in b.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def v_scale(a: Value, c) -> Value:
    if not c:
        return {}
    return {k: c * x for k, x in a.items()}


# --------------------------------------------------------------------------
# trees


def leaf_order(tree: Tree) -> List[int]:
    if tree[0] == "x":
        return [tree[1]]
    out: List[int] = []
    for child in tree[1:]:
        out.extend(leaf_order(child))
    return out


def relabel_tree(tree: Tree, sigma: Sequence[int]) -> Tree:
    if tree[0] == "x":
        return ("x", sigma[tree[1]])
    return (tree[0],) + tuple(relabel_tree(c, sigma) for c in tree[1:])


def bracket_count(tree: Tree) -> int:
    if tree[0] == "x":
        return 0
    return (1 if tree[0] == "br" else 0) + sum(bracket_count(c) for c in tree[1:])


class TreeOps:
    """Operations used to evaluate trees: ``mul(a, b, da, db)`` and ``br(a, b, da, db)``."""

    def __init__(self, mul: Callable, br: Optional[Callable] = None, s: int = 0, koszul: bool = False):
        self.mul = mul
        self.br = br
        self.s = s
        self.koszul = koszul


def evaluate_tree(tree: Tree, args: Sequence[Value], degrees: Sequence[int], ops: TreeOps) -> Value:
    """The operation named by ``tree`` applied to ``args`` (in input order).

    Inputs are first brought into leaf order (Koszul sign), then every
    operation passing earlier arguments contributes its own Koszul sign.
    """
    sign = 1
    if ops.koszul:
        sign = permutation_sign(leaf_order(tree), list(degrees))
    val, _, _ = _eval(tree, args, degrees, ops)
    return v_scale(val, sign)


def _eval(tree, args, degrees, ops):
    """Return (value, argument degree consumed, operation degree)."""
    if tree[0] == "x":
        i = tree[1]
        return args[i], degrees[i], 0
    sign = 1
    consumed = 0
    parts = []
    opdeg = 0
    for child in tree[1:]:
        v, ad, od = _eval(child, args, degrees, ops)
        if ops.koszul and od % 2 and consumed % 2:
            sign = -sign
        consumed += ad
        opdeg += od
        parts.append((v, ad + od))
    if tree[0] == "mul":
        val, d = parts[0]
        for v, e in parts[1:]:
            val = ops.mul(val, v, d, e)
            d += e
    elif tree[0] == "br":
        (a, da), (b, db) = parts
        val = ops.br(a, b, da, db)
        opdeg += ops.s
    else:
        raise ValueError(f"unknown tree node {tree[0]!r}")
    return v_scale(val, sign), consumed, opdeg


# --------------------------------------------------------------------------
# free algebra models


class TensorModel:
    """Multilinear tensor algebra on degree-0 letters; keys are words."""

    s = 0
    koszul = False

    @staticmethod
    def gen(i: int) -> Value:
        return {(i,): ONE}

    @staticmethod
    def mul(a: Value, b: Value, da=0, db=0) -> Value:
        out: Value = {}
        for u, x in a.items():
            for v, y in b.items():
                k = u + v
                out[k] = out.get(k, 0) + x * y
        return {k: x for k, x in out.items() if x}

    def br(self, a: Value, b: Value, da=0, db=0) -> Value:
        return v_add(self.mul(a, b), self.mul(b, a), -ONE)

    @staticmethod
    def relabel(a: Value, sigma: Sequence[int]) -> Value:
        return {tuple(sigma[i] for i in w): x for w, x in a.items()}

    @staticmethod
    def shift(a: Value, offset: int) -> Value:
        return {tuple(i + offset for i in w): x for w, x in a.items()}

    def ops(self) -> TreeOps:
        return TreeOps(self.mul, self.br, 0, False)


class PoissonModel:
    """Free graded-commutative algebra on desuspended Lie words.

    Keys are tuples of words sorted by minimal letter; a word of length m is
    a block of degree s(m-1).  Letters sit in degree s inside words.
    """

    def __init__(self, s: int, koszul: bool = True):
        self.s = s
        self.koszul = koszul and s % 2 == 1

    def gen(self, i: int) -> Value:
        return {((i,),): ONE}

    def block_degree(self, w) -> int:
        return self.s * (len(w) - 1)

    def term_degree(self, t) -> int:
        return sum(self.block_degree(w) for w in t)

    def _sort(self, words) -> Tuple[int, tuple]:
        order = sorted(range(len(words)), key=lambda i: min(words[i]))
        sign = 1
        if self.koszul:
            sign = permutation_sign(order, [self.block_degree(w) for w in words])
        return sign, tuple(words[i] for i in order)

    def mul(self, a: Value, b: Value, da=0, db=0) -> Value:
        out: Value = {}
        for t, x in a.items():
            for u, y in b.items():
                sign, key = self._sort(t + u)
                out[key] = out.get(key, 0) + sign * x * y
        return {k: x for k, x in out.items() if x}

    def _word_bracket(self, u, v) -> Value:
        s = self.s
        sign = -1 if (s * len(u) * len(v)) % 2 else 1
        out: Value = {((u + v),): ONE}
        k = (v + u,)
        out[k] = out.get(k, 0) - sign
        return {k2: x for k2, x in out.items() if x}

    def _term_bracket(self, t1, t2) -> Value:
        s = self.s
        if len(t2) > 1:
            b, c = t2[:1], t2[1:]
            d1, db = self.term_degree(t1), self.term_degree(b)
            first = self.mul(self._term_bracket(t1, b), {c: ONE})
            second = self.mul({b: ONE}, self._term_bracket(t1, c))
            sign = -1 if ((d1 + s) * db) % 2 and self.koszul else 1
            return v_add(first, second, sign)
        if len(t1) > 1:
            a, b = t1[:1], t1[1:]
            dbb, dc = self.term_degree(b), self.term_degree(t2)
            first = self.mul({a: ONE}, self._term_bracket(b, t2))
            second = self.mul(self._term_bracket(a, t2), {b: ONE})
            sign = -1 if (dbb * (dc + s)) % 2 and self.koszul else 1
            return v_add(first, second, sign)
        return self._word_bracket(t1[0], t2[0])

    def raw_bracket(self, a: Value, b: Value) -> Value:
        out: Value = {}
        for t, x in a.items():
            for u, y in b.items():
                out = v_add(out, self._term_bracket(t, u), x * y)
        return out

    def br(self, a: Value, b: Value, da=0, db=0) -> Value:
        """The operadic bracket ⟨a, b⟩ = (−1)^{s|a|} {a, b}."""
        sign = -1 if self.koszul and (self.s * da) % 2 else 1
        return v_scale(self.raw_bracket(a, b), sign)

    @staticmethod
    def relabel(a: Value, sigma: Sequence[int]) -> Value:
        return {tuple(tuple(sigma[i] for i in w) for w in t): x for t, x in a.items()}

    def relabel_sorted(self, a: Value, sigma: Sequence[int]) -> Value:
        out: Value = {}
        for t, x in a.items():
            sign, key = self._sort(tuple(tuple(sigma[i] for i in w) for w in t))
            out[key] = out.get(key, 0) + sign * x
        return {k: x for k, x in out.items() if x}

    def shift(self, a: Value, offset: int) -> Value:
        return {tuple(tuple(i + offset for i in w) for w in t): x for t, x in a.items()}

    def ops(self) -> TreeOps:
        return TreeOps(self.mul, self.br, self.s, self.koszul)


# --------------------------------------------------------------------------
# Lyndon bases


def standard_bracketing(word: Sequence[int]) -> Tree:
    """Standard bracketing of a Lyndon word with distinct letters."""
    if len(word) == 1:
        return ("x", word[0])
    for cut in range(1, len(word)):
        v = word[cut:]
        if v[0] == min(v):
            return ("br", standard_bracketing(word[:cut]), standard_bracketing(v))
    raise ValueError("not a Lyndon word")


def multilinear_lyndon_words(labels: Sequence[int]) -> List[Tuple[int, ...]]:
    labels = sorted(labels)
    first, rest = labels[0], labels[1:]
    return [(first,) + p for p in itertools.permutations(rest)]


def lie_trees(labels: Sequence[int]) -> List[Tree]:
    return [standard_bracketing(w) for w in multilinear_lyndon_words(labels)]


# --------------------------------------------------------------------------
# expression operads


class ExpressionOperad(Operad):
    """Operad whose basis elements are trees evaluated in a free-algebra model."""

    def __init__(self, name: str, model, trees: Sequence[Sequence[Tree]], degrees: Sequence[Sequence[int]],
                 sign_rule: str):
        self.model = model
        self.trees = [list(t) for t in trees]
        self._ops = model.ops()
        self._keys: List[Dict[Hashable, int]] = []
        self._solvers: List[Optional[SpanSolver]] = []
        self.values: List[List[Value]] = []
        comps = []
        for n, ts in enumerate(self.trees):
            gens_vals = [model.gen(i) for i in range(n)]
            vals = [evaluate_tree(t, gens_vals, [0] * n, self._ops) for t in ts]
            self.values.append(vals)
            keys: Dict[Hashable, int] = {}
            self._keys.append(keys)
            if not ts:
                self._solvers.append(None)
                comps.append(zero_module(n))
                continue
            self._solvers.append(SpanSolver([self._index(n, v) for v in vals]))
            degs = list(degrees[n])
            if degs != sorted(degs):
                raise ValueError("basis must be listed by ascending degree")
            V = GradedVectorSpace.from_degrees(degs)
            gens = []
            for i in range(n - 1):
                t = transposition(n, i)
                gens.append(GradedLinearMap(V, V, [self.coordinates(n, self._relabel(v, t)) for v in vals]))
            comps.append(SymGroupModule(n, V, gens))
        seq = SymmetricSequence(comps, sign_rule, name=name)
        super().__init__(seq, {0: ONE}, name)

    def _relabel(self, v: Value, sigma) -> Value:
        if isinstance(self.model, PoissonModel):
            return self.model.relabel_sorted(v, sigma)
        return self.model.relabel(v, sigma)

    def _index(self, n: int, v: Value) -> SparseVec:
        keys = self._keys[n]
        out = {}
        for k, x in v.items():
            if k not in keys:
                keys[k] = len(keys)
            out[keys[k]] = x
        return out

    def coordinates(self, n: int, v: Value) -> SparseVec:
        """Coordinates of a multilinear free-algebra element of arity n."""
        if not v:
            return {}
        keys = self._keys[n]
        if any(k not in keys for k in v):
            raise ValueError("element lies outside the span of the basis")
        c = self._solvers[n].coordinates({keys[k]: x for k, x in v.items()})
        if c is None:
            raise ValueError("element lies outside the span of the basis")
        return c

    def value(self, n: int, v: Mapping[int, Fraction]) -> Value:
        out: Value = {}
        for i, x in v.items():
            out = v_add(out, self.values[n][i], x)
        return out

    def tree(self, n: int, i: int) -> Tree:
        return self.trees[n][i]

    def _gamma(self, mu, nus):
        k = len(nus)
        args, degs = [], []
        off = 0
        for j, i in nus:
            args.append(self.model.shift(self.values[j][i], off))
            degs.append(self.degree(j, i))
            off += j
        val = evaluate_tree(self.trees[k][mu], args, degs, self._ops)
        return self.coordinates(off, val)


def _com_trees(N):
    trees = [[]]
    for n in range(1, N + 1):
        trees.append([("x", 0)] if n == 1 else [("mul",) + tuple(("x", i) for i in range(n))])
    return trees, [[0] * len(t) for t in trees]


def _assoc_trees(N):
    trees = [[]]
    for n in range(1, N + 1):
        if n == 1:
            trees.append([("x", 0)])
        else:
            trees.append([("mul",) + tuple(("x", i) for i in p) for p in all_perms(n)])
    return trees, [[0] * len(t) for t in trees]


def _lie_trees(N):
    trees = [[]] + [lie_trees(range(n)) for n in range(1, N + 1)]
    return trees, [[0] * len(t) for t in trees]


def _poisson_trees(N, s):
    trees: List[List[Tree]] = [[]]
    degrees: List[List[int]] = [[]]
    for n in range(1, N + 1):
        entries = []
        for blocks in set_partitions(range(n)):
            per_block = [lie_trees(B) for B in blocks]
            for combo in itertools.product(*per_block):
                t = combo[0] if len(combo) == 1 else ("mul",) + tuple(combo)
                entries.append((s * (n - len(blocks)), t))
        entries.sort(key=lambda e: e[0])
        trees.append([t for _, t in entries])
        degrees.append([d for d, _ in entries])
    return trees, degrees


def parse_builtin_name(name: str) -> Tuple[str, Optional[int]]:
    name = name.strip().lower()
    m = re.fullmatch(r"poisson\s*[\(:]?\s*(\d+)\s*\)?", name)
    if m:
        return "poisson", int(m.group(1))
    if name in ("com", "assoc", "lie"):
        return name, None
    raise ValueError(f"unknown builtin operad {name!r}")


def default_sign_rule(name: str) -> str:
    kind, n = parse_builtin_name(name)
    if kind == "poisson" and (n - 1) % 2:
        return "koszul"
    return "plain"


def builtin_operad(name: str, N: int, sign_rule: Optional[str] = None) -> ExpressionOperad:
    """com, assoc, lie, or poisson(n) (bracket of degree n−1) through arity N."""
    kind, pn = parse_builtin_name(name)
    rule = sign_rule or default_sign_rule(name)
    if kind == "com":
        trees, degs = _com_trees(N)
        return ExpressionOperad("com", PoissonModel(0, False), trees, degs, rule)
    if kind == "assoc":
        trees, degs = _assoc_trees(N)
        return ExpressionOperad("assoc", TensorModel(), trees, degs, rule)
    if kind == "lie":
        trees, degs = _lie_trees(N)
        return ExpressionOperad("lie", TensorModel(), trees, degs, rule)
    if pn < 1:
        raise ValueError("poisson(n) needs n ≥ 1")
    s = pn - 1
    if s % 2 and rule != "koszul":
        raise ValueError(f"poisson({pn}) has odd-degree brackets and requires the koszul sign rule")
    trees, degs = _poisson_trees(N, s)
    return ExpressionOperad(f"poisson({pn})", PoissonModel(s, rule == "koszul"), trees, degs, rule)
