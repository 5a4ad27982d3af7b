"""Exact rational linear algebra over integer-graded vector spaces.

Scalars are :class:`fractions.Fraction`.  Linear maps are stored column-sparse
over a flat basis that lists degrees in ascending order; the dense per-degree
blocks are available through :attr:`GradedLinearMap.blocks`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

Scalar = Fraction
SparseVec = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

SIGN_RULES = ("koszul", "plain")


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def koszul_sign(a: int, b: int, sign_rule: str = "koszul") -> int:
    if sign_rule == "plain":
        return 1
    return -1 if (a % 2 and b % 2) else 1


def permutation_sign(order: Sequence[int], degrees: Sequence[int], sign_rule: str = "koszul") -> int:
    """Koszul sign of rearranging items of the given degrees into ``order``.

    ``order[i]`` is the original position of the item that ends up at slot i.
    """
    if sign_rule == "plain":
        return 1
    odd = [order[i] for i in range(len(order)) if degrees[order[i]] % 2]
    sign = 1
    for i in range(len(odd)):
        for j in range(i + 1, len(odd)):
            if odd[i] > odd[j]:
                sign = -sign
    return sign


# --------------------------------------------------------------------------
# sparse vectors


def vec_add(u: SparseVec, v: SparseVec, c: Fraction = ONE) -> SparseVec:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_iadd(u: SparseVec, v: Mapping[int, Fraction], c: Fraction = ONE) -> None:
    for k, x in v.items():
        y = u.get(k, ZERO) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vec_scale(v: SparseVec, c: Fraction) -> SparseVec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


# --------------------------------------------------------------------------
# echelon machinery


class Echelon:
    """Incrementally maintained reduced row echelon form of sparse vectors.

    Every stored row has coefficient 1 at its pivot and 0 at all other
    pivots, so :meth:`reduce` is a single pass.
    """

    def __init__(self, vectors: Iterable[SparseVec] = ()):
        self.rows: Dict[int, SparseVec] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, v: Mapping[int, Fraction]) -> SparseVec:
        out = {k: x for k, x in v.items() if x}
        for p in [p for p in out if p in self.rows]:
            c = out.get(p)
            if c:
                vec_iadd(out, self.rows[p], -c)
        return out

    def add(self, v: Mapping[int, Fraction]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if c != 1:
            r = {k: x / c for k, x in r.items()}
        for q, row in self.rows.items():
            d = row.get(p)
            if d:
                vec_iadd(row, r, -d)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)


class SpanSolver:
    """Coordinates of vectors with respect to a fixed list of independent vectors."""

    def __init__(self, vectors: Sequence[SparseVec]):
        self.rows: Dict[int, Tuple[SparseVec, SparseVec]] = {}
        self.size = len(vectors)
        for i, v in enumerate(vectors):
            vec, removed = self._reduce(v, {})
            comb = vec_add({i: ONE}, removed, -ONE)
            if not vec:
                raise ValueError("vectors are linearly dependent")
            p = min(vec)
            c = vec[p]
            vec = vec_scale(vec, 1 / c)
            comb = vec_scale(comb, 1 / c)
            for q, (row, rc) in self.rows.items():
                d = row.get(p)
                if d:
                    vec_iadd(row, vec, -d)
                    vec_iadd(rc, comb, -d)
            self.rows[p] = (vec, comb)

    def _reduce(self, v, comb):
        out = {k: x for k, x in v.items() if x}
        comb = dict(comb)
        for p in [p for p in out if p in self.rows]:
            c = out.get(p)
            if c:
                row, rc = self.rows[p]
                vec_iadd(out, row, -c)
                vec_iadd(comb, rc, c)
        return out, comb

    def coordinates(self, v: Mapping[int, Fraction]) -> Optional[SparseVec]:
        """Return ``c`` with ``sum c[i] * vectors[i] == v`` or None if v is outside the span."""
        rest, comb = self._reduce(v, {})
        if rest:
            return None
        return comb


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Dense reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(map(scalar, r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def integer_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank via integer row/column reduction toward Smith form.

    Denominators are cleared row by row; only gcd-based unimodular operations
    are used afterwards, so this is independent of field elimination.
    """
    m: List[List[int]] = []
    for r in rows:
        r = [scalar(x) for x in r]
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        m.append([int(x * den) for x in r])
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if m[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            p = m[t][t]
            done = True
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // p
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        done = False
            if done:
                break
            nz = [(abs(m[i][t]), i, "r") for i in range(t, nrows) if m[i][t]]
            nz += [(abs(m[t][j]), j, "c") for j in range(t, ncols) if m[t][j]]
            _, k, kind = min(nz)
            if kind == "r":
                m[t], m[k] = m[k], m[t]
            else:
                for row in m:
                    row[t], row[k] = row[k], row[t]
        t += 1
    return t


# --------------------------------------------------------------------------
# graded spaces and maps


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite-dimensional integer-graded vector space.

    The flat basis lists degree blocks in ascending degree order.
    """

    dims: Tuple[Tuple[int, int], ...] = ()
    labels: Optional[Tuple[Tuple[int, Tuple[str, ...]], ...]] = field(default=None, compare=False)

    def __init__(self, dims: Mapping[int, int] | Iterable[Tuple[int, int]] = (), labels=None):
        items = dict(dims.items() if isinstance(dims, Mapping) else dims)
        for d, n in items.items():
            if n < 0:
                raise ValueError(f"negative dimension in degree {d}")
        norm = tuple(sorted((int(d), int(n)) for d, n in items.items() if n))
        object.__setattr__(self, "dims", norm)
        if labels is not None:
            lab = {int(d): tuple(ls) for d, ls in dict(labels).items()}
            for d, n in norm:
                if len(lab.get(d, ())) != n:
                    raise ValueError(f"label count mismatch in degree {d}")
            labels = tuple(sorted((d, ls) for d, ls in lab.items() if ls))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "GradedVectorSpace":
        counts: Dict[int, int] = {}
        for d in degrees:
            counts[d] = counts.get(d, 0) + 1
        return cls(counts)

    def dim(self, d: int) -> int:
        return dict(self.dims).get(d, 0)

    @property
    def degrees(self) -> List[int]:
        return [d for d, _ in self.dims]

    @property
    def total_dim(self) -> int:
        return sum(n for _, n in self.dims)

    def basis_degrees(self) -> List[int]:
        out: List[int] = []
        for d, n in self.dims:
            out.extend([d] * n)
        return out

    def offset(self, d: int) -> int:
        off = 0
        for e, n in self.dims:
            if e >= d:
                break
            off += n
        return off

    def flat_range(self, d: int) -> range:
        o = self.offset(d)
        return range(o, o + self.dim(d))

    def truncate(self, max_degree: int) -> "GradedVectorSpace":
        return GradedVectorSpace({d: n for d, n in self.dims if d <= max_degree})

    def __repr__(self) -> str:
        return f"GradedVectorSpace({dict(self.dims)})"


def direct_sum_space(*spaces: GradedVectorSpace) -> GradedVectorSpace:
    out: Dict[int, int] = {}
    for V in spaces:
        for d, n in V.dims:
            out[d] = out.get(d, 0) + n
    return GradedVectorSpace(out)


class GradedLinearMap:
    """Degree-preserving linear map, column-sparse over flat bases."""

    __slots__ = ("source", "target", "columns", "_src_deg", "_tgt_deg")

    def __init__(self, source: GradedVectorSpace, target: GradedVectorSpace,
                 columns: Sequence[Mapping[int, Fraction]], check: bool = True):
        self.source = source
        self.target = target
        if len(columns) != source.total_dim:
            raise ValueError("column count does not match source dimension")
        self.columns: Tuple[SparseVec, ...] = tuple(
            {int(k): scalar(x) for k, x in c.items() if x} for c in columns)
        self._src_deg = source.basis_degrees()
        self._tgt_deg = target.basis_degrees()
        if check:
            n = target.total_dim
            for j, c in enumerate(self.columns):
                for i in c:
                    if not 0 <= i < n:
                        raise ValueError("row index out of range")
                    if self._tgt_deg[i] != self._src_deg[j]:
                        raise ValueError("map does not preserve degree")

    # constructors
    @classmethod
    def from_blocks(cls, source, target, blocks: Mapping[int, Sequence[Sequence]]) -> "GradedLinearMap":
        cols: List[SparseVec] = [dict() for _ in range(source.total_dim)]
        for d, mat in blocks.items():
            rows = list(mat)
            so, to = source.offset(d), target.offset(d)
            if len(rows) != target.dim(d) or any(len(r) != source.dim(d) for r in rows):
                raise ValueError(f"block shape mismatch in degree {d}")
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    x = scalar(x)
                    if x:
                        cols[so + j][to + i] = x
        return cls(source, target, cols)

    @classmethod
    def identity(cls, V: GradedVectorSpace) -> "GradedLinearMap":
        return cls(V, V, [{i: ONE} for i in range(V.total_dim)], check=False)

    @classmethod
    def zero(cls, V: GradedVectorSpace, W: GradedVectorSpace) -> "GradedLinearMap":
        return cls(V, W, [{} for _ in range(V.total_dim)], check=False)

    # views
    @property
    def blocks(self) -> Dict[int, Tuple[Tuple[Fraction, ...], ...]]:
        out = {}
        for d in sorted(set(self.source.degrees) | set(self.target.degrees)):
            so, to = self.source.offset(d), self.target.offset(d)
            m, n = self.target.dim(d), self.source.dim(d)
            rows = [[ZERO] * n for _ in range(m)]
            for j in range(n):
                for i, x in self.columns[so + j].items():
                    rows[i - to][j] = x
            out[d] = tuple(tuple(r) for r in rows)
        return out

    def block(self, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
        return self.blocks.get(d, ())

    def apply(self, v: Mapping[int, Fraction]) -> SparseVec:
        out: SparseVec = {}
        for j, c in v.items():
            if c:
                vec_iadd(out, self.columns[j], c)
        return out

    def compose(self, other: "GradedLinearMap") -> "GradedLinearMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("incompatible composition")
        return GradedLinearMap(other.source, self.target,
                               [self.apply(c) for c in other.columns], check=False)

    __matmul__ = compose

    def __add__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        self._same_shape(other)
        return GradedLinearMap(self.source, self.target,
                               [vec_add(a, b) for a, b in zip(self.columns, other.columns)], check=False)

    def __sub__(self, other):
        self._same_shape(other)
        return GradedLinearMap(self.source, self.target,
                               [vec_add(a, b, -ONE) for a, b in zip(self.columns, other.columns)], check=False)

    def scale(self, c) -> "GradedLinearMap":
        c = scalar(c)
        return GradedLinearMap(self.source, self.target, [vec_scale(a, c) for a in self.columns], check=False)

    def __neg__(self):
        return self.scale(-1)

    def _same_shape(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps have different source/target")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.source, self.target, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def is_identity(self) -> bool:
        return self.source == self.target and all(c == {i: ONE} for i, c in enumerate(self.columns))

    def rank(self, d: Optional[int] = None) -> int:
        if d is None:
            return len(Echelon(self.columns))
        return len(Echelon(self.columns[j] for j in self.source.flat_range(d)))

    def ranks(self) -> Dict[int, int]:
        return {d: self.rank(d) for d in self.source.degrees}

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.rank() == self.source.total_dim

    def discrepancy_rank(self, other: "GradedLinearMap") -> int:
        return (self - other).rank()

    def restrict_columns(self, idx: Sequence[int], source: GradedVectorSpace) -> "GradedLinearMap":
        return GradedLinearMap(source, self.target, [self.columns[j] for j in idx])

    def __repr__(self):
        return f"GradedLinearMap({self.source!r} -> {self.target!r})"


# --------------------------------------------------------------------------
# tensor products


def tensor_pairs(V: GradedVectorSpace, W: GradedVectorSpace) -> List[Tuple[int, int]]:
    """Flat basis of V⊗W as (v, w) index pairs: degree ascending, then V-index major."""
    vd, wd = V.basis_degrees(), W.basis_degrees()
    pairs = [(vd[a] + wd[b], a, b) for a in range(len(vd)) for b in range(len(wd))]
    pairs.sort()
    return [(a, b) for _, a, b in pairs]


def tensor_product(V: GradedVectorSpace, W: GradedVectorSpace, sign_rule: str = "koszul") -> GradedVectorSpace:
    if sign_rule not in SIGN_RULES:
        raise ValueError(f"unknown sign rule {sign_rule!r}")
    out: Dict[int, int] = {}
    for a, m in V.dims:
        for b, n in W.dims:
            out[a + b] = out.get(a + b, 0) + m * n
    labels = None
    if V.labels is not None and W.labels is not None:
        vl = [l for _, ls in V.labels for l in ls]
        wl = [l for _, ls in W.labels for l in ls]
        vd, wd = V.basis_degrees(), W.basis_degrees()
        lab: Dict[int, List[str]] = {}
        for a, b in tensor_pairs(V, W):
            lab.setdefault(vd[a] + wd[b], []).append(f"{vl[a]}*{wl[b]}")
        labels = lab
    return GradedVectorSpace(out, labels=labels)


def symmetry_map(V: GradedVectorSpace, W: GradedVectorSpace, sign_rule: str = "koszul") -> GradedLinearMap:
    """The swap V⊗W → W⊗V with the Koszul sign (−1)^{|v||w|} under the koszul rule."""
    src, tgt = tensor_product(V, W, sign_rule), tensor_product(W, V, sign_rule)
    vd, wd = V.basis_degrees(), W.basis_degrees()
    tindex = {p: i for i, p in enumerate(tensor_pairs(W, V))}
    cols = []
    for a, b in tensor_pairs(V, W):
        cols.append({tindex[(b, a)]: Fraction(koszul_sign(vd[a], wd[b], sign_rule))})
    return GradedLinearMap(src, tgt, cols)


def tensor_maps(f: GradedLinearMap, g: GradedLinearMap, sign_rule: str = "koszul") -> GradedLinearMap:
    """f⊗g for degree-0 maps (no Koszul sign arises)."""
    src = tensor_product(f.source, g.source, sign_rule)
    tgt = tensor_product(f.target, g.target, sign_rule)
    tindex = {p: i for i, p in enumerate(tensor_pairs(f.target, g.target))}
    cols = []
    for a, b in tensor_pairs(f.source, g.source):
        out: SparseVec = {}
        for i, x in f.columns[a].items():
            for j, y in g.columns[b].items():
                out[tindex[(i, j)]] = out.get(tindex[(i, j)], ZERO) + x * y
        cols.append(out)
    return GradedLinearMap(src, tgt, cols)


# --------------------------------------------------------------------------
# kernels, cokernels, sections


class Kernel(NamedTuple):
    space: GradedVectorSpace
    inclusion: GradedLinearMap


class Cokernel(NamedTuple):
    space: GradedVectorSpace
    projection: GradedLinearMap


def _nullspace(columns: Sequence[SparseVec], idx: Sequence[int]) -> List[SparseVec]:
    """Null vectors (indexed by positions in idx) of the columns restricted to idx."""
    rows: Dict[int, Dict[int, Fraction]] = {}
    for pos, j in enumerate(idx):
        for i, x in columns[j].items():
            rows.setdefault(i, {})[pos] = x
    ech = Echelon(rows.values())
    piv = set(ech.rows)
    basis = []
    for free in range(len(idx)):
        if free in piv:
            continue
        v = {free: ONE}
        for p, row in ech.rows.items():
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def kernel_cokernel(f: GradedLinearMap) -> Tuple[Kernel, Cokernel]:
    S, T = f.source, f.target
    kdims: Dict[int, int] = {}
    kcols: List[SparseVec] = []
    for d in S.degrees:
        idx = list(S.flat_range(d))
        ns = _nullspace(f.columns, idx)
        kdims[d] = len(ns)
        for v in ns:
            kcols.append({idx[p]: x for p, x in v.items()})
    K = GradedVectorSpace(kdims)
    inclusion = GradedLinearMap(K, S, kcols)

    cdims: Dict[int, int] = {}
    proj_cols: List[SparseVec] = [dict() for _ in range(T.total_dim)]
    entries = []
    for d in T.degrees:
        ech = Echelon(f.columns[j] for j in S.flat_range(d))
        free = [i for i in T.flat_range(d) if i not in ech.rows]
        cdims[d] = len(free)
        entries.append((d, ech, free))
    Q = GradedVectorSpace(cdims)
    for d, ech, free in entries:
        off = Q.offset(d)
        pos = {i: off + k for k, i in enumerate(free)}
        for i in T.flat_range(d):
            r = ech.reduce({i: ONE})
            proj_cols[i] = {pos[k]: x for k, x in r.items()}
    projection = GradedLinearMap(T, Q, proj_cols)
    return Kernel(K, inclusion), Cokernel(Q, projection)


def solve_section(p: GradedLinearMap) -> Optional[GradedLinearMap]:
    """Right inverse of ``p`` built on its leftmost independent columns, or None."""
    S, T = p.source, p.target
    cols: List[SparseVec] = [dict() for _ in range(T.total_dim)]
    for d in T.degrees:
        pivots: List[int] = []
        ech = Echelon()
        for j in S.flat_range(d):
            if ech.add(p.columns[j]):
                pivots.append(j)
        if len(pivots) != T.dim(d):
            return None
        solver = SpanSolver([p.columns[j] for j in pivots])
        for i in T.flat_range(d):
            c = solver.coordinates({i: ONE})
            cols[i] = {pivots[k]: x for k, x in c.items()}
    return GradedLinearMap(T, S, cols)
