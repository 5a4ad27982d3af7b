"""The versioned, strict JSON Document format."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .exactlin import SIGN_RULES, GradedLinearMap, GradedVectorSpace, SparseVec, format_scalar
from .operads.base import Operad, TableOperad, signature_str
from .symrep import SymGroupModule
from .symseq import SymmetricSequence

FORMAT_VERSION = 1
KINDS = ("operad", "triple", "algebra", "sequence", "report")

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


class DocumentError(ValueError):
    """Malformed document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Document:
    kind: str
    version: int
    payload: Dict[str, Any]

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "version": self.version, "payload": self.payload}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# scalars and vectors


def emit_rational(x: Fraction) -> str:
    return format_scalar(Fraction(x))


def parse_rational(s: Any, path: str) -> Fraction:
    """Strict parse: canonical ``p`` or ``p/q`` with q > 1 and gcd(p, q) = 1."""
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise DocumentError(path, f"not a rational string: {s!r}")
    if s.startswith("-0"):
        raise DocumentError(path, f"non-canonical zero {s!r}")
    if "/" in s:
        p, q = (int(t) for t in s.split("/"))
        if q == 1 or gcd(p, q) != 1:
            raise DocumentError(path, f"rational {s!r} is not in lowest terms")
        return Fraction(p, q)
    return Fraction(int(s))


def _natural(key: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", key)]


def emit_vector(v: Mapping[int, Fraction]) -> Dict[str, str]:
    return {str(i): emit_rational(v[i]) for i in sorted(v) if v[i]}


def parse_vector(obj: Any, path: str, dim: Optional[int] = None) -> SparseVec:
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object of index → rational")
    out: SparseVec = {}
    for k, x in obj.items():
        if not re.fullmatch(r"0|[1-9][0-9]*", k):
            raise DocumentError(f"{path}.{k}", "index keys must be nonnegative integers")
        i = int(k)
        if dim is not None and i >= dim:
            raise DocumentError(f"{path}.{k}", f"index out of range (dimension {dim})")
        c = parse_rational(x, f"{path}.{k}")
        if not c:
            raise DocumentError(f"{path}.{k}", "zero entries must be omitted")
        out[i] = c
    return out


def _sorted_dict(d: Mapping[str, Any]) -> Dict[str, Any]:
    return {k: d[k] for k in sorted(d, key=_natural)}


# --------------------------------------------------------------------------
# strict field access


def _fields(obj: Any, path: str, required: Sequence[str], optional: Sequence[str] = ()) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object")
    for k in obj:
        if k not in required and k not in optional:
            raise DocumentError(f"{path}.{k}", "unknown field")
    for k in required:
        if k not in obj:
            raise DocumentError(f"{path}.{k}", "missing field")
    return obj


def _int(x: Any, path: str, lo: int = 0) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < lo:
        raise DocumentError(path, f"expected an integer ≥ {lo}")
    return x


def _str(x: Any, path: str, choices: Optional[Sequence[str]] = None) -> str:
    if not isinstance(x, str):
        raise DocumentError(path, "expected a string")
    if choices is not None and x not in choices:
        raise DocumentError(path, f"expected one of {', '.join(choices)}")
    return x


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise DocumentError(path, "expected an array")
    return x


# --------------------------------------------------------------------------
# symmetric sequences


def emit_module(M: SymGroupModule) -> Dict[str, Any]:
    n = M.dim
    gens = []
    for g in M.gens:
        gens.append([[emit_rational(g.columns[c].get(r, 0)) for c in range(n)] for r in range(n)])
    return {"arity": M.arity, "degrees": M.space.basis_degrees(), "generators": gens}


def parse_module(obj: Any, path: str, arity: int) -> SymGroupModule:
    _fields(obj, path, ("arity", "degrees", "generators"))
    if _int(obj["arity"], f"{path}.arity") != arity:
        raise DocumentError(f"{path}.arity", f"expected arity {arity}")
    degs = [_int(d, f"{path}.degrees[{i}]", lo=-10**6) for i, d in enumerate(_list(obj["degrees"], f"{path}.degrees"))]
    if degs != sorted(degs):
        raise DocumentError(f"{path}.degrees", "degrees must be ascending")
    V = GradedVectorSpace.from_degrees(degs)
    n = len(degs)
    gl = _list(obj["generators"], f"{path}.generators")
    if len(gl) != max(arity - 1, 0):
        raise DocumentError(f"{path}.generators", f"expected {max(arity - 1, 0)} generator matrices")
    gens = []
    for t, mat in enumerate(gl):
        p = f"{path}.generators[{t}]"
        rows = _list(mat, p)
        if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise DocumentError(p, f"expected a {n}×{n} matrix")
        cols: List[SparseVec] = [{} for _ in range(n)]
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                val = parse_rational(x, f"{p}[{r}][{c}]")
                if val:
                    cols[c][r] = val
        try:
            gens.append(GradedLinearMap(V, V, cols))
        except ValueError as e:
            raise DocumentError(p, str(e)) from None
    return SymGroupModule(arity, V, gens)


def emit_sequence(seq: SymmetricSequence) -> Dict[str, Any]:
    return {"name": seq.name or "", "sign_rule": seq.sign_rule, "max_arity": seq.max_arity,
            "components": [emit_module(seq[n]) for n in range(seq.max_arity + 1)]}


def parse_sequence(obj: Any, path: str) -> SymmetricSequence:
    _fields(obj, path, ("name", "sign_rule", "max_arity", "components"))
    return _parse_seq_fields(obj, path)


def _parse_seq_fields(obj, path) -> SymmetricSequence:
    name = _str(obj["name"], f"{path}.name")
    rule = _str(obj["sign_rule"], f"{path}.sign_rule", SIGN_RULES)
    N = _int(obj["max_arity"], f"{path}.max_arity")
    comps = _list(obj["components"], f"{path}.components")
    if len(comps) != N + 1:
        raise DocumentError(f"{path}.components", f"expected {N + 1} components")
    mods = [parse_module(c, f"{path}.components[{n}]", n) for n, c in enumerate(comps)]
    if mods[0].dim:
        raise DocumentError(f"{path}.components[0]", "arity 0 must vanish")
    return SymmetricSequence(mods, rule, name=name)


# --------------------------------------------------------------------------
# operads


def _index_key(idx: Sequence[int]) -> str:
    return ",".join(str(i) for i in idx)


def _parse_index_key(k: str, path: str, length: int) -> Tuple[int, ...]:
    if not re.fullmatch(r"(0|[1-9][0-9]*)(,(0|[1-9][0-9]*))*", k):
        raise DocumentError(path, f"bad index key {k!r}")
    idx = tuple(int(t) for t in k.split(","))
    if len(idx) != length:
        raise DocumentError(path, f"index key {k!r} needs {length} entries")
    return idx


def _parse_signature(k: str, path: str) -> Tuple[int, Tuple[int, ...]]:
    m = re.fullmatch(r"([1-9][0-9]*);([1-9][0-9]*(?:,[1-9][0-9]*)*)", k)
    if not m:
        raise DocumentError(path, f"bad signature {k!r}")
    kk = int(m.group(1))
    js = tuple(int(t) for t in m.group(2).split(","))
    if len(js) != kk:
        raise DocumentError(path, f"signature {k!r} lists {len(js)} inputs for arity {kk}")
    return kk, js


def emit_operad(a: Operad, N: Optional[int] = None) -> Dict[str, Any]:
    N = a.max_arity if N is None else min(N, a.max_arity)
    payload = emit_sequence(a.seq.truncate(N))
    payload["name"] = a.name or ""
    payload["unit"] = emit_vector(a.unit)
    gamma = {}
    for k, js in a.signatures(N):
        table = a.gamma_table(k, js)
        if table:
            gamma[signature_str(k, js)] = {_index_key(i): emit_vector(v) for i, v in sorted(table.items())}
    payload["gamma"] = _sorted_dict(gamma)
    return payload


def parse_operad(obj: Any, path: str = "payload") -> TableOperad:
    _fields(obj, path, ("name", "sign_rule", "max_arity", "components", "unit", "gamma"))
    seq = _parse_seq_fields(obj, path)
    unit = parse_vector(obj["unit"], f"{path}.unit", seq[1].dim)
    gam = obj["gamma"]
    if not isinstance(gam, dict):
        raise DocumentError(f"{path}.gamma", "expected an object")
    tables = {}
    for sig, table in gam.items():
        p = f"{path}.gamma.{sig}"
        k, js = _parse_signature(sig, p)
        total = sum(js)
        if total > seq.max_arity:
            raise DocumentError(p, "signature exceeds max_arity")
        if not isinstance(table, dict):
            raise DocumentError(p, "expected an object")
        dims = [seq[k].dim] + [seq[j].dim for j in js]
        t = {}
        for key, vec in table.items():
            idx = _parse_index_key(key, f"{p}.{key}", k + 1)
            if any(i >= d for i, d in zip(idx, dims)):
                raise DocumentError(f"{p}.{key}", "basis index out of range")
            t[idx] = parse_vector(vec, f"{p}.{key}", seq[total].dim)
        tables[(k, js)] = t
    return TableOperad(seq, unit, tables, name=obj["name"] or None)


# --------------------------------------------------------------------------
# triples


def emit_triple(T, N: Optional[int] = None) -> Dict[str, Any]:
    from .triples import elem_signature
    N = T.max_arity if N is None else min(N, T.max_arity)
    payload = emit_sequence(T.seq.truncate(N))
    payload["name"] = T.name
    payload["eta"] = emit_vector(T.eta)
    mu: Dict[str, list] = {}
    for n in range(1, N + 1):
        for elem in T.composite_basis(n).elements:
            v = T.mu(n, elem)
            if v:
                blocks, f, gs = elem
                mu.setdefault(elem_signature(elem), []).append(
                    {"blocks": [list(b) for b in blocks], "f": f, "gs": list(gs), "value": emit_vector(v)})
    payload["mu"] = _sorted_dict(mu)
    return payload


def parse_triple(obj: Any, path: str = "payload"):
    from .triples import AnalyticTriple, elem_signature
    _fields(obj, path, ("name", "sign_rule", "max_arity", "components", "eta", "mu"))
    seq = _parse_seq_fields(obj, path)
    eta = parse_vector(obj["eta"], f"{path}.eta", seq[1].dim)
    mus = obj["mu"]
    if not isinstance(mus, dict):
        raise DocumentError(f"{path}.mu", "expected an object")
    table: Dict[Tuple[int, Any], SparseVec] = {}
    for sig, entries in mus.items():
        p = f"{path}.mu.{sig}"
        _parse_signature(sig, p)
        for t, e in enumerate(_list(entries, p)):
            q = f"{p}[{t}]"
            _fields(e, q, ("blocks", "f", "gs", "value"))
            blocks = tuple(tuple(_int(x, f"{q}.blocks") for x in _list(b, f"{q}.blocks"))
                           for b in _list(e["blocks"], f"{q}.blocks"))
            n = sum(len(b) for b in blocks)
            if sorted(x for b in blocks for x in b) != list(range(n)) or n > seq.max_arity:
                raise DocumentError(f"{q}.blocks", "not a set partition of 0..n−1 within max_arity")
            if list(blocks) != sorted(tuple(sorted(b)) for b in blocks):
                raise DocumentError(f"{q}.blocks", "blocks must be sorted and listed by minimum")
            f = _int(e["f"], f"{q}.f")
            gs = tuple(_int(g, f"{q}.gs") for g in _list(e["gs"], f"{q}.gs"))
            elem = (blocks, f, gs)
            if len(gs) != len(blocks) or f >= seq[len(blocks)].dim or any(
                    g >= seq[len(b)].dim for g, b in zip(gs, blocks)):
                raise DocumentError(q, "basis index out of range")
            if elem_signature(elem) != sig:
                raise DocumentError(q, f"entry does not have signature {sig}")
            table[(n, elem)] = parse_vector(e["value"], f"{q}.value", seq[n].dim)

    def mu(n, elem):
        return dict(table.get((n, elem), {}))
    return AnalyticTriple(seq, mu, eta, obj["name"])


# --------------------------------------------------------------------------
# algebras


def emit_algebra(C) -> Dict[str, Any]:
    from .algebras.algebra import degree_tuples
    theta: Dict[str, list] = {}
    for k in range(1, C.max_arity + 1):
        entries = []
        for mu in range(C.operad.dim(k)):
            budget = C.D - C.operad.degree(k, mu)
            for cs in degree_tuples(C.degs, k, budget):
                v = C.theta(k, mu, cs)
                if v:
                    entries.append({"mu": mu, "inputs": list(cs), "value": emit_vector(v)})
        if entries:
            theta[str(k)] = entries
    return {"name": C.name or "", "operad": emit_operad(C.operad, C.max_arity), "sign_rule": C.sign_rule,
            "degree_cap": C.D, "carrier": C.degs, "theta": theta}


def parse_algebra(obj: Any, path: str = "payload"):
    from .algebras.algebra import AlgebraOverOperad
    _fields(obj, path, ("name", "operad", "sign_rule", "degree_cap", "carrier", "theta"))
    a = parse_operad(obj["operad"], f"{path}.operad")
    rule = _str(obj["sign_rule"], f"{path}.sign_rule", SIGN_RULES)
    D = _int(obj["degree_cap"], f"{path}.degree_cap")
    degs = [_int(d, f"{path}.carrier[{i}]", lo=1) for i, d in enumerate(_list(obj["carrier"], f"{path}.carrier"))]
    if degs != sorted(degs):
        raise DocumentError(f"{path}.carrier", "degrees must be ascending")
    th = obj["theta"]
    if not isinstance(th, dict):
        raise DocumentError(f"{path}.theta", "expected an object")
    table: Dict[Tuple[int, int, Tuple[int, ...]], SparseVec] = {}
    for ks, entries in th.items():
        p = f"{path}.theta.{ks}"
        if not re.fullmatch(r"[1-9][0-9]*", ks):
            raise DocumentError(p, "arity keys must be positive integers")
        k = int(ks)
        for t, e in enumerate(_list(entries, p)):
            q = f"{p}[{t}]"
            _fields(e, q, ("mu", "inputs", "value"))
            mu = _int(e["mu"], f"{q}.mu")
            cs = tuple(_int(c, f"{q}.inputs") for c in _list(e["inputs"], f"{q}.inputs"))
            if len(cs) != k or mu >= a.dim(k) or any(c >= len(degs) for c in cs):
                raise DocumentError(q, "index out of range")
            table[(k, mu, cs)] = parse_vector(e["value"], f"{q}.value", len(degs))

    def theta(k, mu, cs):
        return dict(table.get((k, mu, tuple(cs)), {}))
    return AlgebraOverOperad(a, GradedVectorSpace.from_degrees(degs), theta, D, rule, obj["name"])


# --------------------------------------------------------------------------
# reports


def _check_plain(x: Any, path: str) -> None:
    if isinstance(x, float):
        raise DocumentError(path, "floats are not allowed")
    if isinstance(x, dict):
        for k, v in x.items():
            if not isinstance(k, str):
                raise DocumentError(path, "object keys must be strings")
            _check_plain(v, f"{path}.{k}")
    elif isinstance(x, list):
        for i, v in enumerate(x):
            _check_plain(v, f"{path}[{i}]")
    elif not (x is None or isinstance(x, (str, int, bool))):
        raise DocumentError(path, f"unsupported value {x!r}")


def to_plain(x: Any) -> Any:
    """JSON-ready copy: rationals become strings, tuple/int keys become strings."""
    if isinstance(x, Fraction):
        return emit_rational(x)
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else _index_key(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    return x


def report_document(command: str, ok: bool, result: Any) -> Document:
    return Document("report", FORMAT_VERSION, {"command": command, "ok": ok, "result": to_plain(result)})


def parse_report(obj: Any, path: str = "payload") -> Dict[str, Any]:
    _fields(obj, path, ("command", "ok", "result"))
    _str(obj["command"], f"{path}.command")
    if not isinstance(obj["ok"], bool):
        raise DocumentError(f"{path}.ok", "expected a boolean")
    _check_plain(obj["result"], f"{path}.result")
    return obj


# --------------------------------------------------------------------------
# documents


def make_document(obj) -> Document:
    """Wrap a library object as a Document."""
    from .algebras.algebra import AlgebraOverOperad
    from .triples import AnalyticTriple
    if isinstance(obj, Operad):
        return Document("operad", FORMAT_VERSION, emit_operad(obj))
    if isinstance(obj, AnalyticTriple):
        return Document("triple", FORMAT_VERSION, emit_triple(obj))
    if isinstance(obj, AlgebraOverOperad):
        return Document("algebra", FORMAT_VERSION, emit_algebra(obj))
    if isinstance(obj, SymmetricSequence):
        return Document("sequence", FORMAT_VERSION, emit_sequence(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_PARSERS = {"operad": parse_operad, "triple": parse_triple, "algebra": parse_algebra,
            "sequence": parse_sequence, "report": parse_report}


def parse_document(obj: Any) -> Document:
    _fields(obj, "$", ("kind", "version", "payload"))
    kind = _str(obj["kind"], "kind", KINDS)
    version = obj["version"]
    if not isinstance(version, int) or isinstance(version, bool):
        raise DocumentError("version", "expected an integer")
    if version != FORMAT_VERSION:
        raise DocumentError("version", f"unsupported format version {version} (expected {FORMAT_VERSION})")
    _PARSERS[kind](obj["payload"], "payload")
    return Document(kind, version, obj["payload"])


def build(doc: Document):
    """The library object a Document describes (reports return their payload)."""
    return _PARSERS[doc.kind](doc.payload, "payload")


def loads(text: str) -> Document:
    try:
        obj = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"invalid JSON: {e}") from None
    return parse_document(obj)


def _reject_float(s: str):
    raise DocumentError("$", f"floating-point literal {s} is not allowed; use rational strings")


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(doc: Document) -> str:
    return doc.dumps()


def store(doc: Document, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(doc.dumps())
