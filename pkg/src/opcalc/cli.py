"""The ``opcalc`` command-line front end.

Exit codes: 0 success or verified true, 1 verified false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import serialize as ser
from .exactlin import SIGN_RULES, GradedVectorSpace, scalar

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Outcome:
    """A command result: structured data, a human table, and truth value."""

    def __init__(self, command: str, ok: bool, result: Any, lines: Sequence[str], document=None):
        self.command = command
        self.ok = ok
        self.result = result
        self.lines = list(lines)
        self.document = document


# --------------------------------------------------------------------------
# formatting


def _dims_str(d: Dict[int, int]) -> str:
    items = [f"{k}:{v}" for k, v in sorted(d.items()) if v]
    return "{" + ", ".join(items) + "}" if items else "0"


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> List[str]:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for t, r in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if t == 0:
            out.append("  ".join("-" * w for w in widths))
    return out


def _space(dim: int, degree: int) -> GradedVectorSpace:
    if dim < 0:
        raise UsageError("--dim must be nonnegative")
    return GradedVectorSpace({degree: dim} if dim else {})


def _parse_vector(text: str) -> Dict[int, Any]:
    """``"i:c,j:c"`` → sparse vector."""
    out = {}
    for part in text.split(","):
        try:
            i, c = part.split(":")
            out[int(i)] = scalar(c.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad vector entry {part!r}; expected index:rational") from None
    return out


# --------------------------------------------------------------------------
# inputs


def _load(path: str, kind: str):
    try:
        doc = ser.load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if doc.kind != kind:
        raise ser.DocumentError("kind", f"expected a {kind} document, got {doc.kind}")
    return ser.build(doc)


def _builtin(name: str, N: int, sign: Optional[str]):
    from .operads.builtins import builtin_operad
    try:
        return builtin_operad(name, N, sign)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _operad_input(args) -> Any:
    if getattr(args, "file", None):
        return _load(args.file, "operad")
    if not args.name:
        raise UsageError("give an operad document or --name")
    return _builtin(args.name, args.max_arity, args.sign)


def _triple_input(args) -> Any:
    from .triples import associated_triple, builtin_triple
    if getattr(args, "file", None):
        T = _load(args.file, "triple")
    elif args.name:
        if args.name in ("tensor", "sym", "free-lie"):
            T = builtin_triple(args.name, args.max_arity)
        else:
            T = associated_triple(_builtin(args.name, args.max_arity, args.sign))
    else:
        raise UsageError("give a triple document or --name")
    if getattr(args, "perturb", None):
        T = _perturb(T, args.perturb)
    return T


def _perturb(T, text: str):
    """``n:index:value`` replaces the μ component at the index-th basis element of (F∘F)[n]."""
    try:
        n, idx, value = text.split(":", 2)
        n, idx = int(n), int(idx)
        elems = T.composite_basis(n).elements
        elem = elems[idx]
    except (ValueError, IndexError):
        raise UsageError(f"bad --perturb {text!r}; expected arity:index:vector") from None
    return T.perturbed(n, elem, _parse_vector(value.replace(";", ",")) if value else {})


def _algebra_input(args) -> Any:
    from .algebras import FreeAlgebra, quotient_algebra
    if getattr(args, "file", None):
        C = _load(args.file, "algebra")
    else:
        if not args.operad:
            raise UsageError("give an algebra document or --operad")
        a = _builtin(args.operad, min(args.max_arity, args.degree), args.sign)
        C = FreeAlgebra(a, _space(args.dim, args.gen_degree), args.degree, args.sign)
    rels = [_parse_vector(r) for r in (getattr(args, "relation", None) or [])]
    if rels:
        if any(i >= C.dim for r in rels for i in r):
            raise UsageError("relation index out of range")
        C = quotient_algebra(C, rels)
    return C


# --------------------------------------------------------------------------
# operad commands


def cmd_operad_builtin(args) -> Outcome:
    a = _builtin(args.name, args.max_arity, args.sign)
    rows = [(n, a.dim(n), _dims_str(dict(a.seq[n].space.dims))) for n in range(1, a.max_arity + 1)]
    return Outcome("operad builtin", True, {"name": a.name, "dims": a.dims()[1:]},
                   [f"operad {a.name} (sign rule {a.sign_rule})"] + _table(("arity", "dim", "by degree"), rows),
                   ser.make_document(a))


def cmd_operad_check(args) -> Outcome:
    from .operads import check_operad_laws
    a = _operad_input(args)
    rep = check_operad_laws(a, args.max_arity if not args.file else None)
    lines = [f"operad laws: {'pass' if not rep else 'FAIL'}"]
    lines += _table(("law", "signature", "rank"), [(r["law"], r["signature"], r["rank"]) for r in rep]) if rep else []
    return Outcome("operad check", not rep, {"failures": rep}, lines)


def _parse_gens(items: Sequence[str], sign: str):
    from .symrep import regular_module, sign_module, trivial_module, zero_module
    from .symseq import SymmetricSequence
    kinds = {"trivial": trivial_module, "sign": sign_module, "regular": regular_module}
    gens: Dict[int, list] = {}
    for text in items:
        parts = text.split(":")
        try:
            n = int(parts[0])
            kind = parts[1] if len(parts) > 1 else "trivial"
            deg = int(parts[2]) if len(parts) > 2 else 0
        except ValueError:
            raise UsageError(f"bad generator {text!r}; expected arity[:trivial|sign|regular[:degree]]") from None
        if kind not in kinds or n < 1:
            raise UsageError(f"bad generator {text!r}")
        gens.setdefault(n, []).append(kinds[kind](n, deg))
    if not gens:
        raise UsageError("give at least one --gen")
    comps = [zero_module(0)]
    for n in range(1, max(gens) + 1):
        comps.append(_direct_sum(gens.get(n, []), n))
    return SymmetricSequence(comps, sign, name="gens")


def _direct_sum(mods, n):
    from .exactlin import GradedLinearMap
    from .symrep import SymGroupModule, zero_module
    if not mods:
        return zero_module(n)
    degs = sorted((d, t, i) for t, M in enumerate(mods) for i, d in enumerate(M.space.basis_degrees()))
    pos = {(t, i): p for p, (_, t, i) in enumerate(degs)}
    V = GradedVectorSpace.from_degrees(d for d, _, _ in degs)
    gens = []
    for g in range(n - 1):
        cols = [None] * len(degs)
        for t, M in enumerate(mods):
            for i, col in enumerate(M.gens[g].columns):
                cols[pos[(t, i)]] = {pos[(t, j)]: x for j, x in col.items()}
        gens.append(GradedLinearMap(V, V, cols))
    return SymGroupModule(n, V, gens)


def cmd_operad_free(args) -> Outcome:
    from .operads import FreeOperad, check_operad_laws
    gens = _parse_gens(args.gen or [], args.sign or "plain")
    F = FreeOperad(gens, args.max_arity, args.max_vertices)
    rep = check_operad_laws(F) if args.check else []
    rows = [(n, F.dim(n)) for n in range(1, F.max_arity + 1)]
    return Outcome("operad free", not rep, {"dims": F.dims()[1:], "failures": rep},
                   ["free operad"] + _table(("arity", "dim"), rows), ser.make_document(F))


def cmd_operad_quadratic(args) -> Outcome:
    from .operads import quadratic_preset
    q = quadratic_preset(args.preset, args.max_arity)
    ref = _builtin(args.preset, args.max_arity, None)
    same = q.dims() == ref.dims()
    rows = [(n, q.dim(n), ref.dim(n)) for n in range(1, q.max_arity + 1)]
    return Outcome("operad quadratic", same, {"preset": args.preset, "dims": q.dims()[1:],
                                              "builtin_dims": ref.dims()[1:]},
                   [f"quadratic presentation of {args.preset}"] + _table(("arity", "quadratic", "builtin"), rows),
                   ser.make_document(q))


def cmd_operad_primgen(args) -> Outcome:
    from .operads import FreeOperad, is_primitively_generated
    if args.gen:
        a = FreeOperad(_parse_gens(args.gen, args.sign or "plain"), args.max_arity)
    else:
        a = _operad_input(args)
    ok, witness = is_primitively_generated(a, N=args.max_arity if not args.file else None)
    line = "primitively generated" if ok else f"NOT primitively generated; witness {witness}"
    return Outcome("operad primgen", ok, {"primitively_generated": ok, "witness": witness}, [line])


def cmd_operad_induced(args) -> Outcome:
    from .triples import induced_operad
    args.file = getattr(args, "file", None)
    args.name = args.triple
    T = _triple_input(args)
    a = induced_operad(T, args.max_arity)
    rows = [(n, a.dim(n)) for n in range(1, a.max_arity + 1)]
    return Outcome("operad induced", True, {"triple": T.name, "dims": a.dims()[1:]},
                   [f"operad induced by {T.name}"] + _table(("arity", "dim"), rows), ser.make_document(a))


def cmd_operad_roundtrip(args) -> Outcome:
    from .triples import roundtrip_identity
    a = _operad_input(args)
    f = roundtrip_identity(a, args.max_arity if not args.file else None)
    bad = f.check()
    iso = f.is_isomorphism() and not bad
    return Outcome("operad roundtrip", iso, {"isomorphism": iso, "failures": bad},
                   [f"induced(associated({a.name})) ≅ {a.name}: {iso}"])


# --------------------------------------------------------------------------
# triple commands


def cmd_triple_check(args) -> Outcome:
    from .triples import check_triple_laws
    T = _triple_input(args)
    rep = check_triple_laws(T)
    lines = [f"triple laws for {T.name}: {'pass' if not rep else 'FAIL'}"]
    if rep:
        lines += _table(("law", "signature", "rank"), [(r["law"], r["signature"], r["rank"]) for r in rep])
    return Outcome("triple check", not rep, {"failures": rep}, lines, ser.make_document(T))


def cmd_triple_nu(args) -> Outcome:
    from .triples import canonical_nu
    T = _triple_input(args)
    nu = canonical_nu(T)
    bad = nu.check_tripmap()
    isos = {n: f.is_isomorphism() for n, f in nu.components.items()}
    ok = not bad
    rows = [(n, nu.a.dim(n), isos[n]) for n in sorted(isos)]
    return Outcome("triple nu", ok, {"tripmap_failures": bad, "component_isomorphisms": isos},
                   [f"ν respects multiplication: {ok}"] + _table(("arity", "dim", "iso"), rows))


def cmd_triple_compat(args) -> Outcome:
    from .triples import check_compatibility
    T = _triple_input(args)
    ok, rep = check_compatibility(T, _space(args.dim, args.gen_degree), args.degree)
    lines = [f"compatible: {ok}"]
    for c in rep["components"]:
        lines.append(f"  non-natural μ component: arity {c['arity']}, blocks {c['blocks']}, "
                     f"f={c['f']}, gs={c['gs']} ({c['signature']})")
    return Outcome("triple compat", ok, rep, lines)


# --------------------------------------------------------------------------
# algebra commands


def cmd_algebra_free(args) -> Outcome:
    C = _algebra_input(args)
    rows = [(d, x) for d, x in sorted(C.dims().items())]
    return Outcome("algebra free", True, {"dims": C.dims()},
                   [f"algebra {C.name}"] + _table(("degree", "dim"), rows), ser.make_document(C))


def cmd_algebra_check(args) -> Outcome:
    from .algebras import check_algebra_laws
    C = _algebra_input(args)
    rep = check_algebra_laws(C)
    lines = [f"algebra laws: {'pass' if not rep else 'FAIL'}"]
    if rep:
        lines += _table(("law", "signature", "rank"), [(r["law"], r["signature"], r["rank"]) for r in rep])
    return Outcome("algebra check", not rep, {"failures": rep}, lines)


def cmd_algebra_tower(args) -> Outcome:
    from .algebras import tower
    C = _algebra_input(args)
    T = tower(C, args.n_max, args.mode)
    rows = [(n, _dims_str(T.quotient_dims[n]), _dims_str(T.layer_dims.get(n, {})))
            for n in sorted(T.quotient_dims)]
    ok = T.reconciles()
    return Outcome("algebra tower", ok,
                   {"mode": args.mode, "quotients": T.quotient_dims, "layers": T.layer_dims},
                   [f"augmentation tower ({args.mode})"] + _table(("n", "I/I^n", "I^n/I^(n+1)"), rows))


def cmd_algebra_layers(args) -> Outcome:
    from .algebras import NotPrimitivelyGenerated, layer_compare
    C = _algebra_input(args)
    try:
        ok, layer, rhs = layer_compare(C, args.n, args.mode)
    except NotPrimitivelyGenerated as e:
        return Outcome("algebra layers", False, {"primitively_generated": False, "witness": e.witness},
                       [f"operad not primitively generated; witness {e.witness}"])
    return Outcome("algebra layers", ok, {"n": args.n, "layer": layer, "expected": rhs},
                   [f"layer {args.n}: {_dims_str(layer)}", f"a(n) ⊗ Q^n: {_dims_str(rhs)}", f"agree: {ok}"])


def cmd_algebra_split(args) -> Outcome:
    from .algebras import SectionError, split_algebra
    C = _algebra_input(args)
    try:
        rep = split_algebra(C)
    except SectionError as e:
        raise UsageError(str(e)) from None
    lines = [f"α: T(Q) → C isomorphism: {rep.isomorphism}"]
    if rep.witness:
        lines.append(f"witness: layer n={rep.witness[0]}, degree {rep.witness[1]}")
    lines += _table(("degree", "T(Q)", "C"), [(d, rep.source_dims.get(d, 0), rep.target_dims.get(d, 0))
                                             for d in sorted(set(rep.source_dims) | set(rep.target_dims))])
    witness = {"n": rep.witness[0], "degree": rep.witness[1]} if rep.witness else None
    return Outcome("algebra split", rep.isomorphism,
                   {"isomorphism": rep.isomorphism, "witness": witness, "layer_isos": rep.layer_isos,
                    "source_dims": rep.source_dims, "target_dims": rep.target_dims}, lines)


def cmd_algebra_leray(args) -> Outcome:
    from .algebras import exterior_polynomial_data, leray_split, polynomial_data
    if args.algebra == "poly":
        A = polynomial_data(args.degree, args.gen_degree)
    else:
        A = exterior_polynomial_data(args.degree)
    rep = leray_split(A, args.degree, args.sign or "koszul")
    ok = rep.isomorphism and rep.series_match and rep.laws_ok
    rows = [(d, rep.indecomposable_dims.get(d, 0), rep.algebra_dims.get(d, 0), rep.free_dims.get(d, 0))
            for d in range(1, args.degree + 1)]
    return Outcome("algebra leray", ok, vars(rep).copy(),
                   [f"A ≅ S(Q(A)): {ok} (laws {rep.laws_ok}, series {rep.series_match})"]
                   + _table(("degree", "Q(A)", "A", "S(Q)"), rows))


def cmd_algebra_pbw(args) -> Outcome:
    from .algebras import heisenberg, pbw_check
    rep = pbw_check(heisenberg(), args.degree)
    ok = rep.symmetrization_bijective and rep.u_dims == rep.expected
    rows = [(d, rep.u_dims.get(d, 0), rep.s_dims.get(d, 0), rep.expected.get(d, 0)) for d in range(args.degree + 1)]
    return Outcome("algebra pbw", ok, vars(rep).copy(),
                   [f"S(L) → U(L) bijective: {rep.symmetrization_bijective}"]
                   + _table(("degree", "U(L)", "S(L)", "series"), rows))


# --------------------------------------------------------------------------
# hh and calculus


def cmd_hh(args) -> Outcome:
    from .algebras import hochschild_homology
    rep = hochschild_homology(args.vars, args.q_max, args.degree)
    rows = [(q, d, rep.hh[q].get(d, 0), rep.omega[q].get(d, 0))
            for q in range(args.q_max + 1) for d in range(args.degree + 1)]
    return Outcome("hh", rep.agrees, {"hh": rep.hh, "omega": rep.omega, "agrees": rep.agrees},
                   [f"HH_* = Ω^* for K[x_1..x_{args.vars}]: {rep.agrees}"] + _table(("q", "degree", "HH", "Ω"), rows))


def _functor(args):
    from .calculus import AnalyticFunctor
    alias = {"tensor": "assoc", "sym": "com", "free-lie": "lie"}
    name = alias.get(args.functor, args.functor)
    return AnalyticFunctor(_builtin(name, args.max_arity, args.sign).seq, name=name)


def cmd_calc_cross(args) -> Outcome:
    from .calculus import cross_effect, cross_effect_recursion
    F = _functor(args)
    X = _space(args.dim, args.gen_degree)
    cr = cross_effect(F, [X] * args.n, args.degree)
    rec = cross_effect_recursion(F, [X] * args.n, args.degree)[0] if args.n >= 2 else True
    return Outcome("calc cross", rec, {"dims": cr.dims(), "multilinear": cr.multilinear_dims(), "recursion": rec},
                   [f"cr_{args.n} {F.name}: {_dims_str(cr.dims())}",
                    f"multilinear part: {_dims_str(cr.multilinear_dims())}", f"recursion holds: {rec}"])


def cmd_calc_taylor(args) -> Outcome:
    from .calculus import layer, taylor_polynomial
    F = _functor(args)
    X = _space(args.dim, args.gen_degree)
    rows = []
    res = {}
    for n in range(1, args.n + 1):
        P = taylor_polynomial(F, n)(X, args.degree).dims()
        Dn = layer(F, n)(X, args.degree).dims()
        rows.append((n, _dims_str(P), _dims_str(Dn)))
        res[n] = {"P": P, "D": Dn}
    return Outcome("calc taylor", True, res, [f"Taylor tower of {F.name}"] + _table(("n", "P_n", "D_n"), rows))


def cmd_calc_diff(args) -> Outcome:
    from .calculus import derivative_at_zero_matches, differential
    F = _functor(args)
    X = _space(args.dim, args.gen_degree)
    Y = _space(args.dim, args.gen_degree)
    d = differential(F, X, Y, args.degree)
    ok = derivative_at_zero_matches(F, X, args.degree)
    return Outcome("calc diff", ok, {"dims": d.dims(), "derivative_at_zero": ok},
                   [f"∇{F.name}(X;Y): {_dims_str(d.dims())}", f"∇F(X;0) = D_1F(X): {ok}"])


def cmd_calc_split(args) -> Outcome:
    from .calculus import SectionPreconditionError, build_splitting, check_split_condition
    F = _functor(args)
    X = _space(args.dim, args.gen_degree)
    rep = check_split_condition(F, X, args.n_max, args.degree)
    try:
        sp = build_splitting(F, X, rep, args.n_max, args.degree)
    except SectionPreconditionError as e:
        return Outcome("calc split", False, {"section_condition": False, "arity": e.n},
                       [f"section condition fails at n={e.n}"])
    rows = [(n, _dims_str(b)) for n, b in sorted(sp.block_dims.items())]
    return Outcome("calc split", sp.isomorphism,
                   {"isomorphism": sp.isomorphism, "blocks": sp.block_dims, "target": sp.target_dims},
                   [f"P_{args.n_max}F(X) ≅ ⊕ D_n: {sp.isomorphism}", f"P_{args.n_max}F(X): {_dims_str(sp.target_dims)}"]
                   + _table(("n", "block"), rows))


# --------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, degree: Optional[int] = None):
    p.add_argument("--max-arity", type=int, default=4, help="arity truncation N")
    if degree is not None:
        p.add_argument("--degree", type=int, default=degree, help="internal degree cap D")
    p.add_argument("--sign", choices=SIGN_RULES, default=None, help="sign rule override")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write the resulting document to this path")
    p.add_argument("--seedless", action="store_true", help="no randomized inputs (all fixtures are deterministic)")


def _operad_src(p):
    p.add_argument("file", nargs="?", help="operad document")
    p.add_argument("--name", help="builtin operad: com, assoc, lie, poisson(n)")


def _triple_src(p):
    p.add_argument("file", nargs="?", help="triple document")
    p.add_argument("--name", help="tensor, sym, free-lie, or a builtin operad name")
    p.add_argument("--perturb", help="replace one μ component: arity:index:i=c;j=c")


def _algebra_src(p, degree=4):
    p.add_argument("file", nargs="?", help="algebra document")
    p.add_argument("--operad", help="free algebra over this builtin operad")
    p.add_argument("--dim", type=int, default=1, help="number of generators")
    p.add_argument("--gen-degree", type=int, default=1, help="degree of the generators")
    p.add_argument("--relation", action="append", help="quotient by the ideal of i:c,j:c (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    P = argparse.ArgumentParser(prog="opcalc", description="Exact operad, triple and functor-calculus computations.")
    top = P.add_subparsers(dest="group", required=True)

    op = top.add_parser("operad").add_subparsers(dest="cmd", required=True)
    p = op.add_parser("builtin"); _common(p); p.add_argument("--name", required=True); p.set_defaults(fn=cmd_operad_builtin)
    p = op.add_parser("check"); _common(p); _operad_src(p); p.set_defaults(fn=cmd_operad_check)
    p = op.add_parser("free"); _common(p)
    p.add_argument("--gen", action="append", help="generator arity[:trivial|sign|regular[:degree]] (repeatable)")
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--check", action="store_true", help="also verify the operad laws")
    p.set_defaults(fn=cmd_operad_free)
    p = op.add_parser("quadratic"); _common(p); p.add_argument("--preset", choices=("com", "lie", "assoc"), required=True)
    p.set_defaults(fn=cmd_operad_quadratic)
    p = op.add_parser("primgen"); _common(p); _operad_src(p)
    p.add_argument("--gen", action="append", help="test the free operad on these generators instead")
    p.set_defaults(fn=cmd_operad_primgen)
    p = op.add_parser("induced"); _common(p)
    p.add_argument("--triple", required=True, help="tensor, sym, free-lie, or a builtin operad name")
    p.add_argument("--perturb", help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_operad_induced)
    p = op.add_parser("roundtrip"); _common(p); _operad_src(p); p.set_defaults(fn=cmd_operad_roundtrip)

    tr = top.add_parser("triple").add_subparsers(dest="cmd", required=True)
    p = tr.add_parser("check"); _common(p); _triple_src(p); p.set_defaults(fn=cmd_triple_check)
    p = tr.add_parser("nu"); _common(p); _triple_src(p); p.set_defaults(fn=cmd_triple_nu)
    p = tr.add_parser("compat"); _common(p, degree=3); _triple_src(p)
    p.add_argument("--dim", type=int, default=1); p.add_argument("--gen-degree", type=int, default=1)
    p.set_defaults(fn=cmd_triple_compat)

    al = top.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    for name, fn in (("free", cmd_algebra_free), ("check", cmd_algebra_check), ("split", cmd_algebra_split)):
        p = al.add_parser(name); _common(p, degree=4); _algebra_src(p); p.set_defaults(fn=fn)
    p = al.add_parser("tower"); _common(p, degree=4); _algebra_src(p)
    p.add_argument("--mode", choices=("direct", "derived"), default="direct")
    p.add_argument("--n-max", type=int, default=3); p.set_defaults(fn=cmd_algebra_tower)
    p = al.add_parser("layers"); _common(p, degree=4); _algebra_src(p)
    p.add_argument("--mode", choices=("direct", "derived"), default="direct")
    p.add_argument("--n", type=int, default=2); p.set_defaults(fn=cmd_algebra_layers)
    p = al.add_parser("leray"); _common(p, degree=6)
    p.add_argument("--algebra", choices=("poly", "ext-poly"), default="poly")
    p.add_argument("--gen-degree", type=int, default=2); p.set_defaults(fn=cmd_algebra_leray)
    p = al.add_parser("pbw"); _common(p, degree=6); p.set_defaults(fn=cmd_algebra_pbw)

    p = top.add_parser("hh"); _common(p, degree=4)
    p.add_argument("--vars", type=int, default=2); p.add_argument("--q-max", type=int, default=3)
    p.set_defaults(fn=cmd_hh)

    ca = top.add_parser("calc").add_subparsers(dest="cmd", required=True)
    for name, fn in (("cross", cmd_calc_cross), ("taylor", cmd_calc_taylor), ("diff", cmd_calc_diff),
                     ("split", cmd_calc_split)):
        p = ca.add_parser(name); _common(p, degree=3)
        p.add_argument("--functor", default="com", help="tensor, sym, free-lie, or a builtin operad name")
        p.add_argument("--dim", type=int, default=1); p.add_argument("--gen-degree", type=int, default=1)
        if name in ("cross", "taylor"):
            p.add_argument("--n", type=int, default=2)
        if name == "split":
            p.add_argument("--n-max", type=int, default=3)
        p.set_defaults(fn=fn)
    return P


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    for attr in ("max_arity", "degree", "dim", "n", "n_max"):
        v = getattr(args, attr, None)
        if v is not None and v < 0:
            print(f"opcalc: error: --{attr.replace('_', '-')} must be nonnegative", file=stderr)
            return EXIT_USAGE
    try:
        out = args.fn(args)
    except (UsageError, ser.DocumentError) as e:
        print(f"opcalc: error: {e}", file=stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f"opcalc: error: {e}", file=stderr)
        return EXIT_USAGE
    if args.out:
        doc = out.document or ser.report_document(out.command, out.ok, out.result)
        ser.store(doc, args.out)
    if args.json:
        doc = ser.report_document(out.command, out.ok, out.result)
        stdout.write(doc.dumps())
    else:
        stdout.write("\n".join(out.lines) + "\n")
    return EXIT_OK if out.ok else EXIT_FALSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
