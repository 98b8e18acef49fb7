"""Presentation files and the ``superquot`` command line.

A presentation file holds ``hopf`` blocks and ``sub`` blocks::

    hopf GL11 {
      even a inv, d inv;
      odd b, g;
      coproduct { a = a(x)a + b(x)g; ... }
      counit { a = 1; d = 1; }
      antipode auto;
    }
    sub Borel of GL11 { kill g; }

plus optional ``field q;`` / ``field p=7;`` and ``bound 6;`` settings.
Generators take ``inv`` (adjoin an inverse) and ``weight N`` modifiers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources

from . import _expr
from ._expr import ParseError, TokenStream, tokenize
from .hopf import (
    HopfError,
    HopfSuperalgebra,
    Verdict,
    associated_hopf_algebra,
    cotangent_data,
    gr_hopf_smash,
    is_graded,
    lie_superalgebra,
    validate_hopf,
)
from .superlinalg import QQ, Field
from .superpoly import SuperPresentation

__all__ = [
    "HopfBlock",
    "SubBlock",
    "PresentationFile",
    "ParseError",
    "parse_presentation",
    "format_presentation",
    "strip_positions",
    "Registry",
    "load_corpus",
    "run_command",
    "main",
]

KEYWORDS = {"hopf", "sub", "of", "even", "odd", "relations", "coproduct", "counit", "antipode",
            "kill", "field", "bound", "inv", "weight", "auto"}


@dataclass
class HopfBlock:
    name: str
    even: list = dc_field(default_factory=list)        # (name, invertible, weight)
    odd: list = dc_field(default_factory=list)         # (name, weight)
    relations: list = dc_field(default_factory=list)   # expression trees
    coproduct: dict = dc_field(default_factory=dict)   # name -> (tree, line, col)
    counit: dict = dc_field(default_factory=dict)
    antipode: object = "auto"                          # "auto" or dict like coproduct
    line: int = 0
    col: int = 0


@dataclass
class SubBlock:
    name: str
    parent: str
    kill: list = dc_field(default_factory=list)
    line: int = 0
    col: int = 0


@dataclass
class PresentationFile:
    hopf: dict = dc_field(default_factory=dict)
    subs: dict = dc_field(default_factory=dict)
    field: str | None = None
    bound: int | None = None


# --------------------------------------------------------------------------
# parsing


def _expect_kw(ts: TokenStream, word: str):
    t = ts.next()
    if t.kind != "name" or t.text != word:
        raise ParseError(f"expected {word!r}, found {t.text or 'end of input'!r}", t.line, t.col)
    return t


def _peek_kw(ts: TokenStream, word: str) -> bool:
    t = ts.peek()
    return t.kind == "name" and t.text == word


def _int(ts: TokenStream) -> int:
    t = ts.next()
    if t.kind != "number" or "/" in t.text:
        raise ParseError(f"expected an integer, found {t.text or 'end of input'!r}", t.line, t.col)
    return int(t.text)


def _gen_list(ts: TokenStream, parity: int, seen: dict) -> list:
    out = []
    while True:
        t = ts.expect_name()
        if t.text in KEYWORDS:
            raise ParseError(f"{t.text!r} is reserved", t.line, t.col)
        if t.text in seen:
            raise ParseError(f"generator {t.text!r} declared twice", t.line, t.col)
        seen[t.text] = parity
        inv, weight = False, 1
        while True:
            if _peek_kw(ts, "inv"):
                it = ts.next()
                if parity:
                    raise ParseError("odd generators cannot be invertible", it.line, it.col)
                inv = True
            elif _peek_kw(ts, "weight"):
                ts.next()
                wt = ts.peek()
                weight = _int(ts)
                if weight < 1:
                    raise ParseError("weights must be positive", wt.line, wt.col)
            else:
                break
        out.append((t.text, inv, weight) if parity == 0 else (t.text, weight))
        if not ts.accept(","):
            break
    ts.expect(";")
    return out


def _expr_list(ts: TokenStream) -> list:
    out = [_expr.parse_expr(ts)]
    while ts.accept(","):
        out.append(_expr.parse_expr(ts))
    ts.expect(";")
    return out


def _clauses(ts: TokenStream) -> dict:
    ts.expect("{")
    out = {}
    while not ts.accept("}"):
        t = ts.expect_name()
        if t.text in out:
            raise ParseError(f"second clause for {t.text!r}", t.line, t.col)
        ts.expect("=")
        out[t.text] = (_expr.parse_expr(ts), t.line, t.col)
        ts.expect(";")
    return out


def _hopf_block(ts: TokenStream, start) -> HopfBlock:
    name = ts.expect_name()
    blk = HopfBlock(name.text, line=start.line, col=start.col)
    seen: dict = {}
    ts.expect("{")
    done = set()
    while not ts.accept("}"):
        t = ts.expect_name()
        if t.text in done:
            raise ParseError(f"second {t.text!r} section", t.line, t.col)
        done.add(t.text)
        if t.text == "even":
            blk.even = _gen_list(ts, 0, seen)
        elif t.text == "odd":
            blk.odd = _gen_list(ts, 1, seen)
        elif t.text == "relations":
            blk.relations = _expr_list(ts)
        elif t.text == "coproduct":
            blk.coproduct = _clauses(ts)
        elif t.text == "counit":
            blk.counit = _clauses(ts)
        elif t.text == "antipode":
            if _peek_kw(ts, "auto"):
                ts.next()
                ts.accept(";")
                blk.antipode = "auto"
            else:
                blk.antipode = _clauses(ts)
        else:
            raise ParseError(f"unknown section {t.text!r}", t.line, t.col)
    for section in (blk.coproduct, blk.counit, blk.antipode):
        if not isinstance(section, dict):
            continue
        for g, (_, line, col) in section.items():
            if g not in seen:
                raise ParseError(f"clause for undeclared generator {g!r}", line, col)
    return blk


def parse_presentation(text: str) -> PresentationFile:
    """Parse a presentation file; errors carry line and column."""
    ts = TokenStream(tokenize(text))
    pf = PresentationFile()
    while ts.peek().kind != "eof":
        t = ts.expect_name()
        if t.text == "hopf":
            blk = _hopf_block(ts, t)
            if blk.name in pf.hopf or blk.name in pf.subs:
                raise ParseError(f"name {blk.name!r} defined twice", t.line, t.col)
            pf.hopf[blk.name] = blk
        elif t.text == "sub":
            name = ts.expect_name()
            _expect_kw(ts, "of")
            parent = ts.expect_name()
            if parent.text not in pf.hopf:
                raise ParseError(f"unknown hopf block {parent.text!r}", parent.line, parent.col)
            if name.text in pf.hopf or name.text in pf.subs:
                raise ParseError(f"name {name.text!r} defined twice", name.line, name.col)
            ts.expect("{")
            _expect_kw(ts, "kill")
            kill = _expr_list(ts)
            ts.expect("}")
            pf.subs[name.text] = SubBlock(name.text, parent.text, kill, t.line, t.col)
        elif t.text == "field":
            f = ts.expect_name()
            if f.text == "q":
                pf.field = "q"
            elif f.text == "p":
                ts.expect("=")
                pf.field = f"p={_int(ts)}"
            else:
                raise ParseError(f"unknown field {f.text!r}", f.line, f.col)
            ts.expect(";")
        elif t.text == "bound":
            pf.bound = _int(ts)
            ts.expect(";")
        else:
            raise ParseError(f"expected 'hopf', 'sub', 'field' or 'bound', found {t.text!r}", t.line, t.col)
    return pf


# --------------------------------------------------------------------------
# canonical printing

_LEVEL = {"add": 0, "sub": 0, "tensor": 1, "mul": 2, "neg": 3, "pow": 4, "num": 5, "gen": 5}


def _fmt(node, level: int = 0) -> str:
    kind = node[0]
    if kind == "num":
        s = str(node[1])
    elif kind == "gen":
        s = node[1]
    elif kind in ("add", "sub"):
        op = " + " if kind == "add" else " - "
        s = _fmt(node[1], 0) + op + _fmt(node[2], 1)
    elif kind == "tensor":
        s = "(x)".join(_fmt(x, 2) for x in node[1])
    elif kind == "mul":
        s = _fmt(node[1], 2) + "*" + _fmt(node[2], 3)
    elif kind == "neg":
        s = "-" + _fmt(node[1], 3)
    elif kind == "pow":
        s = _fmt(node[1], 5) + "^" + str(node[2])
    else:
        raise ValueError(f"unknown node {kind!r}")
    if _LEVEL[kind] < level:
        s = "(" + s + ")"
    return s


def format_presentation(pf: PresentationFile) -> str:
    """Canonical text; parsing it gives back the same trees."""
    out = []
    if pf.field:
        out.append(f"field {pf.field};")
    if pf.bound is not None:
        out.append(f"bound {pf.bound};")
    for blk in pf.hopf.values():
        out.append(f"hopf {blk.name} {{")
        if blk.even:
            items = [n + (" inv" if inv else "") + (f" weight {w}" if w != 1 else "") for n, inv, w in blk.even]
            out.append("  even " + ", ".join(items) + ";")
        if blk.odd:
            items = [n + (f" weight {w}" if w != 1 else "") for n, w in blk.odd]
            out.append("  odd " + ", ".join(items) + ";")
        if blk.relations:
            out.append("  relations " + ", ".join(_fmt(r) for r in blk.relations) + ";")
        for sec in ("coproduct", "counit"):
            out.append(f"  {sec} {{")
            for g, (tree, _, _) in getattr(blk, sec).items():
                out.append(f"    {g} = {_fmt(tree)};")
            out.append("  }")
        if blk.antipode == "auto":
            out.append("  antipode auto;")
        else:
            out.append("  antipode {")
            for g, (tree, _, _) in blk.antipode.items():
                out.append(f"    {g} = {_fmt(tree)};")
            out.append("  }")
        out.append("}")
    for sb in pf.subs.values():
        out.append(f"sub {sb.name} of {sb.parent} {{ kill " + ", ".join(_fmt(k) for k in sb.kill) + "; }")
    return "\n".join(out) + "\n"


def strip_positions(node):
    """Expression tree without source positions, for structural comparison."""
    kind = node[0]
    if kind == "gen":
        return ("gen", node[1])
    if kind == "pow":
        return ("pow", strip_positions(node[1]), node[2])
    if kind == "num":
        return node
    if kind == "tensor":
        return ("tensor", [strip_positions(x) for x in node[1]])
    return (kind,) + tuple(strip_positions(x) for x in node[1:])


def file_signature(pf: PresentationFile):
    """Position-free summary used to compare parses."""
    def clauses(d):
        return {g: strip_positions(t) for g, (t, _, _) in d.items()} if isinstance(d, dict) else d

    return {
        "field": pf.field,
        "bound": pf.bound,
        "hopf": {n: (b.even, b.odd, [strip_positions(r) for r in b.relations], clauses(b.coproduct),
                     clauses(b.counit), clauses(b.antipode)) for n, b in pf.hopf.items()},
        "subs": {n: (s.parent, [strip_positions(k) for k in s.kill]) for n, s in pf.subs.items()},
    }


# --------------------------------------------------------------------------
# models


def field_from(spec: str | None) -> Field:
    if spec in (None, "q", "Q"):
        return QQ
    if spec.startswith("p="):
        return Field(int(spec[2:]))
    raise ValueError(f"unknown field {spec!r}; use q or p=PRIME")


def _tree_pos(tree):
    return _expr.first_position(tree)


def build_hopf(blk: HopfBlock, fld: Field = QQ) -> HopfSuperalgebra:
    even = [(n, w, inv) for n, inv, w in blk.even]
    odd = [(n, w) for n, w in blk.odd]
    free = SuperPresentation(even, odd, [], field=fld, name=blk.name)
    rels = []
    for r in blk.relations:
        el = free.evaluate(r)
        if not isinstance(el, type(free.one)) or el.P is not free:
            raise ParseError("relations cannot contain (x)", *_tree_pos(r))
        if el.parity is None:
            raise ParseError("relation is not homogeneous", *_tree_pos(r))
        rels.append(dict(el.terms))
    P = SuperPresentation(even, odd, rels, field=fld, name=blk.name)
    names = [n for n, _, _ in blk.even] + [n for n, _ in blk.odd]
    parity = {n: 0 for n, _, _ in blk.even}
    parity.update({n: 1 for n, _ in blk.odd})
    cop, cou, anti = {}, {}, {}
    for g, (tree, line, col) in blk.coproduct.items():
        if g not in parity:
            raise ParseError(f"unknown generator {g!r}", line, col)
        v = P.evaluate(tree)
        if v.P is P:
            raise ParseError("coproduct needs a two-leg tensor expression", line, col)
        if v and v.parity != parity[g]:
            raise ParseError(f"coproduct of {g} has the wrong parity", line, col)
        cop[g] = v
    for g in names:
        if g not in cop:
            raise ParseError(f"no coproduct clause for {g!r}", blk.line, blk.col)
    for g, (tree, line, col) in blk.counit.items():
        if g not in parity:
            raise ParseError(f"unknown generator {g!r}", line, col)
        v = P.evaluate(tree)
        if v.P is not P or not v.is_scalar():
            raise ParseError("counit values must be scalars", line, col)
        c = v.constant()
        if parity[g] and c:
            raise ParseError(f"counit of odd generator {g} must be 0", line, col)
        cou[g] = c
    if blk.antipode == "auto":
        anti = "auto"
    else:
        for g, (tree, line, col) in blk.antipode.items():
            if g not in parity:
                raise ParseError(f"unknown generator {g!r}", line, col)
            v = P.evaluate(tree)
            if v.P is not P:
                raise ParseError("antipode values live in the algebra itself", line, col)
            if v and v.parity != parity[g]:
                raise ParseError(f"antipode of {g} has the wrong parity", line, col)
            anti[g] = v
    try:
        return HopfSuperalgebra(P, cop, cou, anti, name=blk.name)
    except HopfError as exc:
        raise ParseError(str(exc), blk.line, blk.col) from None


class Registry:
    """Named Hopf blocks and sub blocks from one or more files, built lazily."""

    def __init__(self, fld: Field = QQ):
        self.field = fld
        self.hopf: dict = {}
        self.subs: dict = {}
        self._built: dict = {}

    def add(self, pf: PresentationFile):
        for n, b in pf.hopf.items():
            old = self.hopf.get(n)
            if old is not None and file_signature(PresentationFile({n: old})) != file_signature(PresentationFile({n: b})):
                raise ValueError(f"conflicting definitions of {n!r}")
            self.hopf[n] = b
        for n, s in pf.subs.items():
            old = self.subs.get(n)
            if old is not None and (old.parent, [strip_positions(k) for k in old.kill]) != \
                    (s.parent, [strip_positions(k) for k in s.kill]):
                raise ValueError(f"conflicting definitions of {n!r}")
            self.subs[n] = s

    def hopf_algebra(self, name: str) -> HopfSuperalgebra:
        if name not in self.hopf:
            raise KeyError(f"no hopf block named {name!r}")
        if name not in self._built:
            self._built[name] = build_hopf(self.hopf[name], self.field)
        return self._built[name]

    def pair(self, parent: str, name: str):
        from .quotient import prepare_pair

        if name not in self.subs:
            raise KeyError(f"no sub block named {name!r}")
        sb = self.subs[name]
        if sb.parent != parent:
            raise KeyError(f"{name!r} is a subgroup of {sb.parent!r}, not {parent!r}")
        key = ("pair", name)
        if key not in self._built:
            H = self.hopf_algebra(parent)
            kill = []
            for k in sb.kill:
                v = H.P.evaluate(k)
                if v.P is not H.P:
                    raise ParseError("ideal generators cannot contain (x)", *_tree_pos(k))
                kill.append(v)
            self._built[key] = prepare_pair(H, kill, name=name)
        return self._built[key]


def corpus_files() -> list[str]:
    root = resources.files("superquot") / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".sq"))


def corpus_text(name: str) -> str:
    return (resources.files("superquot") / "corpus" / name).read_text(encoding="utf-8")


def load_corpus(fld: Field = QQ) -> Registry:
    reg = Registry(fld)
    for f in corpus_files():
        reg.add(parse_presentation(corpus_text(f)))
    return reg


# --------------------------------------------------------------------------
# commands

EXIT = {"pass": 0, "Proven": 0, "fail": 2, "Disproven": 2, "Unknown": 3}
COMMANDS = ("validate", "analyze", "lie", "gr", "quotient", "galois", "splitting", "consistency")
NEEDS_SUB = {"quotient", "galois", "splitting", "consistency"}


def _plain(x):
    """JSON-ready copy with deterministic key order and exact scalars as strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Verdict):
        return {"status": x.status, "bound": x.bound, "witness": _plain(x.witness)}
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def _status(v) -> str:
    return v.status if hasattr(v, "status") else ("pass" if v else "fail")


def _gens(P: SuperPresentation) -> dict:
    return {"even": [g.name for g in P.base_even], "odd": [g.name for g in P.odd]}


def _cmd_validate(H, args, bound):
    v = validate_hopf(H, bound)
    doc = {"verdicts": {"hopf": v.status},
           "dimensions": {"truncated_basis": len(H.P.layer_monomials(bound))},
           "generators": {**_gens(H.P), "antipode": {g: str(x) for g, x in H.S.images.items()}},
           "witnesses": {"hopf": v.witness}}
    return doc, v.status


def _cmd_analyze(H, args, bound):
    v = validate_hopf(H, min(bound, 4))
    cd = cotangent_data(H)
    C, _ = associated_hopf_algebra(H)
    L = lie_superalgebra(H)
    g = is_graded(H)
    doc = {"verdicts": {"hopf": v.status, "graded": g.status},
           "dimensions": {"W": len(cd.odd_basis), "lie": list(L.dims),
                          "associated_truncated": len(C.P.layer_monomials(bound))},
           "generators": {**_gens(H.P), "W": list(cd.odd_basis), "associated": _gens(C.P)},
           "witnesses": {"hopf": v.witness, "graded": g.witness}}
    return doc, v.status


def _cmd_lie(H, args, bound):
    L = lie_superalgebra(H)
    checks = {k: ("pass" if ok else "fail") for k, ok in L.checks.items()}
    status = "pass" if all(c == "pass" for c in checks.values()) else "fail"
    table = {f"[{a}, {b}]": {k: str(c) for k, c in v.items()} for (a, b), v in sorted(L.bracket.items())}
    doc = {"verdicts": {"lie": status, **checks},
           "dimensions": {"lie": list(L.dims)},
           "generators": {"even": list(L.even), "odd": list(L.odd)},
           "witnesses": {"bracket": table}}
    return doc, status


def _cmd_gr(H, args, bound):
    g = is_graded(H)
    G = gr_hopf_smash(H)
    vg = validate_hopf(G, min(bound, 6))
    gg = is_graded(G)
    status = "pass" if vg.ok and gg.ok else "fail"
    doc = {"verdicts": {"graded": g.status, "gr_valid": vg.status, "gr_graded": gg.status},
           "dimensions": {"gr_truncated": len(G.P.layer_monomials(bound))},
           "generators": {"gr": _gens(G.P),
                          "gr_coproduct": {n: str(x) for n, x in G.delta.images.items()}},
           "witnesses": {"graded": g.witness, "gr_valid": vg.witness}}
    return doc, status


def _cmd_quotient(S, args, bound):
    from .quotient import build_quotient, check_affinity, compute_z

    aff = check_affinity(S, bound)
    Z = compute_z(S)
    doc = {"verdicts": {"affinity": aff.status},
           "dimensions": {"W_G": len(S.W_G), "W_H": len(S.W_H), "z": Z.dim},
           "generators": {"z": list(Z.names)},
           "witnesses": {"affinity": aff.witness}}
    if not aff.ok and not args.override_affinity:
        return doc, aff.status
    Q = build_quotient(S, bound, affinity=aff, override=args.override_affinity)
    doc["verdicts"].update(Q.verdicts)
    doc["dimensions"].update({"layers": Q.layer_dims, "total": Q.total_dim,
                              "ranks": dict(sorted(Q.rank_table.items())),
                              "binomial_ranks": Q.binomial_ranks, "B1_rank": Q.B1.rank,
                              "B1_free": Q.B1.free})
    P = Q.presentation
    doc["generators"].update({"B": [str(b) for b in Q.B_generators],
                              "B_relations": Q.B_relations,
                              "B1": Q.witnesses["B1_generators"],
                              "presentation": {"even": [g.name for g in P.even],
                                               "odd": [g.name for g in P.odd]}})
    bad = [k for k, v in Q.verdicts.items() if k != "affinity" and v not in ("pass", "Proven")]
    status = aff.status if aff.ok or not args.override_affinity else ("fail" if bad else "pass")
    if aff.ok and bad:
        status = "Unknown" if all(Q.verdicts[k] == "Unknown" for k in bad) else "fail"
    return doc, status


def _cmd_galois(S, args, bound):
    from .quotient import check_galois, quotient_comodule_algebra

    g = check_galois(quotient_comodule_algebra(S), bound, hopf=S.C)
    doc = {"verdicts": {"galois": g.status},
           "dimensions": {"beta": g.beta, "free_over_B": g.free_over_B},
           "generators": {"alpha_targets": sorted(g.alpha)},
           "witnesses": {"alpha": g.alpha, "obstruction": g.obstruction}}
    return doc, g.status


def _cmd_splitting(S, args, bound):
    from .quotient import check_splitting, compute_z

    sp = check_splitting(S, bound)
    Z = compute_z(S)
    doc = {"verdicts": {k: v.status for k, v in sp.items()},
           "dimensions": {"z": Z.dim, "W_G": len(S.W_G)},
           "generators": {"z": list(Z.names)},
           "witnesses": {k: v.witness for k, v in sp.items()}}
    return doc, sp["split"].status


def _cmd_consistency(S, args, bound):
    from .quotient import gr_quotient_check, local_consistency_check

    v = {"gr": gr_quotient_check(S, bound)}
    if args.chart:
        name, _, expr = args.chart.partition("=")
        if not expr:
            raise ValueError("--chart expects x=EXPR")
        v["local"] = local_consistency_check(S, expr, bound)
    status = "pass" if all(x.ok for x in v.values()) else "fail"
    doc = {"verdicts": {k: x.status for k, x in v.items()},
           "dimensions": {k: x.detail for k, x in v.items()},
           "generators": {},
           "witnesses": {k: x.witness for k, x in v.items()}}
    return doc, status


_DISPATCH = {"validate": _cmd_validate, "analyze": _cmd_analyze, "lie": _cmd_lie, "gr": _cmd_gr,
             "quotient": _cmd_quotient, "galois": _cmd_galois, "splitting": _cmd_splitting,
             "consistency": _cmd_consistency}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superquot", description="Quotients of affine supergroups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("names", nargs="+", help="hopf block, then sub block where needed")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--field", default=None, help="q or p=PRIME")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--chart", default=None, help="x=EXPR in the quotient presentation")
    p.add_argument("--override-affinity", action="store_true")
    p.add_argument("--file", action="append", default=[], help="presentation file (repeatable)")
    return p


def run_command(argv: list[str]) -> tuple[dict, int]:
    """Run one invocation; returns the result document and the exit status."""
    args = make_parser().parse_args(argv)
    files = [parse_presentation(open(f, encoding="utf-8").read()) for f in args.file]
    fspec = args.field or next((pf.field for pf in files if pf.field), None) or "q"
    fld = field_from(fspec)
    if files:
        reg = Registry(fld)
        for pf in files:
            reg.add(pf)
    else:
        reg = load_corpus(fld)
    bound = args.bound
    if bound is None and os.environ.get("SUPERQUOT_BOUND"):
        bound = int(os.environ["SUPERQUOT_BOUND"])
    if bound is None:
        bound = next((pf.bound for pf in files if pf.bound is not None), None) or 8
    if bound < 1:
        raise ValueError("bound must be positive")
    if args.command in NEEDS_SUB:
        if len(args.names) != 2:
            raise ValueError(f"{args.command} expects HOPF SUB")
        obj = reg.pair(args.names[0], args.names[1])
    else:
        if len(args.names) != 1:
            raise ValueError(f"{args.command} expects HOPF")
        obj = reg.hopf_algebra(args.names[0])
    doc, status = _DISPATCH[args.command](obj, args, bound)
    echo = [args.command] + list(args.names)
    if args.chart:
        echo.append(f"--chart {args.chart}")
    if args.override_affinity:
        echo.append("--override-affinity")
    full = {"command": " ".join(echo), "bound": bound, "field": fspec, "status": status}
    full.update(doc)
    return _plain(full), EXIT.get(status, 1)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{doc['command']}  (bound {doc['bound']}, field {doc['field']}): {doc['status']}"]
    for section in ("verdicts", "dimensions", "generators", "witnesses"):
        body = doc.get(section) or {}
        if not body:
            continue
        lines.append(f"{section}:")
        for k in sorted(body):
            v = body[k]
            if v in (None, {}, []):
                continue
            text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)
            lines.append(f"  {k}: {text}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        doc, code = run_command(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 1
    except (ParseError, HopfError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"superquot: error: {msg}", file=sys.stderr)
        return 1
    sys.stdout.write(render(doc, make_parser().parse_args(argv).format))
    return code


if __name__ == "__main__":
    sys.exit(main())
