"""Finitely presented super-commutative superalgebras.

A presentation is ``k[even | odd] / I``.  Odd generators anticommute and
square to zero structurally: a monomial is a pair ``(exps, odds)`` of an
exponent vector over the even generators and a strictly increasing tuple of
odd generator indices.  Invertible even generators get a partner generator
``name^-1`` together with the relation ``name * name^-1 - 1``.

Equality in the quotient is decided by a Groebner basis for the
super-commutative ideal (Buchberger with the extra products ``y * f`` for
odd ``y`` dividing the leading monomial).  The monomial order is
weight-graded, then lexicographic.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import NamedTuple

from . import _expr
from .superlinalg import QQ, Echelon, Field, recip, solve_membership

__all__ = [
    "Gen",
    "SuperPresentation",
    "SuperElement",
    "TensorPresentation",
    "AlgebraMap",
    "GradedPresentation",
    "NotConfluent",
    "NotInvertible",
    "normal_form",
    "truncated_basis",
    "localize_at",
    "gr_superalgebra",
    "invert",
    "tensor",
    "tensor_power",
    "drop_odd",
]

sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))

DEFAULT_EFFORT = 400


class NotConfluent(RuntimeError):
    """Completion hit the effort cap; equality answers are only 'up to bound'."""


class NotInvertible(ArithmeticError):
    pass


class Gen(NamedTuple):
    name: str
    parity: int
    weight: int = 1
    invertible: bool = False
    inverse_of: str | None = None


# --------------------------------------------------------------------------
# monomial arithmetic


def _merge_odd(a: tuple, b: tuple):
    """Sign and sorted union of two odd index tuples; ``None`` if they meet."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if any(j in sa for j in b):
        return None
    # count inversions: pairs i in a, j in b with i > j
    inv = 0
    k = 0
    for j in b:
        while k < len(a) and a[k] < j:
            k += 1
        inv += len(a) - k
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def mono_mul(m1, m2):
    r = _merge_odd(m1[1], m2[1])
    if r is None:
        return None
    sign, odds = r
    return sign, (tuple(x + y for x, y in zip(m1[0], m2[0])), odds)


def mono_divides(d, m) -> bool:
    return all(x <= y for x, y in zip(d[0], m[0])) and set(d[1]) <= set(m[1])


def mono_div(m, d):
    sd = set(d[1])
    return (tuple(y - x for x, y in zip(d[0], m[0])), tuple(j for j in m[1] if j not in sd))


def mono_lcm(a, b):
    return (tuple(max(x, y) for x, y in zip(a[0], b[0])), tuple(sorted(set(a[1]) | set(b[1]))))


def _iadd(out: dict, v: dict, c) -> None:
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            del out[k]


# --------------------------------------------------------------------------
# presentations


class SuperPresentation:
    """``k[X | Y] / I`` with generator weights and optional inverses.

    ``even`` entries are names, ``(name, weight)`` or ``(name, weight, invertible)``
    or :class:`Gen`; ``odd`` entries are names or ``(name, weight)``.
    ``relations`` are strings, elements of presentations sharing generator
    names, or raw term dicts in this presentation's indexing.
    """

    def __init__(self, even=(), odd=(), relations=(), field: Field = QQ, name: str = "",
                 effort: int = DEFAULT_EFFORT, allow_incomplete: bool = False):
        self.field = field
        self.name = name
        evens: list[Gen] = []
        even = [_as_gen(g, 0) for g in even]
        given_inverses = {g.inverse_of for g in even if g.inverse_of is not None}
        for g in even:
            if g.inverse_of is not None:
                evens.append(g)
                continue
            if g.invertible and g.name not in given_inverses:
                evens.append(Gen(g.name + "^-1", 0, g.weight, False, g.name))
            evens.append(g)
        self.even: tuple[Gen, ...] = tuple(evens)
        self.odd: tuple[Gen, ...] = tuple(_as_gen(g, 1) for g in odd)
        for g in self.odd:
            if g.invertible:
                raise ValueError(f"odd generator {g.name} cannot be invertible")
        self.index: dict[str, tuple[str, int]] = {}
        for i, g in enumerate(self.even):
            self._register(g.name, ("e", i))
        for j, g in enumerate(self.odd):
            self._register(g.name, ("o", j))
        self.inverse: dict[int, int] = {}
        for i, g in enumerate(self.even):
            if g.inverse_of is not None:
                b = self.index[g.inverse_of][1]
                self.inverse[i] = b
                self.inverse[b] = i
        self.ne = len(self.even)
        self.no = len(self.odd)
        self.one_mono = ((0,) * self.ne, ())
        self._okey_cache: dict = {}
        self._nf_cache: dict = {}
        self.gb: list = []
        self.complete = True

        rels = []
        for i, b in sorted(self.inverse.items()):
            if self.even[i].inverse_of is not None:
                m = [0] * self.ne
                m[i] += 1
                m[b] += 1
                rels.append({(tuple(m), ()): field.one, self.one_mono: -field.one})
        self.user_relations: list[dict] = []
        for r in relations:
            t = self._relation_terms(r)
            if t:
                par = {len(m[1]) % 2 for m in t}
                if len(par) > 1:
                    raise ValueError(f"relation {self._fmt_terms(t)} is not parity-homogeneous")
                self.user_relations.append(t)
        self._compute_gb(rels + self.user_relations, effort, allow_incomplete)

    def _register(self, name, where):
        if name in self.index:
            raise ValueError(f"duplicate generator name {name!r}")
        self.index[name] = where

    def _relation_terms(self, r) -> dict:
        if isinstance(r, str):
            node = _expr.parse_expr(_expr.TokenStream(_expr.tokenize(r)))
            return self._eval_free(node)
        if isinstance(r, SuperElement):
            return self.transport_terms(r)
        if isinstance(r, dict):
            return {k: self.field(v) for k, v in r.items() if v}
        raise TypeError(f"cannot use {r!r} as a relation")

    # -- order ------------------------------------------------------------

    def weight(self, m) -> int:
        w = 0
        for e, g in zip(m[0], self.even):
            w += e * g.weight
        for j in m[1]:
            w += self.odd[j].weight
        return w

    def okey(self, m):
        k = self._okey_cache.get(m)
        if k is None:
            ov = [0] * self.no
            for j in m[1]:
                ov[j] = 1
            k = (self.weight(m), m[0], tuple(ov))
            self._okey_cache[m] = k
        return k

    # -- Groebner basis ---------------------------------------------------

    def _lead(self, f: dict):
        return max(f, key=self.okey)

    def _mul_mono_poly(self, q, f: dict) -> dict:
        out: dict = {}
        for m, c in f.items():
            r = mono_mul(q, m)
            if r is None:
                continue
            s, mm = r
            y = out.get(mm, 0) + c * s
            if y:
                out[mm] = y
            else:
                out.pop(mm, None)
        return out

    def _reduce_full(self, f: dict, basis: list) -> dict:
        work = dict(f)
        done: dict = {}
        while work:
            m = max(work, key=self.okey)
            c = work.pop(m)
            for lead, lc, poly in basis:
                if mono_divides(lead, m):
                    q = mono_div(m, lead)
                    s, _ = mono_mul(q, lead)
                    _iadd(work, self._mul_mono_poly(q, poly), -c / (s * lc))
                    work.pop(m, None)
                    break
            else:
                done[m] = c
        return done

    def _compute_gb(self, polys, effort, allow_incomplete):
        basis: list = []
        todo = [dict(p) for p in polys]
        steps = 0
        while todo:
            f = self._reduce_full(todo.pop(0), basis)
            if not f:
                continue
            steps += 1
            if steps > effort:
                self.complete = False
                if not allow_incomplete:
                    raise NotConfluent(
                        f"Groebner completion exceeded effort cap {effort} for {self.name or 'presentation'}"
                    )
                break
            lead = self._lead(f)
            lc = f[lead]
            f = {m: c / lc for m, c in f.items()}
            for glead, _, g in basis:
                L = mono_lcm(lead, glead)
                q1, q2 = mono_div(L, lead), mono_div(L, glead)
                s1, _ = mono_mul(q1, lead)
                s2, _ = mono_mul(q2, glead)
                sp = self._mul_mono_poly(q1, f)
                _iadd(sp, self._mul_mono_poly(q2, g), -s1 * s2)
                if sp:
                    todo.append(sp)
            for j in lead[1]:
                yj = ((0,) * self.ne, (j,))
                p = self._mul_mono_poly(yj, f)
                if p:
                    todo.append(p)
            basis.append((lead, self.field.one, f))
        # inter-reduce
        basis.sort(key=lambda t: self.okey(t[0]))
        minimal = []
        for lead, lc, f in basis:
            if not any(mono_divides(l2, lead) for l2, _, _ in minimal):
                minimal.append((lead, lc, f))
        reduced = []
        for i, (lead, lc, f) in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            tail = {m: c for m, c in f.items() if m != lead}
            tail = self._reduce_full(tail, others)
            poly = dict(tail)
            poly[lead] = self.field.one
            reduced.append((lead, self.field.one, poly))
        self.gb = [(lead, lc, f, {m: c for m, c in f.items() if m != lead}) for lead, lc, f in reduced]
        self._nf_cache.clear()

    @property
    def leads(self) -> list:
        return [g[0] for g in self.gb]

    def is_standard(self, m) -> bool:
        return not any(mono_divides(l, m) for l in self.leads)

    # -- normal forms -----------------------------------------------------

    def _nf_mono(self, m) -> dict:
        r = self._nf_cache.get(m)
        if r is not None:
            return r
        for lead, lc, _, tail in self.gb:
            if mono_divides(lead, m):
                q = mono_div(m, lead)
                s, _ = mono_mul(q, lead)
                res: dict = {}
                for t, c in tail.items():
                    st = mono_mul(q, t)
                    if st is None:
                        continue
                    s2, mt = st
                    _iadd(res, self._nf_mono(mt), -c * s2 / (s * lc))
                break
        else:
            res = {m: self.field.one}
        self._nf_cache[m] = res
        return res

    def nf_terms(self, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            if c:
                _iadd(out, self._nf_mono(m), c)
        return out

    # -- element construction --------------------------------------------

    def element(self, terms: dict, normal: bool = False) -> "SuperElement":
        return SuperElement(self, terms if normal else self.nf_terms(terms), True)

    @property
    def one(self) -> "SuperElement":
        return SuperElement(self, {self.one_mono: self.field.one}, True)

    @property
    def zero(self) -> "SuperElement":
        return SuperElement(self, {}, True)

    def scalar(self, c) -> "SuperElement":
        c = self.field(c)
        return SuperElement(self, {self.one_mono: c} if c else {}, True)

    def gen(self, name: str) -> "SuperElement":
        kind, i = self.index[name]
        if kind == "e":
            e = [0] * self.ne
            e[i] = 1
            m = (tuple(e), ())
        else:
            m = ((0,) * self.ne, (i,))
        return self.element({m: self.field.one})

    def monomial(self, m) -> "SuperElement":
        return self.element({m: self.field.one})

    def __call__(self, x) -> "SuperElement":
        """Coerce a string, scalar or foreign element into this presentation."""
        if isinstance(x, SuperElement):
            if x.P is self:
                return x
            return self.element(self.transport_terms(x))
        if isinstance(x, str):
            return self.parse(x)
        return self.scalar(x)

    def parse(self, text: str) -> "SuperElement":
        node = _expr.parse_expr(_expr.TokenStream(_expr.tokenize(text)))
        return self.evaluate(node)

    def evaluate(self, node):
        """Evaluate an expression AST; tensor expressions land in a tensor power."""
        legs, val = _eval(node, self)
        if legs <= 1:
            return val if isinstance(val, SuperElement) else self.scalar(val)
        return val

    def _eval_free(self, node) -> dict:
        el = self.evaluate(node)
        return dict(el.terms)

    @property
    def gen_names(self) -> list[str]:
        return [g.name for g in self.even] + [g.name for g in self.odd]

    @property
    def base_even(self) -> list[Gen]:
        """Even generators without the adjoined inverse partners."""
        return [g for g in self.even if g.inverse_of is None]

    def transport_terms(self, x: "SuperElement", drop_odd: bool = False,
                        rename: dict | None = None) -> dict:
        """Move an element between presentations by generator name."""
        src = x.P
        emap = []
        for g in src.even:
            n = rename.get(g.name, g.name) if rename else g.name
            w = self.index.get(n)
            if w is None or w[0] != "e":
                raise KeyError(f"generator {g.name!r} has no even counterpart in {self.name or 'target'}")
            emap.append(w[1])
        omap = []
        for g in src.odd:
            n = rename.get(g.name, g.name) if rename else g.name
            w = self.index.get(n)
            if w is None or w[0] != "o":
                if drop_odd:
                    omap.append(None)
                    continue
                raise KeyError(f"generator {g.name!r} has no odd counterpart in {self.name or 'target'}")
            omap.append(w[1])
        out: dict = {}
        for (exps, odds), c in x.terms.items():
            e = [0] * self.ne
            for i, k in enumerate(exps):
                if k:
                    e[emap[i]] += k
            oo = [omap[j] for j in odds]
            if any(o is None for o in oo):
                continue
            if len(set(oo)) < len(oo):
                continue
            # sign of sorting the images
            inv = sum(1 for a, b in itertools.combinations(oo, 2) if a > b)
            m = (tuple(e), tuple(sorted(oo)))
            c2 = out.get(m, 0) + (c if inv % 2 == 0 else -c)
            if c2:
                out[m] = self.field(c2)
            else:
                out.pop(m, None)
        return out

    # -- bases ------------------------------------------------------------

    def layer_monomials(self, bound: int) -> list:
        """Standard monomials of weight <= bound, sorted by the monomial order."""
        out = []
        ew = [g.weight for g in self.even]
        ow = [g.weight for g in self.odd]

        def even_rec(i, rem, cur):
            if i == self.ne:
                yield tuple(cur), rem
                return
            k = 0
            while k * ew[i] <= rem:
                cur.append(k)
                yield from even_rec(i + 1, rem - k * ew[i], cur)
                cur.pop()
                k += 1

        for exps, rem in even_rec(0, bound, []):
            for r in range(self.no + 1):
                for S in itertools.combinations(range(self.no), r):
                    if sum(ow[j] for j in S) <= rem:
                        m = (exps, S)
                        if self.is_standard(m):
                            out.append(m)
        out.sort(key=self.okey)
        return out

    def __repr__(self):
        ev = ", ".join(g.name for g in self.base_even)
        od = ", ".join(g.name for g in self.odd)
        tag = f" {self.name}" if self.name else ""
        return f"<SuperPresentation{tag} k[{ev} | {od}] / ({len(self.user_relations)} relations)>"

    # -- printing ---------------------------------------------------------

    def fmt_mono(self, m) -> str:
        parts = []
        for e, g in zip(m[0], self.even):
            if not e:
                continue
            if g.inverse_of is not None:
                parts.append(f"{g.inverse_of}^-{e}" if e > 1 else f"{g.inverse_of}^-1")
            else:
                parts.append(g.name if e == 1 else f"{g.name}^{e}")
        for j in m[1]:
            parts.append(self.odd[j].name)
        return "*".join(parts)

    def _fmt_terms(self, terms: dict) -> str:
        if not terms:
            return "0"
        items = sorted(terms.items(), key=lambda kv: self.okey(kv[0]), reverse=True)
        return _join_terms([(self.fmt_mono(m), c) for m, c in items])


def _join_terms(items) -> str:
    out = []
    for i, (ms, c) in enumerate(items):
        neg = _is_negative(c)
        a = -c if neg else c
        if ms:
            body = ms if a == 1 else f"{a}*{ms}"
        else:
            body = str(a)
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _is_negative(c) -> bool:
    s = str(c)
    return s.startswith("-")


def _as_gen(g, parity) -> Gen:
    if isinstance(g, Gen):
        if g.parity != parity:
            raise ValueError(f"generator {g.name} has the wrong parity")
        return g
    if isinstance(g, str):
        return Gen(g, parity)
    g = tuple(g)
    name = g[0]
    weight = int(g[1]) if len(g) > 1 else 1
    inv = bool(g[2]) if len(g) > 2 else False
    if weight <= 0:
        raise ValueError("generator weights are positive integers")
    return Gen(name, parity, weight, inv)


# --------------------------------------------------------------------------
# elements


class SuperElement:
    """Normal-form element of a presentation; immutable."""

    __slots__ = ("P", "terms", "_hash")

    def __init__(self, P: SuperPresentation, terms: dict, _normal: bool = False):
        self.P = P
        self.terms = terms if _normal else P.nf_terms(terms)
        self._hash = None

    def _coerce(self, other) -> "SuperElement":
        if isinstance(other, SuperElement):
            if other.P is not self.P:
                raise ValueError("elements of different presentations")
            return other
        return self.P.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        _iadd(out, other.terms, 1)
        return SuperElement(self.P, out, True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        _iadd(out, other.terms, -1)
        return SuperElement(self.P, out, True)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return SuperElement(self.P, {m: -c for m, c in self.terms.items()}, True)

    def __mul__(self, other):
        if not isinstance(other, SuperElement):
            c = self.P.field(other)
            if not c:
                return self.P.zero
            return SuperElement(self.P, {m: x * c for m, x in self.terms.items()}, True)
        other = self._coerce(other)
        P = self.P
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                r = mono_mul(m1, m2)
                if r is None:
                    continue
                s, m = r
                _iadd(out, P._nf_mono(m), c1 * c2 * s)
        return SuperElement(P, out, True)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        out = self.P.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, SuperElement):
            return self.P is other.P and self.terms == other.terms
        try:
            return self.terms == self.P.scalar(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.P._fmt_terms(self.terms)

    __str__ = __repr__

    @property
    def parity(self):
        """0 or 1, or ``None`` for an inhomogeneous nonzero element."""
        ps = {len(m[1]) % 2 for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def part(self, parity: int) -> "SuperElement":
        return SuperElement(self.P, {m: c for m, c in self.terms.items() if len(m[1]) % 2 == parity}, True)

    def constant(self):
        return self.terms.get(self.P.one_mono, self.P.field.zero)

    def weight(self) -> int:
        return max((self.P.weight(m) for m in self.terms), default=0)

    def leading(self):
        return max(self.terms, key=self.P.okey) if self.terms else None

    def is_scalar(self) -> bool:
        return all(m == self.P.one_mono for m in self.terms)


def normal_form(expr, P: SuperPresentation) -> SuperElement:
    """Normal form of ``expr`` (string, element or scalar) modulo the relations of ``P``."""
    if not P.complete:
        raise NotConfluent("relation system is not confluent; normal forms are only up to bound")
    if isinstance(expr, str):
        return P.parse(expr)
    return P(expr)


def truncated_basis(P: SuperPresentation, bound: int) -> list[SuperElement]:
    """Basis of the filtration layer ``{weight <= bound}`` of ``P``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    return [SuperElement(P, {m: P.field.one}, True) for m in P.layer_monomials(bound)]


# --------------------------------------------------------------------------
# tensor products


class TensorPresentation(SuperPresentation):
    """``P_0 (x) ... (x) P_{k-1}`` realised with slot-major generator order.

    With that ordering the Koszul sign of ``(a (x) b)(c (x) d)`` is exactly the
    super-commutativity sign, so the tensor algebra is again a presentation.
    """

    def __init__(self, factors: list[SuperPresentation]):
        self.factors = list(factors)
        field = factors[0].field
        even, odd = [], []
        self._eoff, self._ooff = [], []
        for k, F in enumerate(factors):
            self._eoff.append(len(even))
            self._ooff.append(len(odd))
            for g in F.even:
                even.append(Gen(f"{g.name}@{k}", 0, g.weight, False,
                                None if g.inverse_of is None else f"{g.inverse_of}@{k}"))
            for g in F.odd:
                odd.append(Gen(f"{g.name}@{k}", 1, g.weight))
        self._eoff.append(len(even))
        self._ooff.append(len(odd))
        super().__init__(even, odd, (), field=field, name=" (x) ".join(F.name or "?" for F in factors))
        gb = []
        for k, F in enumerate(factors):
            for lead, lc, f, tail in F.gb:
                emb = lambda m, k=k: self._embed_mono(k, m)
                gb.append((emb(lead), lc, {emb(m): c for m, c in f.items()},
                           {emb(m): c for m, c in tail.items()}))
        self.gb = gb
        self._nf_cache.clear()
        self.complete = all(F.complete for F in factors)

    def _embed_mono(self, k, m):
        e = [0] * self.ne
        e[self._eoff[k]:self._eoff[k] + len(m[0])] = m[0]
        return (tuple(e), tuple(j + self._ooff[k] for j in m[1]))

    def embed(self, k: int, x: SuperElement) -> SuperElement:
        return SuperElement(self, {self._embed_mono(k, m): c for m, c in x.terms.items()}, True)

    def split_mono(self, m) -> list:
        parts = []
        for k, F in enumerate(self.factors):
            e = m[0][self._eoff[k]:self._eoff[k + 1]]
            o = tuple(j - self._ooff[k] for j in m[1] if self._ooff[k] <= j < self._ooff[k + 1])
            parts.append((e, o))
        return parts

    def combine(self, monos: list):
        e = []
        o = []
        for k, m in enumerate(monos):
            e.extend(m[0])
            o.extend(j + self._ooff[k] for j in m[1])
        return (tuple(e), tuple(o))

    def pure(self, *xs: SuperElement) -> SuperElement:
        """``x_0 (x) x_1 (x) ...`` for factor elements."""
        out = self.one
        for k, x in enumerate(xs):
            out = out * self.embed(k, x)
        return out

    def split_terms(self, x: SuperElement):
        """Yield ``(coeff, [factor monomials])`` for each term of ``x``."""
        for m, c in x.terms.items():
            yield c, self.split_mono(m)

    def fmt_mono(self, m) -> str:
        parts = self.split_mono(m)
        return "(x)".join(F.fmt_mono(pm) or "1" for F, pm in zip(self.factors, parts))

    def _fmt_terms(self, terms: dict) -> str:
        if not terms:
            return "0"
        items = sorted(terms.items(), key=lambda kv: self.okey(kv[0]), reverse=True)
        out = []
        for ms_c in items:
            m, c = ms_c
            out.append((self.fmt_mono(m), c))
        return _join_terms_tensor(out)


def _join_terms_tensor(items) -> str:
    out = []
    for i, (ms, c) in enumerate(items):
        neg = _is_negative(c)
        a = -c if neg else c
        body = ms if a == 1 else f"{a}*{ms}"
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_tensor_cache: dict = {}


def tensor_power(P: SuperPresentation, k: int) -> TensorPresentation:
    key = (id(P), k)
    T = _tensor_cache.get(key)
    if T is None or T.factors[0] is not P:
        T = TensorPresentation([P] * k)
        _tensor_cache[key] = T
    return T


def tensor(*Ps: SuperPresentation) -> TensorPresentation:
    key = tuple(id(P) for P in Ps)
    T = _tensor_cache.get(key)
    if T is None or any(a is not b for a, b in zip(T.factors, Ps)):
        T = TensorPresentation(list(Ps))
        _tensor_cache[key] = T
    return T


# --------------------------------------------------------------------------
# algebra maps


def invert(x: SuperElement, search_degree: int = 4) -> SuperElement:
    """Inverse of ``unit monomial + nilpotent`` by a terminating Neumann series.

    Falls back to a bounded linear search for ``y`` with ``x y = 1`` (units
    such as ``t`` in ``k[t]/(t^2 - 1)``).
    """
    try:
        return _invert_neumann(x)
    except NotInvertible as exc:
        err = exc
    P = x.P
    for n in range(1, search_degree + 1):
        monos = [m for m in P.layer_monomials(n) if len(m[1]) % 2 == 0]
        cols = [(x * P.monomial(m)).terms for m in monos]
        sol = solve_membership(P.one.terms, cols)
        if sol is not None:
            return P.element({m: c for m, c in zip(monos, sol) if c})
    raise err


def _invert_neumann(x: SuperElement) -> SuperElement:
    P = x.P
    L = {m: c for m, c in x.terms.items() if not m[1]}
    if len(L) != 1:
        raise NotInvertible(f"cannot invert {x}: even part is not a single unit monomial")
    (m, c), = L.items()
    inv_e = [0] * P.ne
    for i, e in enumerate(m[0]):
        if e:
            j = P.inverse.get(i)
            if j is None:
                raise NotInvertible(f"cannot invert {x}: {P.even[i].name} is not invertible")
            inv_e[j] += e
    Linv = P.element({(tuple(inv_e), ()): recip(c)})
    N = x - P.element({m: c}, normal=True)
    step = -(N * Linv)
    out = P.one
    power = P.one
    for _ in range(P.no + 2):
        power = power * step
        if not power:
            break
        out = out + power
    else:
        raise NotInvertible("odd part failed to be nilpotent")
    return Linv * out


class AlgebraMap:
    """Parity-preserving algebra map given by images of generators.

    Images for adjoined inverse generators are computed by :func:`invert`
    when not supplied.
    """

    def __init__(self, source: SuperPresentation, target: SuperPresentation, images: dict,
                 name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        imgs: dict = {}
        for k, v in images.items():
            if k not in source.index:
                raise KeyError(f"{k!r} is not a generator of the source")
            imgs[k] = target(v)
        for g in source.gen_names:
            if g not in imgs:
                gi = source.index[g]
                if gi[0] == "e" and source.even[gi[1]].inverse_of is not None:
                    continue
                raise KeyError(f"no image given for generator {g!r}")
        for g in source.even:
            if g.inverse_of is not None and g.name not in imgs:
                imgs[g.name] = invert(imgs[g.inverse_of])
        for g in source.gen_names:
            kind, i = source.index[g]
            par = imgs[g].parity
            want = 0 if kind == "e" else 1
            if imgs[g] and par != want:
                raise ValueError(f"image of {g} has parity {par}, expected {want}")
        self.images = imgs
        self._eimg = [imgs[g.name] for g in source.even]
        self._oimg = [imgs[g.name] for g in source.odd]
        self._cache: dict = {}

    def image_mono(self, m) -> SuperElement:
        r = self._cache.get(m)
        if r is not None:
            return r
        out = self.target.one
        for i, e in enumerate(m[0]):
            if e:
                out = out * (self._eimg[i] ** e)
        for j in m[1]:
            out = out * self._oimg[j]
        self._cache[m] = out
        return out

    def __call__(self, x) -> SuperElement:
        x = self.source(x)
        out: dict = {}
        for m, c in x.terms.items():
            _iadd(out, self.image_mono(m).terms, c)
        return SuperElement(self.target, out, True)

    def respects_relations(self):
        """First user relation not mapped to zero, or ``None``."""
        for r in self.source.user_relations:
            free = SuperElement(self.source, r, True)
            img = self(free)
            if img:
                return self.source._fmt_terms(r), img
        return None

    def __matmul__(self, other: "AlgebraMap") -> "AlgebraMap":
        return AlgebraMap(other.source, self.target,
                          {g: self(other.images[g]) for g in other.source.gen_names})


# --------------------------------------------------------------------------
# expression evaluation


def _eval(node, P: SuperPresentation):
    """Return ``(legs, value)``; legs 0 means a bare scalar (Fraction)."""
    kind = node[0]
    if kind == "num":
        return 0, node[1]
    if kind == "gen":
        if node[1] not in P.index:
            raise _expr.ParseError(f"unknown generator {node[1]!r}", node[2], node[3])
        return 1, P.gen(node[1])
    if kind == "pow":
        legs, v = _eval(node[1], P)
        k = node[2]
        if legs == 0:
            return 0, v ** k
        if k < 0:
            try:
                return legs, invert(v) ** (-k)
            except NotInvertible as exc:
                raise _expr.ParseError(str(exc), node[3], node[4]) from None
        return legs, v ** k
    if kind == "neg":
        legs, v = _eval(node[1], P)
        return legs, -v
    if kind in ("add", "sub", "mul"):
        la, a = _eval(node[1], P)
        lb, b = _eval(node[2], P)
        if la and lb and la != lb:
            line, col = _expr.first_position(node)
            raise _expr.ParseError("mixing tensor expressions of different lengths", line, col)
        legs = max(la, lb)
        if la == 0 and lb == 0:
            return 0, {"add": a + b, "sub": a - b, "mul": a * b}[kind]
        if la == 0:
            a = _lift(a, legs, P)
        if lb == 0:
            b = _lift(b, legs, P)
        if kind == "add":
            return legs, a + b
        if kind == "sub":
            return legs, a - b
        return legs, a * b
    if kind == "tensor":
        vals = [_eval(n, P) for n in node[1]]
        flat = []
        for legs, v in vals:
            if legs == 0:
                flat.append(P.scalar(v))
            elif legs == 1:
                flat.append(v)
            else:
                line, col = _expr.first_position(node)
                raise _expr.ParseError("nested tensor products must be flat", line, col)
        T = tensor_power(P, len(flat))
        return len(flat), T.pure(*flat)
    raise ValueError(f"unknown node {kind}")


def _lift(c, legs, P):
    if legs <= 1:
        return P.scalar(c)
    return tensor_power(P, legs).scalar(c)


# --------------------------------------------------------------------------
# localization and associated graded


def localize_at(P: SuperPresentation, x, name: str = "u", weight: int = 1):
    """Adjoin ``name`` with ``x * name = 1``; returns ``(P_x, canonical map P -> P_x)``."""
    x = P(x)
    if x.parity != 0:
        raise ValueError("can only localize at an even element")
    if not x:
        raise ValueError("cannot localize at zero")
    while name in P.index:
        name += "'"
    even = list(P.even) + [Gen(name, 0, weight)]
    Px = SuperPresentation(even, list(P.odd), [], field=P.field, name=f"{P.name}[{x}^-1]" if P.name else "")
    rels = [Px.transport_terms(SuperElement(P, r, True)) for r in P.user_relations]
    xr = Px.element(Px.transport_terms(x)) * Px.gen(name) - 1
    Pfinal = SuperPresentation(even, list(P.odd), rels + [dict(xr.terms)], field=P.field, name=Px.name)
    Pfinal.localized_at = (P, x, name)
    can = AlgebraMap(P, Pfinal, {g: Pfinal.gen(g) for g in P.gen_names
                                 if P.index[g][0] == "o" or P.even[P.index[g][1]].inverse_of is None})
    return Pfinal, can


def drop_odd(P: SuperPresentation, name: str = "") -> SuperPresentation:
    """``P / (P_1)``: the associated purely even algebra."""
    rels = []
    for r in P.user_relations:
        t = {m: c for m, c in r.items() if not m[1]}
        if t:
            rels.append(t if not P.odd else _reindex_even(t))
    return SuperPresentation(list(P.even), [], rels, field=P.field, name=name or (P.name + "_0" if P.name else ""))


def _reindex_even(t):
    return {(m[0], ()): c for m, c in t.items()}


@dataclass
class GradedPresentation:
    """``gr P`` computed on the filtration layer ``weight <= bound``."""

    base: SuperPresentation            # A = P / (P_1)
    module_generators: list[str]       # odd generator classes spanning I/I^2 over A
    bound: int
    component_dims: dict               # n -> dim (I^n / I^{n+1}) in the layer
    wedge_kernel_dims: dict            # n -> dim Ker(wedge^n_A(I/I^2) -> gr(n)) in the layer
    wedge_surjective: bool

    def total_dim(self) -> int:
        return sum(self.component_dims.values())


def _ideal_power_span(P: SuperPresentation, k: int, bound: int) -> Echelon:
    """Span of ``I^k`` inside the layer, ``I`` generated by the odd generators."""
    ech = Echelon()
    free = SuperPresentation(list(P.even), list(P.odd), [], field=P.field)
    for m in free.layer_monomials(bound):
        if len(m[1]) >= k:
            nf = P._nf_mono(m)
            if nf:
                ech.add(nf)
    return ech


def gr_superalgebra(P: SuperPresentation, bound: int = 4) -> GradedPresentation:
    A = drop_odd(P)
    dims = {}
    spans = [_ideal_power_span(P, k, bound) for k in range(P.no + 2)]
    for k in range(P.no + 1):
        dims[k] = spans[k].rank - spans[k + 1].rank
    # wedge^k_A(I/I^2) -> gr(k): standard A-monomial times y_S with |S| = k,
    # taken modulo I^{k+1}
    kernel_dims = {}
    surjective = True
    for k in range(P.no + 1):
        ech = Echelon()
        hi = spans[k + 1]
        nsrc = 0
        kernel = 0
        for am in A.layer_monomials(bound):
            for S in itertools.combinations(range(P.no), k):
                m = (am[0], S)
                if P.weight(m) > bound:
                    continue
                v = hi.reduce(P._nf_mono(m))[0]
                nsrc += 1
                if ech.add(v, tag=nsrc) is not None:
                    kernel += 1
        kernel_dims[k] = kernel
        if ech.rank != dims[k]:
            surjective = False
    return GradedPresentation(A, [g.name for g in P.odd], bound, dims, kernel_dims, surjective)
