"""Hopf superalgebras given by generators and relations.

Coproduct, counit and antipode are algebra maps determined by their values
on generators (the antipode of a super-commutative Hopf superalgebra is an
algebra map, the anti-homomorphism sign being absorbed by commutativity).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .superlinalg import Echelon, solve_membership
from .superpoly import (
    AlgebraMap,
    NotInvertible,
    SuperElement,
    SuperPresentation,
    TensorPresentation,
    drop_odd,
    tensor,
    tensor_power,
    truncated_basis,
)

__all__ = [
    "HopfSuperalgebra",
    "HopfError",
    "Verdict",
    "CotangentData",
    "LieData",
    "ground",
    "tensor_of_maps",
    "validate_hopf",
    "associated_hopf_algebra",
    "cotangent_data",
    "lie_superalgebra",
    "is_graded",
    "gr_hopf_smash",
    "canonical_psi",
    "verify_decomposition_psi",
]


class HopfError(ValueError):
    """Structure maps are inconsistent; ``witness`` names the offending element."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class Verdict:
    """Outcome of a bounded check.  ``status`` is ``pass``/``fail`` or Proven/Disproven/Unknown."""

    status: str
    bound: int | None = None
    witness: object = None
    detail: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "Proven")

    def __bool__(self):
        return self.ok


_ground_cache: dict = {}


def ground(fld) -> SuperPresentation:
    """The one-dimensional algebra ``k``."""
    K = _ground_cache.get(fld)
    if K is None:
        K = SuperPresentation((), (), (), field=fld, name="k")
        _ground_cache[fld] = K
    return K


def _slots(X: SuperPresentation) -> list[SuperPresentation]:
    if isinstance(X, TensorPresentation):
        return list(X.factors)
    if X.ne == 0 and X.no == 0:
        return []
    return [X]


def _placer(X: SuperPresentation, target: SuperPresentation, offset: int):
    """Function sending elements of ``X`` into slots ``offset..`` of ``target``."""
    tslots = _slots(target)
    xs = _slots(X)
    if not xs:
        return lambda x: target.scalar(x.constant())
    if not isinstance(target, TensorPresentation):
        if X is target:
            return lambda x: x
        return lambda x: target(x)
    # a tensor presentation sitting whole in one slot is not split
    xt = isinstance(X, TensorPresentation) and not (offset < len(tslots) and tslots[offset] is X)

    def place(x: SuperElement) -> SuperElement:
        out: dict = {}
        for m, c in x.terms.items():
            parts = X.split_mono(m) if xt else [m]
            monos = [F.one_mono for F in tslots]
            monos[offset:offset + len(parts)] = parts
            out[target.combine(monos)] = c
        return SuperElement(target, out, True)

    return place


def tensor_of_maps(maps: list[AlgebraMap], target: SuperPresentation, source=None) -> AlgebraMap:
    """``f_0 (x) f_1 (x) ...`` as a map between tensor presentations.

    The targets of the ``f_k`` are laid side by side in ``target``; a map into
    the ground field occupies no slot.
    """
    if source is None:
        source = tensor(*[f.source for f in maps])
    images = {}
    offset = 0
    for k, f in enumerate(maps):
        place = _placer(f.target, target, offset)
        for g in f.source.gen_names:
            name = f"{g}@{k}" if isinstance(source, TensorPresentation) else g
            images[name] = place(f.images[g])
        whole = isinstance(target, TensorPresentation) and offset < len(_slots(target)) \
            and _slots(target)[offset] is f.target
        offset += 1 if whole else len(_slots(f.target))
    return AlgebraMap(source, target, images)


def identity_map(P: SuperPresentation) -> AlgebraMap:
    return AlgebraMap(P, P, {g: P.gen(g) for g in P.gen_names})


def multiplication(P: SuperPresentation, k: int = 2) -> AlgebraMap:
    T = tensor_power(P, k)
    return AlgebraMap(T, P, {f"{g}@{i}": P.gen(g) for i in range(k) for g in P.gen_names})


class HopfSuperalgebra:
    """Presentation plus coproduct, counit and antipode on generators.

    ``coproduct`` maps generator names to strings or elements of ``P (x) P``;
    ``counit`` maps names to scalars; ``antipode`` is a dict or ``"auto"``.
    Data on the adjoined inverse generators is derived.
    """

    def __init__(self, P: SuperPresentation, coproduct: dict, counit: dict, antipode="auto",
                 name: str = "", auto_degree: int = 6):
        self.P = P
        self.name = name or P.name
        self.field = P.field
        self.T2 = tensor_power(P, 2)
        self.T3 = tensor_power(P, 3)
        self.K = ground(P.field)
        for g in P.odd:
            c = counit.get(g.name, 0)
            if P.field(c):
                raise HopfError(f"counit of odd generator {g.name} must be 0", g.name)
        try:
            self.delta = AlgebraMap(P, self.T2, {g: self._tensor_value(v) for g, v in coproduct.items()})
            self.eps = AlgebraMap(P, self.K, {g: self.K.scalar(counit.get(g, 0))
                                              for g in P.gen_names if P.even_or_odd_base(g)})
        except NotInvertible as exc:
            raise HopfError(f"coproduct of an invertible generator is not invertible: {exc}") from None
        self.antipode_source = "given" if antipode != "auto" else "auto"
        if antipode == "auto":
            self.S = self._solve_antipode(auto_degree)
        else:
            self.S = AlgebraMap(P, P, {g: P(v) for g, v in antipode.items()})
        self._cache: dict = {}

    def _tensor_value(self, v):
        if isinstance(v, str):
            v = self.P.parse(v)
        if isinstance(v, SuperElement) and v.P is self.T2:
            return v
        raise HopfError(f"coproduct value {v!r} is not a two-fold tensor")

    def __repr__(self):
        return f"<HopfSuperalgebra {self.name}: {self.P!r}>"

    # -- antipode solve ---------------------------------------------------

    def _linear_legs(self, g, side):
        """Coproduct of ``g`` as ``[(leg generator or None, other leg, coeff)]`` if legs on ``side`` are linear."""
        out = []
        for c, (m0, m1) in self.T2.split_terms(self.delta.images[g]):
            lin, other = (m0, m1) if side == 0 else (m1, m0)
            # the coefficient is applied with the sign of reordering S(lin)*other
            deg = sum(lin[0]) + len(lin[1])
            if deg == 0:
                key = None
            elif deg == 1:
                if lin[1]:
                    key = self.P.odd[lin[1][0]].name
                else:
                    i = lin[0].index(1)
                    key = self.P.even[i].name
                    if self.P.even[i].inverse_of is not None:
                        return None
            else:
                return None
            out.append((key, other, c))
        return out

    def _solve_antipode(self, max_degree: int) -> AlgebraMap:
        P = self.P
        gens = [g for g in P.gen_names if P.even_or_odd_base(g)]
        systems = {}
        for side in (0, 1):
            rows = {g: self._linear_legs(g, side) for g in gens}
            if all(r is not None for r in rows.values()):
                systems[side] = rows
        if not systems:
            raise HopfError("antipode 'auto' needs coproduct legs linear in generators on one side")
        eps = {g: self.eps(P.gen(g)).constant() for g in gens}
        for N in range(1, max_degree + 1):
            basis = P.layer_monomials(N)
            cols, keys = [], []
            for k in gens:
                par = P.index[k][0] == "o"
                for m in basis:
                    if (len(m[1]) % 2 == 1) != par:
                        continue
                    vec = {}
                    for side, rows in systems.items():
                        for g in gens:
                            for key, other, c in rows[g]:
                                if key != k:
                                    continue
                                lin_el = P.monomial(m)
                                oth = P.monomial(other)
                                prod = lin_el * oth if side == 0 else oth * lin_el
                                for mm, cc in prod.terms.items():
                                    kk = (side, g, mm)
                                    vec[kk] = vec.get(kk, 0) + c * cc
                    vec = {a: b for a, b in vec.items() if b}
                    cols.append(vec)
                    keys.append((k, m))
            target = {}
            for side, rows in systems.items():
                for g in gens:
                    t = {P.one_mono: eps[g]} if eps[g] else {}
                    for key, other, c in rows[g]:
                        if key is None:
                            for mm, cc in P.monomial(other).terms.items():
                                t[mm] = t.get(mm, 0) - c * cc
                    for mm, cc in t.items():
                        if cc:
                            target[(side, g, mm)] = cc
            sol = solve_membership(target, cols)
            if sol is None:
                continue
            images = {g: P.zero for g in gens}
            if sol:
                for (k, m), c in zip(keys, sol):
                    if c:
                        images[k] = images[k] + P.monomial(m) * c
            try:
                S = AlgebraMap(P, P, images)
            except NotInvertible:
                continue
            if self._antipode_ok(S, gens):
                return S
        raise HopfError(f"antipode 'auto' found no solution up to degree {max_degree}")

    def _antipode_ok(self, S, gens) -> bool:
        m = multiplication(self.P)
        left = tensor_of_maps([S, identity_map(self.P)], self.P, self.T2)
        right = tensor_of_maps([identity_map(self.P), S], self.P, self.T2)
        for g in self.P.gen_names:
            d = self.delta.images[g]
            e = self.P.scalar(self.eps.images[g].constant())
            if left(d) != e or right(d) != e:
                return False
        return S.respects_relations() is None

    # -- derived maps -----------------------------------------------------

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def delta_left(self) -> AlgebraMap:
        """``Delta (x) id`` on ``P (x) P``."""
        return self.cached("dl", lambda: tensor_of_maps([self.delta, identity_map(self.P)], self.T3, self.T2))

    @property
    def delta_right(self) -> AlgebraMap:
        return self.cached("dr", lambda: tensor_of_maps([identity_map(self.P), self.delta], self.T3, self.T2))

    def coproduct(self, x) -> SuperElement:
        return self.delta(x)

    def counit(self, x):
        return self.eps(x).constant()

    def antipode(self, x) -> SuperElement:
        return self.S(x)

    def double_coproduct(self, x) -> SuperElement:
        return self.delta_left(self.delta(x))


def _even_or_odd_base(self, name) -> bool:
    kind, i = self.index[name]
    return kind == "o" or self.even[i].inverse_of is None


SuperPresentation.even_or_odd_base = _even_or_odd_base


# --------------------------------------------------------------------------
# validation


def validate_hopf(H: HopfSuperalgebra, bound: int = 4) -> Verdict:
    """Check the Hopf axioms on every truncated basis element up to ``bound``."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    P = H.P
    for label, f in (("coproduct", H.delta), ("counit", H.eps), ("antipode", H.S)):
        bad = f.respects_relations()
        if bad is not None:
            return Verdict("fail", bound, {"axiom": f"{label} respects relations", "element": bad[0],
                                           "value": str(bad[1])})
    idP = identity_map(P)
    eps_l = tensor_of_maps([H.eps, idP], P, H.T2)
    eps_r = tensor_of_maps([idP, H.eps], P, H.T2)
    m = multiplication(P)
    s_l = m @ tensor_of_maps([H.S, idP], H.T2, H.T2)
    s_r = m @ tensor_of_maps([idP, H.S], H.T2, H.T2)
    checked = 0
    for b in truncated_basis(P, bound):
        d = H.delta(b)
        lhs, rhs = H.delta_left(d), H.delta_right(d)
        if lhs != rhs:
            return Verdict("fail", bound, {"axiom": "coassociativity", "element": str(b),
                                           "lhs": str(lhs), "rhs": str(rhs)})
        for side, f in (("left", eps_l), ("right", eps_r)):
            v = f(d)
            if v != b:
                return Verdict("fail", bound, {"axiom": f"{side} counit", "element": str(b),
                                               "lhs": str(v), "rhs": str(b)})
        e = P.scalar(H.counit(b))
        for side, f in (("left", s_l), ("right", s_r)):
            v = f(d)
            if v != e:
                return Verdict("fail", bound, {"axiom": f"{side} antipode", "element": str(b),
                                               "lhs": str(v), "rhs": str(e)})
        es = H.counit(H.S(b))
        if es != H.counit(b):
            return Verdict("fail", bound, {"axiom": "counit of antipode", "element": str(b)})
        checked += 1
    return Verdict("pass", bound, None, {"checked": checked,
                                         "antipode": {g: str(H.S.images[g]) for g in P.gen_names
                                                      if P.even_or_odd_base(g)}})


# --------------------------------------------------------------------------
# the associated even Hopf algebra


def associated_hopf_algebra(H: HopfSuperalgebra) -> tuple[HopfSuperalgebra, AlgebraMap]:
    """``C = H / (H_1)`` with the quotient map ``q``."""

    def build():
        P = H.P
        C = drop_odd(P, name=(H.name + "_ev") if H.name else "")
        q = AlgebraMap(P, C, {g: (C.gen(g) if P.index[g][0] == "e" else C.zero)
                               for g in P.gen_names if P.even_or_odd_base(g)})
        qq = tensor_of_maps([q, q], tensor_power(C, 2), H.T2)
        cop = {g.name: qq(H.delta.images[g.name]) for g in C.base_even}
        cou = {g.name: H.eps.images[g.name].constant() for g in C.base_even}
        anti = {g.name: q(H.S.images[g.name]) for g in C.base_even}
        HC = HopfSuperalgebra(C, cop, cou, anti, name=C.name)
        return HC, q

    return H.cached("assoc", build)


# --------------------------------------------------------------------------
# cotangent space at the counit


@dataclass
class CotangentData:
    """``H^+ / (H^+)^2`` split by parity, with the coadjoint coaction on its odd part.

    ``even_basis`` and ``odd_basis`` are generator names whose classes form a
    basis.  ``coaction[i]`` is ``{j: c_ji}`` with ``w_i -> sum_j w_j (x) c_ji``,
    ``c_ji`` in the associated even Hopf algebra ``C``.
    """

    even_basis: list[str]
    odd_basis: list[str]
    coaction: dict
    C: HopfSuperalgebra
    _even_ech: Echelon
    _odd_ech: Echelon
    _H: HopfSuperalgebra

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.even_basis), len(self.odd_basis)

    def differential(self, x: SuperElement) -> dict:
        """Linear part of ``x - eps(x)`` as a vector over generator names."""
        return _differential(self._H, x)

    def coords(self, x: SuperElement, parity: int) -> dict:
        """Coordinates of the class of ``x`` in the chosen basis (index -> coeff)."""
        d = {k: v for k, v in self.differential(x).items() if self._H.P.index[k][0] == ("o" if parity else "e")}
        ech = self._odd_ech if parity else self._even_ech
        res, combo = ech.reduce(d)
        if res:
            raise HopfError("element does not reduce in the cotangent space")
        return {i: -c for i, c in combo.items() if c}

    def odd_class(self, x: SuperElement) -> dict:
        return self.coords(x, 1)


def _eps_gen_values(H):
    return {g: H.eps.images[g].constant() for g in H.P.gen_names}


def _differential_mono(H, m, epsv) -> dict:
    P = H.P
    if len(m[1]) >= 2:
        return {}
    evals = [epsv[g.name] for g in P.even]
    if len(m[1]) == 1:
        c = P.field.one
        for e, v in zip(m[0], evals):
            if e:
                c = c * v ** e
        return {P.odd[m[1][0]].name: c} if c else {}
    out = {}
    for i, e in enumerate(m[0]):
        if not e:
            continue
        c = P.field(e) * evals[i] ** (e - 1)
        for j, (e2, v) in enumerate(zip(m[0], evals)):
            if j != i and e2:
                c = c * v ** e2
        if c:
            out[P.even[i].name] = c
    return out


def _differential(H, x) -> dict:
    epsv = H.cached("epsv", lambda: _eps_gen_values(H))
    out: dict = {}
    for m, c in x.terms.items():
        for k, v in _differential_mono(H, m, epsv).items():
            y = out.get(k, 0) + c * v
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def cotangent_data(H: HopfSuperalgebra) -> CotangentData:
    def build():
        P = H.P
        epsv = H.cached("epsv", lambda: _eps_gen_values(H))
        rels = [_differential_poly(H, f, epsv) for _, _, f, _ in P.gb]
        out = {}
        for parity, gens in ((0, [g.name for g in P.even]), (1, [g.name for g in P.odd])):
            ech = Echelon()
            for r in rels:
                rr = {k: v for k, v in r.items() if (P.index[k][0] == "o") == bool(parity)}
                if rr:
                    ech.add(rr)
            basis = []
            # prefer base generators over adjoined inverses
            order = sorted(gens, key=lambda g: P.even[P.index[g][1]].inverse_of is not None
                           if P.index[g][0] == "e" else False)
            for g in order:
                if ech.add({g: P.field.one}, tag=len(basis)) is None:
                    basis.append(g)
            out[parity] = (basis, ech)
        C, q = associated_hopf_algebra(H)
        cd = CotangentData(out[0][0], out[1][0], {}, C, out[0][1], out[1][1], H)
        cd.coaction = _coadjoint(H, cd, q)
        return cd

    return H.cached("cotangent", build)


def _differential_poly(H, f: dict, epsv) -> dict:
    out: dict = {}
    for m, c in f.items():
        for k, v in _differential_mono(H, m, epsv).items():
            y = out.get(k, 0) + c * v
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def _coadjoint(H, cd: CotangentData, q: AlgebraMap) -> dict:
    """``w -> class(c_2) (x) q(S(c_1) c_3)`` on odd generator lifts."""
    P = H.P
    T3 = H.T3
    C = cd.C.P
    coaction = {}
    for i, g in enumerate(cd.odd_basis):
        d3 = H.double_coproduct(P.gen(g))
        row: dict = {}
        for c, (m1, m2, m3) in T3.split_terms(d3):
            if m1[1] or m3[1] or len(m2[1]) != 1:
                continue
            coeff = q(H.S(P.monomial(m1)) * P.monomial(m3))
            if not coeff:
                continue
            for j, v in cd.coords(P.monomial(m2), 1).items():
                row[j] = row.get(j, C.zero) + coeff * (c * v)
        coaction[i] = {j: v for j, v in row.items() if v}
    return coaction


# --------------------------------------------------------------------------
# Lie superalgebra of primitive elements


@dataclass
class LieData:
    """Basis dual to the cotangent basis; brackets as coordinate dicts.

    Basis labels are ``name*`` for the dual of the class of generator ``name``.
    ``odd_bracket[(i, j)]`` gives ``[v_i, v_j]`` in even coordinates.
    """

    even: list[str]
    odd: list[str]
    bracket: dict            # (label, label) -> {label: coeff}
    odd_bracket: dict        # (i, j) -> {k: coeff} over the even basis
    checks: dict

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.even), len(self.odd)


def lie_superalgebra(H: HopfSuperalgebra) -> LieData:
    def build():
        cd = cotangent_data(H)
        P = H.P
        T2 = H.T2
        labels = [(g, 0) for g in cd.even_basis] + [(g, 1) for g in cd.odd_basis]
        n = len(labels)

        def pair(p, x: SuperElement):
            # value of the dual basis functional p on x
            g, par = labels[p]
            if x.parity != par:
                return P.field.zero
            return cd.coords(x, par).get(
                (cd.odd_basis if par else cd.even_basis).index(g), P.field.zero)

        # values on each lift: coproducts split once
        lifts = [P.gen(g) for g, _ in labels]
        split = [list(T2.split_terms(H.delta(x))) for x in lifts]

        def br(a, b):
            pa, pb = labels[a][1], labels[b][1]
            out = {}
            for k, terms in enumerate(split):
                v = P.field.zero
                for c, (m0, m1) in terms:
                    x0, x1 = P.monomial(m0), P.monomial(m1)
                    s0 = -1 if (pb and x0.parity == 1) else 1
                    s1 = -1 if (pa and x0.parity == 1) else 1
                    v = v + c * (s0 * pair(a, x0) * pair(b, x1)
                                 - (-1) ** (pa * pb) * s1 * pair(b, x0) * pair(a, x1))
                if v:
                    out[k] = v
            return out

        table = {(a, b): br(a, b) for a in range(n) for b in range(n)}
        name = [g + "*" for g, _ in labels]
        bracket = {(name[a], name[b]): {name[k]: v for k, v in val.items()}
                   for (a, b), val in table.items() if val}
        ne = len(cd.even_basis)
        odd_bracket = {}
        for i in range(len(cd.odd_basis)):
            for j in range(len(cd.odd_basis)):
                val = table[(ne + i, ne + j)]
                if val:
                    odd_bracket[(i, j)] = val
        checks = _lie_checks(table, labels, P.field)
        return LieData(name[:ne], name[ne:], bracket, odd_bracket, checks)

    return H.cached("lie", build)


def _lie_checks(table, labels, fld) -> dict:
    n = len(labels)
    par = [p for _, p in labels]
    symmetric = all(
        {k: -((-1) ** (par[a] * par[b])) * v for k, v in table[(b, a)].items()} == table[(a, b)]
        for a in range(n) for b in range(n))
    parity_ok = all(all(par[k] == (par[a] + par[b]) % 2 for k in val) for (a, b), val in table.items())

    def apply(a, vec):
        out = {}
        for k, c in vec.items():
            for t, v in table[(a, k)].items():
                out[t] = out.get(t, 0) + c * v
        return {t: v for t, v in out.items() if v}

    def bvec(vec, b):
        out = {}
        for k, c in vec.items():
            for t, v in table[(k, b)].items():
                out[t] = out.get(t, 0) + c * v
        return {t: v for t, v in out.items() if v}

    jacobi = True
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = apply(a, table[(b, c)])
                r1 = bvec(table[(a, b)], c)
                r2 = apply(b, table[(a, c)])
                s = (-1) ** (par[a] * par[b])
                rhs = dict(r1)
                for t, v in r2.items():
                    rhs[t] = rhs.get(t, 0) + s * v
                rhs = {t: v for t, v in rhs.items() if v}
                if lhs != rhs:
                    jacobi = False
    odd_self = all(not apply(v, table[(v, v)]) for v in range(n) if par[v] == 1)
    return {"symmetric": symmetric, "parity": parity_ok, "jacobi": jacobi, "odd_self": odd_self}


def is_graded(H: HopfSuperalgebra) -> Verdict:
    """Graded iff the odd-odd bracket vanishes; the witness is a non-zero pair."""
    L = lie_superalgebra(H)
    for (i, j), val in sorted(L.odd_bracket.items()):
        shown = {L.even[k]: str(v) for k, v in val.items()}
        return Verdict("fail", None, {"pair": (L.odd[i], L.odd[j]), "bracket": shown})
    return Verdict("pass")


# --------------------------------------------------------------------------
# gr as a smash coproduct, and the decomposition C (x) wedge(W)


def exterior_on(cd: CotangentData) -> SuperPresentation:
    """``wedge(W)`` with generators named after the odd basis lifts."""
    H = cd._H
    return H.cached("wedge", lambda: SuperPresentation((), [(g, H.P.odd[H.P.index[g][1]].weight)
                                                            for g in cd.odd_basis],
                                                       field=H.field, name="wedge"))


def gr_hopf_smash(H: HopfSuperalgebra) -> HopfSuperalgebra:
    """``C (x) wedge(W)`` with coproduct twisted by the coadjoint coaction."""

    def build():
        cd = cotangent_data(H)
        C = cd.C
        P = H.P
        odd = [(g, P.odd[P.index[g][1]].weight) for g in cd.odd_basis]
        G = SuperPresentation(list(C.P.even), odd, [], field=H.field,
                              name=f"gr {H.name}" if H.name else "gr")
        G = SuperPresentation(list(C.P.even), odd, [G.transport_terms(SuperElement(C.P, r, True))
                                                    for r in C.P.user_relations],
                              field=H.field, name=G.name)
        T2 = tensor_power(G, 2)
        cop, cou, anti = {}, {}, {}
        for g in C.P.base_even:
            cop[g.name] = T2.element(T2.transport_terms(C.delta.images[g.name]))
            cou[g.name] = C.eps.images[g.name].constant()
            anti[g.name] = G.element(G.transport_terms(C.S.images[g.name]))
        for i, w in enumerate(cd.odd_basis):
            d = T2.pure(G.one, G.gen(w))
            s = G.zero
            for j, c in cd.coaction[i].items():
                cj = G.element(G.transport_terms(c))
                wj = G.gen(cd.odd_basis[j])
                d = d + T2.pure(wj, cj)
                s = s - wj * G.element(G.transport_terms(C.S(c)))
            cop[w] = d
            anti[w] = s
        return HopfSuperalgebra(G, cop, cou, anti, name=G.name)

    return H.cached("gr", build)


def _pi_one(H: HopfSuperalgebra, cd: CotangentData, L: SuperPresentation) -> AlgebraMap:
    P = H.P
    images = {}
    for g in P.gen_names:
        if not P.even_or_odd_base(g):
            continue
        if P.index[g][0] == "e":
            images[g] = L.scalar(H.counit(P.gen(g)))
        else:
            v = L.zero
            for j, c in cd.coords(P.gen(g), 1).items():
                v = v + L.gen(cd.odd_basis[j]) * c
            images[g] = v
    return AlgebraMap(P, L, images)


def canonical_psi(H: HopfSuperalgebra, side: str = "left") -> AlgebraMap:
    """``(q (x) pi_1) Delta`` (left) or ``(pi_1 (x) q) Delta`` (right).

    ``pi_1`` sends even generators to their counit and odd ones to their
    class in ``W``.  This is an isomorphism when ``H`` is graded.
    """

    def build():
        cd = cotangent_data(H)
        C, q = associated_hopf_algebra(H)
        L = exterior_on(cd)
        pi1 = _pi_one(H, cd, L)
        bad = pi1.respects_relations()
        if bad is not None:
            raise HopfError(f"projection to wedge(W) does not respect relation {bad[0]}")
        if side == "left":
            T = tensor(C.P, L)
            f = tensor_of_maps([q, pi1], T, H.T2)
        else:
            T = tensor(L, C.P)
            f = tensor_of_maps([pi1, q], T, H.T2)
        return f @ H.delta

    return H.cached(("psi", side), build)


def verify_decomposition_psi(H: HopfSuperalgebra, psi: AlgebraMap, bound: int = 4,
                             window: int | None = None) -> Verdict:
    """Check that ``psi: H -> C (x) wedge(W)`` is a left C-colinear, counital algebra isomorphism.

    Injectivity is checked on the layer ``<= bound`` and surjectivity onto the
    target layer ``<= window`` (default ``bound // 2``).
    """
    cd = cotangent_data(H)
    C, q = associated_hopf_algebra(H)
    L = exterior_on(cd)
    P = H.P
    T = psi.target
    if not isinstance(T, TensorPresentation) or T.factors[0] is not C.P:
        raise ValueError("psi must land in C (x) wedge(W)")
    if window is None:
        window = bound // 2
    results = {}

    bad = psi.respects_relations()
    results["algebra map"] = bad is None
    if bad is not None:
        return Verdict("fail", bound, {"check": "algebra map", "relation": bad[0]}, results)

    basis = truncated_basis(P, bound)
    ech = Echelon()
    for i, b in enumerate(basis):
        if ech.add(psi(b).terms, tag=i) is not None:
            results["injective"] = False
            return Verdict("fail", bound, {"check": "injective", "element": str(b)}, results)
    results["injective"] = True
    for m in T.layer_monomials(window):
        if not ech.contains({m: P.field.one}):
            results["surjective"] = False
            return Verdict("fail", bound, {"check": "surjective", "element": T.fmt_mono(m)}, results)
    results["surjective"] = True

    # left C-colinearity
    idC = identity_map(C.P)
    idL = identity_map(L)
    lam_src = tensor_of_maps([q, identity_map(P)], tensor(C.P, P), H.T2) @ H.delta
    T3 = tensor(C.P, C.P, L)
    lhs_map = tensor_of_maps([idC, psi], T3)
    rhs_map = tensor_of_maps([C.delta, idL], T3, T)
    for b in basis:
        if lhs_map(lam_src(b)) != rhs_map(psi(b)):
            results["colinear"] = False
            return Verdict("fail", bound, {"check": "colinear", "element": str(b)}, results)
    results["colinear"] = True

    epsL = AlgebraMap(L, H.K, {g: H.K.zero for g in L.gen_names})
    eps_t = tensor_of_maps([C.eps, epsL], H.K, T)
    proj = tensor_of_maps([C.eps, idL], L, T)
    for g in P.gen_names:
        x = P.gen(g)
        if eps_t(psi(x)).constant() != H.counit(x):
            results["counit"] = False
            return Verdict("fail", bound, {"check": "counit", "element": g}, results)
        low = {m: c for m, c in proj(psi(x)).terms.items() if len(m[1]) <= 1}
        want = {}
        if H.counit(x):
            want[L.one_mono] = H.counit(x)
        if P.index[g][0] == "o":
            for j, c in cd.coords(x, 1).items():
                want[((), (j,))] = c
        if low != want:
            results["projection"] = False
            return Verdict("fail", bound, {"check": "projection", "element": g}, results)
    results["counit"] = True
    results["projection"] = True

    # the section xi(c) = psi^{-1}(c (x) 1) satisfies q xi = id
    xi = {}
    for g in C.P.base_even:
        target = T.pure(C.P.gen(g.name), L.one)
        sol = solve_membership(target.terms, [psi(b).terms for b in basis])
        if sol is None:
            results["section"] = False
            return Verdict("fail", bound, {"check": "section", "element": g.name}, results)
        pre = P.zero
        for b, c in zip(basis, sol):
            if c:
                pre = pre + b * c
        if q(pre) != C.P.gen(g.name):
            results["section"] = False
            return Verdict("fail", bound, {"check": "section", "element": g.name}, results)
        xi[g.name] = str(pre)
    results["section"] = True
    return Verdict("pass", bound, {"xi": xi}, results)
