"""Comodules, cotensor products and coinvariants over a presented Hopf algebra.

Coaction coefficients are elements of the coacting presentation; linear
algebra is done on their normal-form monomials, which form a basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import HopfError, HopfSuperalgebra, Verdict, identity_map, tensor_of_maps
from .superlinalg import Echelon, nullspace, recip, solve_membership
from .superpoly import AlgebraMap, SuperElement, SuperPresentation, tensor

__all__ = [
    "SuperComodule",
    "FiniteSubcoalgebra",
    "ComoduleAlgebra",
    "CoinvariantData",
    "finite_subcoalgebra",
    "cotensor_product",
    "coinvariants",
    "eta_extension",
    "sigma_retraction",
    "colinear_retraction",
    "regular_comodule_algebra",
]


class SubcoalgebraCapExceeded(RuntimeError):
    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass
class SuperComodule:
    """Finite-dimensional comodule over ``D``.

    Right: ``m_i -> sum_j m_j (x) coeffs[i][j]``.
    Left:  ``m_i -> sum_j coeffs[i][j] (x) m_j``.
    """

    labels: list
    parities: list
    D: HopfSuperalgebra
    coeffs: dict
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        for i, row in self.coeffs.items():
            for j, c in row.items():
                if c and c.parity != (self.parities[i] + self.parities[j]) % 2:
                    raise ValueError(f"coaction coefficient ({i}, {j}) has the wrong parity")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def row(self, i) -> dict:
        return self.coeffs.get(i, {})

    @classmethod
    def trivial(cls, D: HopfSuperalgebra, side="right", label="1"):
        return cls([label], [0], D, {0: {0: D.P.one}}, side)

    def check(self) -> Verdict:
        """Coassociativity and counit law on every basis vector."""
        D = self.D
        T = D.T2
        for i in range(self.dim):
            row = self.row(i)
            if {j: D.counit(c) for j, c in row.items() if D.counit(c)} != {i: D.field.one}:
                return Verdict("fail", None, {"law": "counit", "vector": str(self.labels[i])})
            for k in range(self.dim):
                # coefficient of m_k in the two iterated coactions
                if self.side == "right":
                    lhs = T.zero
                    for j, c in row.items():
                        ck = self.row(j).get(k)
                        if ck:
                            lhs = lhs + T.pure(ck, c)
                else:
                    lhs = T.zero
                    for j, c in row.items():
                        ck = self.row(j).get(k)
                        if ck:
                            lhs = lhs + T.pure(c, ck)
                rhs = D.delta(row[k]) if k in row else T.zero
                if lhs != rhs:
                    return Verdict("fail", None, {"law": "coassociativity", "vector": str(self.labels[i])})
        return Verdict("pass")

    def coefficients(self) -> list[SuperElement]:
        return [c for row in self.coeffs.values() for c in row.values() if c]


# --------------------------------------------------------------------------
# finite subcoalgebras


@dataclass
class FiniteSubcoalgebra:
    D: HopfSuperalgebra
    basis: list[SuperElement]
    _ech: Echelon

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: SuperElement) -> dict | None:
        res, combo = self._ech.reduce(x.terms)
        if res:
            return None
        return {i: -c for i, c in combo.items() if c}

    def contains(self, x: SuperElement) -> bool:
        return self.coords(x) is not None

    def delta_matrix(self) -> dict:
        """``i -> {(j, k): c}`` with ``Delta b_i = sum c b_j (x) b_k``."""
        T = self.D.T2
        P = self.D.P
        out = {}
        for i, b in enumerate(self.basis):
            # first leg in hull coordinates, then the second
            by_right: dict = {}
            for c, (m0, m1) in T.split_terms(self.D.delta(b)):
                by_right.setdefault(m1, {})[m0] = c
            by_left: dict = {}
            for m1, terms in by_right.items():
                co = self.coords(P.element(terms, normal=True))
                if co is None:
                    raise HopfError("subcoalgebra is not closed under the coproduct")
                for j, c in co.items():
                    by_left.setdefault(j, {})[m1] = by_left.setdefault(j, {}).get(m1, 0) + c
            row = {}
            for j, terms in by_left.items():
                terms = {m: c for m, c in terms.items() if c}
                if not terms:
                    continue
                co = self.coords(P.element(terms, normal=True))
                if co is None:
                    raise HopfError("subcoalgebra is not closed under the coproduct")
                for k, c in co.items():
                    row[(j, k)] = c
            out[i] = row
        return out


def _legs(D: HopfSuperalgebra, x: SuperElement) -> list[SuperElement]:
    """``(f (x) id) Delta x`` and ``(id (x) f) Delta x`` for monomial functionals ``f``."""
    T = D.T2
    left: dict = {}
    right: dict = {}
    for c, (m0, m1) in T.split_terms(D.delta(x)):
        left.setdefault(m0, {})[m1] = left.setdefault(m0, {}).get(m1, 0) + c
        right.setdefault(m1, {})[m0] = right.setdefault(m1, {}).get(m0, 0) + c
    out = []
    for group in (left, right):
        for terms in group.values():
            terms = {m: c for m, c in terms.items() if c}
            if terms:
                out.append(D.P.element(terms, normal=True))
    return out


def finite_subcoalgebra(D: HopfSuperalgebra, coefficients, cap: int = 400) -> FiniteSubcoalgebra:
    """Smallest coproduct-closed span containing ``coefficients``."""
    ech = Echelon()
    basis: list[SuperElement] = []
    todo = [D.P(c) for c in coefficients]
    while todo:
        x = todo.pop(0)
        if not x:
            continue
        if ech.add(x.terms, tag=len(basis)) is not None:
            continue
        basis.append(x)
        if len(basis) > cap:
            raise SubcoalgebraCapExceeded(f"subcoalgebra exceeds {cap} dimensions",
                                          FiniteSubcoalgebra(D, basis, ech))
        todo.extend(_legs(D, x))
    return FiniteSubcoalgebra(D, basis, ech)


# --------------------------------------------------------------------------
# cotensor products


def cotensor_product(M: SuperComodule, L: SuperComodule) -> list[dict]:
    """Basis of ``M []_D L`` as vectors ``{(i, a): coeff}`` in ``M (x) L``.

    The kernel of ``rho (x) id - id (x) lambda`` is computed separately in each
    parity, so the basis vectors are homogeneous.
    """
    if M.side != "right" or L.side != "left":
        raise ValueError("cotensor product needs a right comodule and a left comodule")
    out = []
    for parity in (0, 1):
        keys = [(i, a) for i in range(M.dim) for a in range(L.dim)
                if (M.parities[i] + L.parities[a]) % 2 == parity]
        cols = []
        for i, a in keys:
            vec: dict = {}
            for j, c in M.row(i).items():
                for m, v in c.terms.items():
                    k = (j, m, a)
                    vec[k] = vec.get(k, 0) + v
            for b, c in L.row(a).items():
                for m, v in c.terms.items():
                    k = (i, m, b)
                    vec[k] = vec.get(k, 0) - v
            cols.append({k: v for k, v in vec.items() if v})
        for rel in nullspace(cols):
            out.append({keys[n]: c for n, c in rel.items()})
    return out


# --------------------------------------------------------------------------
# comodule algebras and coinvariants


class ComoduleAlgebra:
    """Presentation ``A`` with a right ``D``-coaction ``rho: A -> A (x) D`` given on generators."""

    def __init__(self, A: SuperPresentation, D: HopfSuperalgebra, images: dict, name: str = ""):
        self.A = A
        self.D = D
        self.name = name or A.name
        self.T = tensor(A, D.P)
        self.rho = AlgebraMap(A, self.T, images)
        self._coinv: dict = {}

    def check(self, bound: int = 2) -> Verdict:
        """Relations respected and coaction axioms on the truncated basis."""
        bad = self.rho.respects_relations()
        if bad is not None:
            return Verdict("fail", bound, {"law": "multiplicative", "relation": bad[0], "value": str(bad[1])})
        A, D = self.A, self.D
        T3 = tensor(A, D.P, D.P)
        left = tensor_of_maps([self.rho, identity_map(D.P)], T3, self.T)
        right = tensor_of_maps([identity_map(A), D.delta], T3, self.T)
        cou = tensor_of_maps([identity_map(A), D.eps], A, self.T)
        for m in A.layer_monomials(bound):
            x = A.monomial(m)
            r = self.rho(x)
            if left(r) != right(r):
                return Verdict("fail", bound, {"law": "coassociativity", "element": str(x)})
            if cou(r) != x:
                return Verdict("fail", bound, {"law": "counit", "element": str(x)})
        return Verdict("pass", bound)

    def layer(self, n: int) -> list[SuperElement]:
        return [self.A.monomial(m) for m in self.A.layer_monomials(n)]

    def coinvariant_layer(self, n: int) -> list[SuperElement]:
        """Basis of ``{a : rho(a) = a (x) 1}`` inside the layer ``<= n``."""
        if n in self._coinv:
            return self._coinv[n]
        A = self.A
        monos = A.layer_monomials(n)
        out = []
        for parity in (0, 1):
            sub = [m for m in monos if len(m[1]) % 2 == parity]
            cols = []
            for m in sub:
                x = A.monomial(m)
                v = dict(self.rho(x).terms)
                one = self.T.pure(x, self.D.P.one)
                for k, c in one.terms.items():
                    y = v.get(k, 0) - c
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
                cols.append(v)
            for rel in nullspace(cols):
                out.append(A.element({sub[i]: c for i, c in rel.items()}, normal=True))
        out = _reduced_basis(A, out)
        self._coinv[n] = out
        return out


def _reduced_basis(P: SuperPresentation, elems: list[SuperElement]) -> list[SuperElement]:
    """Deterministic reduced echelon basis of a span, sorted by leading monomial."""
    rows = [dict(e.terms) for e in elems if e]
    # full reduction with pivots at the leading monomial
    basis: list[tuple] = []
    for r in rows:
        for lead, row in basis:
            c = r.get(lead)
            if c:
                for k, v in row.items():
                    y = r.get(k, 0) - c * v
                    if y:
                        r[k] = y
                    else:
                        r.pop(k, None)
        if not r:
            continue
        lead = max(r, key=P.okey)
        inv = recip(r[lead])
        r = {k: v * inv for k, v in r.items()}
        for i, (l2, row) in enumerate(basis):
            c = row.get(lead)
            if c:
                new = dict(row)
                for k, v in r.items():
                    y = new.get(k, 0) - c * v
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                basis[i] = (l2, new)
        basis.append((lead, r))
    basis.sort(key=lambda t: P.okey(t[0]))
    return [P.element(r, normal=True) for _, r in basis]


@dataclass
class CoinvariantData:
    bound: int
    layers: dict            # n -> basis of the coinvariants in layer <= n
    generators: list        # greedy multiplicative generators (within bound)
    generated: bool         # every found coinvariant lies in the subalgebra the generators span

    def dims(self) -> dict:
        return {n: len(b) for n, b in self.layers.items()}


def subalgebra_span(P: SuperPresentation, gens: list[SuperElement], bound: int) -> Echelon:
    """Span of products of ``gens`` with total generator weight ``<= bound``."""
    ech = Echelon()
    ech.add(P.one.terms)
    ws = [max(g.weight(), 1) for g in gens]
    frontier = [(P.one, 0, 0)]
    while frontier:
        new = []
        for x, w, start in frontier:
            for i in range(start, len(gens)):
                if w + ws[i] > bound:
                    continue
                y = x * gens[i]
                if not y:
                    continue
                ech.add(y.terms)
                new.append((y, w + ws[i], i if gens[i].parity == 0 else i + 1))
        frontier = new
    return ech


def coinvariants(CA: ComoduleAlgebra, bound: int) -> CoinvariantData:
    layers = {n: CA.coinvariant_layer(n) for n in range(bound + 1)}
    P = CA.A
    gens: list[SuperElement] = []
    span = subalgebra_span(P, gens, bound)
    for x in layers[bound]:
        if x.is_scalar():
            continue
        if not span.contains(x.terms):
            gens.append(x)
            span = subalgebra_span(P, gens, bound)
    generated = all(span.contains(x.terms) for x in layers[bound])
    return CoinvariantData(bound, layers, gens, generated)


def regular_comodule_algebra(D: HopfSuperalgebra) -> ComoduleAlgebra:
    """``D`` coacting on itself by the coproduct."""
    return ComoduleAlgebra(D.P, D, {g: D.delta.images[g] for g in D.P.gen_names if D.P.even_or_odd_base(g)},
                           name=D.name)


# --------------------------------------------------------------------------
# eta, sigma and colinear retractions


def eta_extension(CA: ComoduleAlgebra, hull: FiniteSubcoalgebra, bound: int):
    """A colinear ``eta: hull -> A`` with ``eta(1) = 1``, or ``None`` if none exists in the layer."""
    A, D = CA.A, CA.D
    if not hull.contains(D.P.one):
        hull = finite_subcoalgebra(D, [D.P.one] + hull.basis)
    dm = hull.delta_matrix()
    one = hull.coords(D.P.one)
    monos = A.layer_monomials(bound)
    T = CA.T
    cols, keys = [], []
    for j, bj in enumerate(hull.basis):
        pj = bj.parity
        for m in monos:
            if len(m[1]) % 2 != pj:
                continue
            x = A.monomial(m)
            vec: dict = {}
            for k2, c in CA.rho(x).terms.items():
                vec[(j, k2)] = vec.get((j, k2), 0) + c
            for i, row in dm.items():
                for (jj, k), c in row.items():
                    if jj != j:
                        continue
                    for k2, v in T.pure(x, hull.basis[k]).terms.items():
                        vec[(i, k2)] = vec.get((i, k2), 0) - c * v
            if j in one:
                vec[("one", m)] = one[j]
            cols.append({k: v for k, v in vec.items() if v})
            keys.append((j, m))
    target = {("one", A.one_mono): D.field.one}
    sol = solve_membership(target, cols)
    if sol is None:
        return None
    images = [A.zero for _ in hull.basis]
    for (j, m), c in zip(keys, sol or []):
        if c:
            images[j] = images[j] + A.monomial(m) * c
    return Eta(hull, images, CA)


@dataclass
class Eta:
    hull: FiniteSubcoalgebra
    images: list
    CA: ComoduleAlgebra

    def __call__(self, d: SuperElement) -> SuperElement:
        co = self.hull.coords(d)
        if co is None:
            raise ValueError(f"{d} is outside the subcoalgebra where eta is defined")
        out = self.CA.A.zero
        for i, c in co.items():
            out = out + self.images[i] * c
        return out


def hull_weight(hull: FiniteSubcoalgebra) -> int:
    return max((b.weight() for b in hull.basis), default=0)


def sigma_retraction(CA: ComoduleAlgebra, bound: int, eta_bound: int | None = None):
    """``sigma(m (x) d) = m_0 eta(S(m_1) d)`` on the layer ``<= bound`` of ``A``.

    Returns ``(sigma, report)`` where ``sigma`` maps elements of ``A (x) D`` to ``A``
    and ``report`` records the retraction check ``sigma rho = id`` on the layer.
    ``sigma`` is ``None`` when no ``eta`` is found (Unknown).
    """
    A, D = CA.A, CA.D
    layer = CA.layer(bound)
    T = CA.T
    needed = []
    for x in layer:
        for c, (m0, m1) in T.split_terms(CA.rho(x)):
            needed.append(D.S(D.P.monomial(m1)))
    # the products S(m_1) d for d ranging over coefficients of rho on the layer
    coeffs = {m1 for x in layer for _, (m0, m1) in T.split_terms(CA.rho(x))}
    extra = [D.S(D.P.monomial(a)) * D.P.monomial(b) for a in coeffs for b in coeffs]
    hull = finite_subcoalgebra(D, [D.P.one] + needed + extra)
    if eta_bound is None:
        # eta of a hull element may need monomials up to its own weight
        eta_bound = max(bound, min(hull_weight(hull), 2 * bound))
    eta = eta_extension(CA, hull, eta_bound)
    if eta is None:
        return None, Verdict("Unknown", bound, None, {"reason": "no eta in layer"})

    def sigma(u: SuperElement) -> SuperElement:
        out = A.zero
        for c, (m, dm) in T.split_terms(u):
            mm = A.monomial(m)
            for c2, (n0, n1) in T.split_terms(CA.rho(mm)):
                arg = D.S(D.P.monomial(n1)) * D.P.monomial(dm)
                out = out + A.monomial(n0) * eta(arg) * (c * c2)
        return out

    for x in layer:
        if sigma(CA.rho(x)) != x:
            return sigma, Verdict("fail", bound, {"element": str(x)})
    return sigma, Verdict("pass", bound, None, {"checked": len(layer), "hull": hull.dim})


def subcomodule_coaction(V: SuperComodule, U: list[dict]) -> dict | None:
    """Coaction of the span of ``U`` (vectors over V's indices) in U-coordinates."""
    ech = Echelon()
    for k, u in enumerate(U):
        ech.add(u, tag=k)
    out = {}
    D = V.D
    for k, u in enumerate(U):
        # rho(u) = sum_j u_i c_ji  v_j  (x) ...; group by D-monomial
        bymono: dict = {}
        for i, a in u.items():
            for j, c in V.row(i).items():
                for m, v in c.terms.items():
                    bymono.setdefault(m, {})
                    bymono[m][j] = bymono[m].get(j, 0) + a * v
        row: dict = {}
        for m, vec in bymono.items():
            vec = {j: v for j, v in vec.items() if v}
            if not vec:
                continue
            res, combo = ech.reduce(vec)
            if res:
                return None
            for kk, c in combo.items():
                if c:
                    row.setdefault(kk, {})[m] = -c
        out[k] = {kk: D.P.element(t, normal=True) for kk, t in row.items()}
    return out


def colinear_retraction(V: SuperComodule, U: list[dict]):
    """Colinear ``s: V -> U`` with ``s|_U = id``.

    ``U`` is a list of vectors over V's basis indices spanning a subcomodule.
    Returns ``(matrix, Verdict)`` where ``matrix[v] = {k: coeff}`` gives ``s(v_v)``
    in U's basis.  The system is exact, so a missing solution is conclusive.
    """
    if V.side != "right":
        raise ValueError("right comodules only")
    rhoU = subcomodule_coaction(V, U)
    if rhoU is None:
        return None, Verdict("fail", None, {"reason": "U is not a subcomodule"})
    par_u = []
    for u in U:
        ps = {V.parities[i] for i in u}
        par_u.append(ps.pop() if len(ps) == 1 else 0)
    keys = [(k, v) for k in range(len(U)) for v in range(V.dim) if par_u[k] == V.parities[v]]
    cols = []
    for k, v in keys:
        vec: dict = {}
        # rho_U(s(v)) contributes u' (x) e_{u'k}
        for k2, e in rhoU[k].items():
            for m, c in e.terms.items():
                vec[("co", v, k2, m)] = vec.get(("co", v, k2, m), 0) + c
        # (s (x) id) rho_V(w) for all w with v among the terms of rho_V(w)
        for w in range(V.dim):
            c = V.row(w).get(v)
            if c:
                for m, cc in c.terms.items():
                    vec[("co", w, k, m)] = vec.get(("co", w, k, m), 0) - cc
        for n, u in enumerate(U):
            if v in u:
                vec[("id", n, k)] = vec.get(("id", n, k), 0) + u[v]
        cols.append({a: b for a, b in vec.items() if b})
    target = {("id", n, n): V.D.field.one for n in range(len(U))}
    sol = solve_membership(target, cols)
    if sol is None:
        return None, Verdict("Disproven", None, {"reason": "no colinear retraction"})
    s = {v: {} for v in range(V.dim)}
    for (k, v), c in zip(keys, sol or [0] * len(keys)):
        if c:
            s[v][k] = c
    return s, Verdict("Proven", None, {"retraction": s})


__all__ += ["Eta", "subalgebra_span", "subcomodule_coaction", "SubcoalgebraCapExceeded"]
