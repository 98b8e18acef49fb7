"""Exact Z/2-graded linear algebra over the rationals or a prime field.

Vectors are sparse dicts ``{key: coefficient}`` with hashable keys; zero
coefficients are never stored.  The :class:`Echelon` accumulator is the
workhorse behind kernels, ranks and membership questions everywhere else in
the package.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import gmpy2

__all__ = [
    "Field",
    "QQ",
    "ModP",
    "Echelon",
    "SuperVectorSpace",
    "SuperLinearMap",
    "tensor_with_koszul",
    "kernel_image_coker",
    "solve_membership",
    "nullspace",
    "rank",
    "vec_add",
    "vec_scale",
]


class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        return int(other) % self.p

    def __add__(self, other):
        return ModP(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModP(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, k):
        if k < 0:
            return ModP(1, self.p) / ModP(pow(self.v, -k, self.p), self.p)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        try:
            return self.v == int(other) % self.p
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        # symmetric representative reads better for small negatives
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)

    __str__ = __repr__


class Field:
    """Coefficient field: ``Field()`` is Q, ``Field(p)`` is F_p for an odd prime p."""

    def __init__(self, p: int = 0):
        p = int(p)
        if p:
            if p == 2:
                raise ValueError("characteristic 2 is not supported")
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"{p} is not a prime")
        self.char = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if self.char:
            if isinstance(x, ModP):
                return x
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, (Fraction, type(gmpy2.mpq()))):
                return ModP(int(x.numerator), self.char) / ModP(int(x.denominator), self.char)
            return ModP(int(x), self.char)
        if isinstance(x, ModP):
            raise TypeError("cannot coerce a prime-field element into QQ")
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return f"GF({self.char})" if self.char else "QQ"

    @property
    def spec(self) -> str:
        """Command-line spelling of the field (``q`` or ``p=PRIME``)."""
        return f"p={self.char}" if self.char else "q"

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("q", "Q", "QQ"):
            return cls()
        if text.startswith("p="):
            return cls(int(text[2:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'p=PRIME'")


QQ = Field()


def fmt_scalar(c) -> str:
    return str(c)


def recip(x):
    """Exact ``1/x``; plain ints become rationals rather than floats."""
    return gmpy2.mpq(1, x) if isinstance(x, int) else 1 / x


def vec_add(u: dict, v: dict, c=1) -> dict:
    """Return ``u + c*v`` as a new sparse vector."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def _iadd(out: dict, v: dict, c) -> None:
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            del out[k]


class Echelon:
    """Incremental semi-echelon form with provenance tracking.

    Every stored row carries the combination of inserted vectors (by tag)
    that produced it, so kernels and solution coefficients come for free.
    """

    def __init__(self):
        self._rows: list[tuple[object, dict, dict]] = []  # (pivot, row, combo)
        self._pivot_index: dict = {}

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Reduce ``vec`` against stored rows; return ``(residual, combo)``."""
        v = dict(vec)
        combo = dict(combo) if combo else {}
        heap = [self._pivot_index[k] for k in v if k in self._pivot_index]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            i = heapq.heappop(heap)
            piv, row, rcombo = self._rows[i]
            c = v.get(piv)
            if not c:
                continue
            for k in row:
                j = self._pivot_index.get(k)
                if j is not None and j > i and j not in seen:
                    seen.add(j)
                    heapq.heappush(heap, j)
            _iadd(v, row, -c)
            _iadd(combo, rcombo, -c)
        return v, combo

    def add(self, vec: dict, tag=None):
        """Insert ``vec``; return the kernel combination if it was dependent."""
        combo = {tag: 1} if tag is not None else {}
        v, combo = self.reduce(vec, combo)
        if not v:
            return combo if tag is not None else {}
        piv = min(v, key=_key_order)
        inv = recip(v[piv])
        v = {k: x * inv for k, x in v.items()}
        combo = {k: x * inv for k, x in combo.items()}
        self._pivot_index[piv] = len(self._rows)
        self._rows.append((piv, v, combo))
        return None

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def pivots(self) -> list:
        return [p for p, _, _ in self._rows]


def _key_order(k):
    # deterministic pivot choice across runs; keys are tuples/strings/ints
    return repr(k)


def nullspace(vectors: list[dict]) -> list[dict]:
    """All linear relations ``{i: c_i}`` with ``sum c_i vectors[i] = 0`` (a basis)."""
    ech = Echelon()
    out = []
    for i, v in enumerate(vectors):
        rel = ech.add(v, tag=i)
        if rel is not None:
            out.append({k: c for k, c in rel.items() if c})
    return out


def rank(vectors: list[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve_membership(target: dict, generators: list[dict]):
    """Coefficients ``c`` with ``sum c_i g_i = target``, or ``None`` if outside the span."""
    if not target:
        return []
    ech = Echelon()
    for i, g in enumerate(generators):
        ech.add(g, tag=i)
    res, combo = ech.reduce(target)
    if res:
        return None
    coeffs = [0] * len(generators)
    for i, c in combo.items():
        coeffs[i] = -c
    return coeffs


# --------------------------------------------------------------------------
# graded spaces and maps


@dataclass(frozen=True)
class SuperVectorSpace:
    """Finite-dimensional super vector space with labelled homogeneous basis."""

    labels: tuple
    parities: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise ValueError("one parity per basis label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities are 0 or 1")

    @classmethod
    def from_dims(cls, even: int, odd: int, prefix: str = "e") -> "SuperVectorSpace":
        labels = tuple(f"{prefix}{i}" for i in range(even)) + tuple(
            f"{prefix}'{i}" for i in range(odd)
        )
        return cls(labels, (0,) * even + (1,) * odd)

    @property
    def dim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return len(self.parities) - odd, odd

    def __len__(self):
        return len(self.labels)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def indices(self, parity: int) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p == parity]


@dataclass(frozen=True)
class SuperLinearMap:
    """Homogeneous linear map; ``matrix[(i, j)]`` is the coefficient of codomain
    basis vector ``i`` in the image of domain basis vector ``j``."""

    domain: SuperVectorSpace
    codomain: SuperVectorSpace
    matrix: dict = dc_field(default_factory=dict)
    parity: int = 0

    def __post_init__(self):
        for (i, j), c in self.matrix.items():
            if not (0 <= i < len(self.codomain) and 0 <= j < len(self.domain)):
                raise ValueError(f"matrix entry {(i, j)} out of shape")
            if c and (self.domain.parities[j] + self.parity) % 2 != self.codomain.parities[i]:
                raise ValueError(f"entry {(i, j)} breaks homogeneity of parity {self.parity}")

    def column(self, j: int) -> dict:
        return {i: c for (i, jj), c in self.matrix.items() if jj == j and c}

    def __call__(self, vec: dict) -> dict:
        out: dict = {}
        for (i, j), c in self.matrix.items():
            x = vec.get(j)
            if x:
                y = out.get(i, 0) + c * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SuperLinearMap") -> "SuperLinearMap":
        if other.codomain != self.domain:
            raise ValueError("maps are not composable")
        m: dict = {}
        for (k, j), b in other.matrix.items():
            for (i, kk), a in self.matrix.items():
                if kk == k:
                    m[(i, j)] = m.get((i, j), 0) + a * b
        m = {k: v for k, v in m.items() if v}
        return SuperLinearMap(other.domain, self.codomain, m, (self.parity + other.parity) % 2)

    def is_identity(self) -> bool:
        if self.domain != self.codomain:
            return False
        n = len(self.domain)
        want = {(i, i) for i in range(n)}
        nz = {k for k, v in self.matrix.items() if v}
        return nz == want and all(self.matrix[k] == 1 for k in want)

    @classmethod
    def identity(cls, V: SuperVectorSpace, one=1) -> "SuperLinearMap":
        return cls(V, V, {(i, i): one for i in range(len(V))}, 0)


def tensor_with_koszul(V: SuperVectorSpace, W: SuperVectorSpace, one=1):
    """``V (x) W`` and the symmetry ``c(v (x) w) = (-1)^{|v||w|} w (x) v``.

    Returns ``(VW, WV, c)`` where ``c: VW -> WV``.
    """
    def tensor(A, B):
        labels, pars = [], []
        for a, pa in zip(A.labels, A.parities):
            for b, pb in zip(B.labels, B.parities):
                labels.append((a, b))
                pars.append((pa + pb) % 2)
        return SuperVectorSpace(tuple(labels), tuple(pars))

    VW, WV = tensor(V, W), tensor(W, V)
    nw = len(W)
    nv = len(V)
    m = {}
    for i, pv in enumerate(V.parities):
        for j, pw in enumerate(W.parities):
            m[(j * nv + i, i * nw + j)] = -one if pv and pw else one
    return VW, WV, SuperLinearMap(VW, WV, m, 0)


def kernel_image_coker(f: SuperLinearMap):
    """Homogeneous bases of kernel, image and a cokernel complement of ``f``.

    Kernel vectors live in the domain, image and cokernel vectors in the
    codomain; all are sparse dicts over basis indices.
    """
    kernel, image = [], []
    for par in (0, 1):
        idx = f.domain.indices(par)
        cols = [f.column(j) for j in idx]
        ech = Echelon()
        for j, col in zip(idx, cols):
            rel = ech.add(col, tag=j)
            if rel is not None:
                kernel.append({k: c for k, c in rel.items() if c})
            else:
                image.append(col)
    ech = Echelon()
    for v in image:
        ech.add(v)
    coker = []
    for i in range(len(f.codomain)):
        e = {i: 1}
        if ech.add(e) is None:
            coker.append(e)
    return kernel, image, coker
