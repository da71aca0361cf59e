"""Group rings Z[pi] of free abelian pi = Z^k with a monodromy automorphism,
and the twisted Laurent extension A_alpha[z, z^-1] with a z = z alpha(a).

Group elements are exponent vectors; alpha acts on them through an integer
matrix U with det U = +-1, so alpha^p(t^v) = t^(U^p v).  Twisted Laurent
elements are held in left normal form sum_j z^j a_j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Sequence, Tuple

from .errors import ContextMismatch, DimensionMismatch, SchemaError
from .matrix import Matrix
from .ring_core import ZZ, IntLaurentPoly, RationalR, _parse_int, format_laurent

GroupElement = Tuple[int, ...]

__all__ = [
    "Monodromy",
    "GroupRing",
    "GroupRingElement",
    "TwistedLaurentRing",
    "TwistedLaurentElement",
    "apply_alpha",
    "twisted_mul",
    "twisted_matrix_mul",
    "coefficient_ring",
]


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


def _int_inverse(rows: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    out = tuple(tuple(int(x) for x in r[n:]) for r in m)
    return out


def _mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
                 for i in range(len(a)))


@lru_cache(maxsize=4096)
def _matrix_power(u: Tuple[Tuple[int, ...], ...], p: int) -> Tuple[Tuple[int, ...], ...]:
    n = len(u)
    if p == 0:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if p < 0:
        return _matrix_power(_int_inverse(u), -p)
    half = _matrix_power(u, p // 2)
    sq = _mat_mul(half, half)
    return _mat_mul(sq, u) if p % 2 else sq


@dataclass(frozen=True)
class Monodromy:
    """alpha: Z^k -> Z^k, g -> U g on exponent vectors."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise DimensionMismatch("monodromy matrix must be square")
        if k and abs(_int_det(rows)) != 1:
            raise ValueError(f"monodromy matrix {rows} is not invertible over Z (|det| != 1)")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, k: int) -> "Monodromy":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.matrix)

    def power(self, p: int) -> Tuple[Tuple[int, ...], ...]:
        return _matrix_power(self.matrix, p)

    def act(self, g: GroupElement, p: int = 1) -> GroupElement:
        if p == 0:
            return g
        u = self.power(p)
        return tuple(sum(row[j] * g[j] for j in range(len(g))) for row in u)

    def is_identity(self) -> bool:
        return self.matrix == Monodromy.identity(self.k).matrix


class GroupRingElement:
    """Finite Z-linear combination of elements of Z^k."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: "GroupRing", terms: Mapping[GroupElement, int]):
        self.ring = ring
        clean: Dict[GroupElement, int] = {}
        for g, c in terms.items():
            if c:
                g = tuple(g)
                if len(g) != ring.k:
                    raise DimensionMismatch(f"group element {g} does not have rank {ring.k}")
                clean[g] = clean.get(g, 0) + c
        self.terms = {g: c for g, c in clean.items() if c}
        self._key = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.terms, obj._key = ring, terms, None
        return obj

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            if other.ring != self.ring:
                raise ContextMismatch("group ring elements from different rings")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except ContextMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g, 0) + c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return GroupRingElement._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw(self.ring, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[GroupElement, int] = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                gh = tuple(x + y for x, y in zip(g, h))
                out[gh] = out.get(gh, 0) + c * d
        return GroupRingElement._raw(self.ring, {g: c for g, c in out.items() if c})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GroupRingElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g, c in sorted(self.terms.items()):
            mono = "*".join(
                (f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}") for i, e in enumerate(g) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


@dataclass(frozen=True)
class GroupRing:
    """Z[Z^k] together with the monodromy alpha."""

    k: int
    monodromy: Monodromy = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.monodromy is None:
            object.__setattr__(self, "monodromy", Monodromy.identity(self.k))
        if self.monodromy.k != self.k:
            raise DimensionMismatch(f"monodromy of rank {self.monodromy.k} for group rank {self.k}")

    @property
    def zero(self) -> GroupRingElement:
        return GroupRingElement._raw(self, {})

    @property
    def one(self) -> GroupRingElement:
        return self.constant(1)

    def constant(self, c: int) -> GroupRingElement:
        return GroupRingElement._raw(self, {(0,) * self.k: c} if c else {})

    def monomial(self, g: Sequence[int], c: int = 1) -> GroupRingElement:
        return GroupRingElement(self, {tuple(g): c})

    def t(self, i: int, e: int = 1) -> GroupRingElement:
        """The generator t_{i+1} raised to e."""
        g = [0] * self.k
        g[i] = e
        return self.monomial(g)

    def element(self, terms: Mapping[Sequence[int], int]) -> GroupRingElement:
        return GroupRingElement(self, {tuple(g): c for g, c in terms.items()})

    def coerce(self, x) -> GroupRingElement:
        if isinstance(x, GroupRingElement):
            if x.ring != self:
                raise ContextMismatch("element from a different group ring")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return self.constant(x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def alpha(self, a: GroupRingElement, power: int = 1) -> GroupRingElement:
        if power == 0 or not a.terms or self.monodromy.is_identity():
            return a
        act = self.monodromy.act
        return GroupRingElement._raw(self, {act(g, power): c for g, c in a.terms.items()})

    def element_to_json(self, a: GroupRingElement):
        return [{"g": list(g), "c": str(c)} for g, c in sorted(a.terms.items())]

    def element_from_json(self, data) -> GroupRingElement:
        if isinstance(data, (str, int)):
            return self.constant(_parse_int(data))
        if not isinstance(data, list):
            raise SchemaError(f"expected a list of {{'g', 'c'}} terms, got {data!r}")
        terms: Dict[GroupElement, int] = {}
        for item in data:
            if not isinstance(item, dict) or "g" not in item or "c" not in item:
                raise SchemaError(f"bad group ring term {item!r}")
            g = item["g"]
            if not isinstance(g, list) or len(g) != self.k or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in g):
                raise SchemaError(f"group element {g!r} is not an integer vector of length {self.k}")
            g = tuple(g)
            terms[g] = terms.get(g, 0) + _parse_int(item["c"])
        return GroupRingElement(self, terms)

    def __repr__(self) -> str:
        return f"GroupRing(k={self.k}, alpha={[list(r) for r in self.monodromy.matrix]})"


def coefficient_ring(k: int, alpha: Sequence[Sequence[int]] = ()):
    """ZZ for k = 0, else the group ring Z[Z^k] with monodromy ``alpha``."""
    if k == 0:
        if alpha and any(len(r) for r in alpha):
            raise DimensionMismatch("k = 0 admits only the empty monodromy matrix")
        return ZZ
    return GroupRing(k, Monodromy(tuple(tuple(r) for r in alpha)))


def apply_alpha(a, power: int = 1, ring=None):
    """alpha^power(a); for k = 0 (plain integers) alpha is the identity."""
    if ring is None:
        ring = getattr(a, "ring", ZZ)
    return ring.alpha(a, power)


# ---------------------------------------------------------------------------
# twisted Laurent ring

@dataclass(frozen=True)
class TwistedLaurentRing:
    base: object = ZZ

    @property
    def zero(self) -> "TwistedLaurentElement":
        return TwistedLaurentElement._raw(self, {})

    @property
    def one(self) -> "TwistedLaurentElement":
        return self.lift(self.base.one)

    @property
    def z(self) -> "TwistedLaurentElement":
        return self.lift(self.base.one, 1)

    def lift(self, a, z_power: int = 0) -> "TwistedLaurentElement":
        """The element z^z_power * a."""
        return TwistedLaurentElement(self, {z_power: a})

    def element(self, terms: Mapping[int, object]) -> "TwistedLaurentElement":
        return TwistedLaurentElement(self, terms)

    def coerce(self, x) -> "TwistedLaurentElement":
        if isinstance(x, TwistedLaurentElement):
            if x.ring != self:
                raise ContextMismatch("twisted element from a different ring")
            return x
        return self.lift(self.base.coerce(x) if hasattr(self.base, "coerce") else x)

    def element_to_json(self, p: "TwistedLaurentElement") -> dict:
        base = self.base
        return {
            "k": base.k,
            "alpha": [list(r) for r in base.monodromy.matrix] if base.k else [],
            "terms": [{"z": j, "coeffs": base.element_to_json(a)} for j, a in sorted(p.terms.items())],
        }

    def element_from_json(self, data) -> "TwistedLaurentElement":
        if not isinstance(data, dict) or "terms" not in data:
            raise SchemaError(f"expected a twisted element object, got {data!r}")
        if data.get("k", self.base.k) != self.base.k:
            raise ContextMismatch(f"element has k={data.get('k')} but ring has k={self.base.k}")
        terms: Dict[int, object] = {}
        for t in data["terms"]:
            if not isinstance(t, dict) or "z" not in t or "coeffs" not in t:
                raise SchemaError(f"bad twisted term {t!r}")
            terms[t["z"]] = terms.get(t["z"], self.base.zero) + self.base.element_from_json(t["coeffs"])
        return TwistedLaurentElement(self, terms)


class TwistedLaurentElement:
    """sum_j z^j a_j with a_j in the coefficient ring and a z = z alpha(a)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TwistedLaurentRing, terms: Mapping[int, object]):
        self.ring = ring
        self.terms = {int(j): a for j, a in terms.items() if a}

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.terms = ring, terms
        return obj

    def coefficient(self, j: int):
        return self.terms.get(j, self.ring.base.zero)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, TwistedLaurentElement):
            if other.ring != self.ring:
                raise ContextMismatch("twisted Laurent elements from different rings")
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int) or getattr(other, "ring", None) == self.ring.base:
            return self.ring.lift(self.ring.base.coerce(other) if isinstance(other, int) else other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except ContextMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((j, hash(a)) for j, a in self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for j, a in other.terms.items():
            s = out[j] + a if j in out else a
            if s:
                out[j] = s
            else:
                out.pop(j, None)
        return TwistedLaurentElement._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedLaurentElement._raw(self.ring, {j: -a for j, a in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return twisted_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return twisted_mul(other, self)

    def to_int_laurent(self) -> IntLaurentPoly:
        if self.ring.base != ZZ:
            raise ContextMismatch("only k = 0 twisted elements are integer Laurent polynomials")
        return IntLaurentPoly(self.terms)

    def to_rational(self) -> RationalR:
        return RationalR(self.to_int_laurent())

    def __repr__(self) -> str:
        return f"TwistedLaurentElement({self})"

    def __str__(self) -> str:
        return format_laurent(sorted(self.terms.items()))


def twisted_mul(p: TwistedLaurentElement, q: TwistedLaurentElement) -> TwistedLaurentElement:
    """(z^j a)(z^l b) = z^(j+l) alpha^l(a) b."""
    if p.ring != q.ring:
        raise ContextMismatch("twisted Laurent elements from different rings")
    base = p.ring.base
    out: Dict[int, object] = {}
    for l, b in q.terms.items():
        for j, a in p.terms.items():
            prod = base.alpha(a, l) * b
            s = out.get(j + l)
            out[j + l] = prod if s is None else s + prod
    return TwistedLaurentElement._raw(p.ring, {e: c for e, c in out.items() if c})


def twisted_matrix_mul(m: Matrix, n: Matrix) -> Matrix:
    if not isinstance(m.ring, TwistedLaurentRing) or m.ring != n.ring:
        raise ContextMismatch("twisted_matrix_mul needs two matrices over the same twisted Laurent ring")
    if m.ncols != n.nrows:
        raise DimensionMismatch(f"cannot multiply {m.shape} by {n.shape}")
    return m * n
