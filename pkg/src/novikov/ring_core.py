"""Exact arithmetic in Z[z, z^-1], in R = (1 + zZ[z])^-1 Z[z, z^-1], and in
truncated Novikov series A_alpha((z)).

``RationalR`` elements are kept in a canonical reduced form: the numerator is an
integer Laurent polynomial and the denominator an integer polynomial with
constant term 1.  Every such element therefore has an integer power series
expansion, which is what ties R to the Novikov ring Z((z)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence

from . import _poly as P
from .errors import (
    DivisionByZero,
    DivisionNotInR,
    NotInR,
    SchemaError,
    ZeroDivisor,
    ZeroElement,
)

__all__ = [
    "IntegerRing",
    "ZZ",
    "IntLaurentPoly",
    "RationalR",
    "LocalizedRing",
    "RR",
    "ValuationData",
    "TruncatedSeries",
    "SeriesRing",
    "rational_arith",
    "valuation_and_lowest",
    "expand_series",
    "is_unit",
    "divides",
    "novikov_predicates",
    "series_quotient_integral_through",
    "format_laurent",
]


# ---------------------------------------------------------------------------
# ring contexts

@dataclass(frozen=True)
class IntegerRing:
    """The integers as a coefficient ring with trivial monodromy (k = 0)."""

    k: int = 0

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def alpha(self, a: int, power: int = 1) -> int:
        return a

    def coerce(self, x) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"expected an integer, got {x!r}")
        return x

    def element_to_json(self, a: int) -> str:
        return str(a)

    def element_from_json(self, data) -> int:
        if isinstance(data, list):
            # group-ring style term list with the empty group element
            total = 0
            for item in data:
                if not isinstance(item, dict) or item.get("g", []) != [] or "c" not in item:
                    raise SchemaError(f"bad integer term {item!r}")
                total += _parse_int(item["c"])
            return total
        return _parse_int(data)

    def __repr__(self) -> str:
        return "ZZ"


ZZ = IntegerRing()


def format_laurent(items: Iterable[tuple], var: str = "z", fmt=str) -> str:
    """Human-readable sum of ``coeff * var^exp`` terms."""
    parts: List[str] = []
    for exp, c in items:
        if not c:
            continue
        cs = fmt(c)
        if exp == 0:
            mono = cs
        else:
            power = var if exp == 1 else f"{var}^{exp}"
            if cs == "1":
                mono = power
            elif cs == "-1":
                mono = "-" + power
            elif " " in cs or "+" in cs[1:] or "-" in cs[1:]:
                mono = f"({cs})*{power}"
            else:
                mono = f"{cs}*{power}"
        parts.append(mono)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# integer Laurent polynomials

class IntLaurentPoly:
    """An integer Laurent polynomial sum_j c_j z^j with finite support.

    Stored as ``low`` (the lowest exponent) and a dense coefficient tuple whose
    first and last entries are nonzero.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coefficients: Optional[Mapping[int, int]] = None):
        coefficients = coefficients or {}
        support = [e for e, c in coefficients.items() if c]
        if not support:
            self.low, self.coeffs = 0, P.ZERO
            return
        lo, hi = min(support), max(support)
        self.low = lo
        self.coeffs = tuple(int(coefficients.get(e, 0)) for e in range(lo, hi + 1))

    @classmethod
    def from_poly(cls, coeffs: Sequence[int], low: int = 0) -> "IntLaurentPoly":
        obj = cls.__new__(cls)
        coeffs = P.trim(coeffs)
        if not coeffs:
            obj.low, obj.coeffs = 0, P.ZERO
            return obj
        k = P.order(coeffs)
        obj.low, obj.coeffs = low + k, coeffs[k:]
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "IntLaurentPoly":
        return cls.from_poly((coeff,), exp)

    @property
    def coefficients(self) -> Dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ZeroElement("zero polynomial has no valuation")
        return self.low

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroElement("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    def terms(self):
        return [(self.low + i, c) for i, c in enumerate(self.coeffs) if c]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntLaurentPoly.monomial(0, other)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def _coerce(self, other) -> "IntLaurentPoly":
        if isinstance(other, IntLaurentPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntLaurentPoly.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        a = (0,) * (self.low - lo) + self.coeffs
        b = (0,) * (other.low - lo) + other.coeffs
        return IntLaurentPoly.from_poly(P.add(a, b), lo)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly.from_poly(P.neg(self.coeffs), self.low)

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
        return IntLaurentPoly.from_poly(P.mul(self.coeffs, other.coeffs), self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return IntLaurentPoly.monomial(-self.low * (-n), self.coeffs[0] ** (-n))
            raise ValueError("only +-z^k has an inverse in Z[z, z^-1]")
        out = IntLaurentPoly.monomial(0, 1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, value):
        return sum(c * Fraction(value) ** e for e, c in self.terms())

    def __repr__(self) -> str:
        return f"IntLaurentPoly({format_laurent(self.terms())})"

    def __str__(self) -> str:
        return format_laurent(self.terms())

    def to_json(self) -> List[list]:
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "IntLaurentPoly":
        if isinstance(data, (int, str)):
            return cls.monomial(0, _parse_int(data))
        if not isinstance(data, list):
            raise SchemaError(f"expected a list of [exp, coeff] pairs, got {data!r}")
        out: Dict[int, int] = {}
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise SchemaError(f"bad polynomial term {item!r}")
            e, c = item
            if isinstance(e, bool) or not isinstance(e, int):
                raise SchemaError(f"exponent must be an integer, got {e!r}")
            out[e] = out.get(e, 0) + _parse_int(c)
        return cls(out)


def _parse_int(value) -> int:
    if isinstance(value, bool):
        raise SchemaError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise SchemaError(f"expected a decimal integer string, got {value!r}")


# ---------------------------------------------------------------------------
# the localized ring R

def _strip(coeffs: P.Poly):
    k = P.order(coeffs)
    return k, coeffs[k:]


def _canonical(low: int, num: P.Poly, den: P.Poly):
    """Reduce z^low * num / den; returns (low, num, den) with den[0] == 1.

    Raises NotInR when the reduced denominator lies outside +-z^k (1 + zZ[z]).
    """
    num, den = P.trim(num), P.trim(den)
    if not den:
        raise DivisionByZero("denominator is zero")
    if not num:
        return 0, P.ZERO, P.ONE
    k, num = _strip(num)
    low += k
    k, den = _strip(den)
    low -= k
    if len(den) > 1 and len(num) > 1:
        g = P.gcd_poly(num, den)
        if len(g) > 1:
            num = P.exact_div(num, g)
            den = P.exact_div(den, g)
    cd = P.content(den)
    if den[0] < 0:
        cd = -cd
    if abs(den[0]) != abs(cd):
        # constant term of the primitive denominator is not +-1
        raise NotInR(f"denominator {format_laurent(enumerate(den))} is not of the form +-z^k(1 + zZ[z])")
    if cd != 1:
        if any(c % cd for c in num):
            raise NotInR("fraction has a non-integral constant factor")
        num = tuple(c // cd for c in num)
        den = tuple(c // cd for c in den)
    return low, num, den


class RationalR:
    """An element of R = (1 + zZ[z])^-1 Z[z, z^-1] in canonical reduced form."""

    __slots__ = ("low", "num", "den")

    def __init__(self, numerator=0, denominator=1):
        nl, nc = _as_laurent_parts(numerator)
        dl, dc = _as_laurent_parts(denominator)
        if not dc:
            raise DivisionByZero("RationalR with zero denominator")
        self.low, self.num, self.den = _canonical(nl - dl, nc, dc)

    @classmethod
    def _raw(cls, low: int, num: P.Poly, den: P.Poly) -> "RationalR":
        obj = cls.__new__(cls)
        obj.low, obj.num, obj.den = low, num, den
        return obj

    @classmethod
    def _reduce(cls, low: int, num: P.Poly, den: P.Poly) -> "RationalR":
        return cls._raw(*_canonical(low, num, den))

    @classmethod
    def z_power(cls, k: int, coeff: int = 1) -> "RationalR":
        return cls._raw(k if coeff else 0, (coeff,) if coeff else P.ZERO, P.ONE)

    # views
    @property
    def numerator(self) -> IntLaurentPoly:
        return IntLaurentPoly.from_poly(self.num, self.low)

    @property
    def denominator(self) -> IntLaurentPoly:
        return IntLaurentPoly.from_poly(self.den, 0)

    def is_polynomial(self) -> bool:
        return self.den == P.ONE

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalR):
            try:
                other = RationalR(other)
            except (TypeError, SchemaError):
                return NotImplemented
        return (self.low, self.num, self.den) == (other.low, other.num, other.den)

    def __hash__(self) -> int:
        return hash((self.low, self.num, self.den))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalR):
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, IntLaurentPoly)):
            return RationalR(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        lo = min(self.low, other.low)
        a = (0,) * (self.low - lo) + self.num
        b = (0,) * (other.low - lo) + other.num
        if self.den == other.den:
            n = P.add(a, b)
            if self.den == P.ONE:
                if not n:
                    return RR.zero
                k, n = _strip(n)
                return RationalR._raw(lo + k, n, P.ONE)
            return RationalR._reduce(lo, n, self.den)
        # with both summands reduced, only the common factor of the denominators can cancel
        g = P.gcd_poly(self.den, other.den)
        if len(g) == 1:
            n = P.add(P.mul(a, other.den), P.mul(b, self.den))
            if not n:
                return RR.zero
            k, n = _strip(n)
            den = P.mul(self.den, other.den)
            if den[0] < 0:
                n, den = P.neg(n), P.neg(den)
            return RationalR._raw(lo + k, n, den)
        d1, d2 = P.exact_div(self.den, g), P.exact_div(other.den, g)
        n = P.add(P.mul(a, d2), P.mul(b, d1))
        if not n:
            return RR.zero
        k, n = _strip(n)
        h = P.gcd_poly(n, g)
        if len(h) > 1:
            n, g = P.exact_div(n, h), P.exact_div(g, h)
        den = P.mul(P.mul(d1, d2), g)
        c = den[0]
        if c != 1:
            # den(0) = +-1 always; a leftover integer factor comes from the content only
            cd = P.content(den) * (1 if c > 0 else -1)
            n = tuple(x // cd for x in n) if cd != 1 else n
            den = tuple(x // cd for x in den) if cd != 1 else den
        return RationalR._raw(lo + k, n, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalR._raw(self.low, P.neg(self.num), self.den)

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
        if not self.num or not other.num:
            return RR.zero
        low = self.low + other.low
        if self.den == P.ONE and other.den == P.ONE:
            return RationalR._raw(low, P.mul(self.num, other.num), P.ONE)
        # both factors are reduced, so cross-cancellation yields a reduced product
        n1, d2 = _cancel(self.num, other.den)
        n2, d1 = _cancel(other.num, self.den)
        low, num, den = low, P.mul(n1, n2), P.mul(d1, d2)
        if den[0] < 0:
            num, den = P.neg(num), P.neg(den)
        return RationalR._raw(low, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalR":
        if not self.num:
            raise DivisionByZero("zero has no inverse")
        try:
            return RationalR._reduce(-self.low, self.den, self.num)
        except NotInR as exc:
            raise DivisionNotInR(f"1/({self}) is not an element of R") from exc

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero("division by zero in R")
        if not self.num:
            return RR.zero
        low = self.low - other.low
        try:
            return RationalR._reduce(low, P.mul(self.num, other.den), P.mul(self.den, other.num))
        except NotInR as exc:
            raise DivisionNotInR(f"({self})/({other}) is not an element of R") from exc

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RR.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self) -> str:
        return f"RationalR({self})"

    def __str__(self) -> str:
        n = format_laurent(self.numerator.terms())
        if self.den == P.ONE:
            return n
        d = format_laurent(enumerate(self.den))
        return f"({n})/({d})"

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalR":
        if isinstance(data, (int, str)):
            return cls(_parse_int(data))
        if not isinstance(data, dict) or "num" not in data:
            raise SchemaError(f"expected {{'num': ..., 'den': ...}}, got {data!r}")
        num = IntLaurentPoly.from_json(data["num"])
        den = IntLaurentPoly.from_json(data.get("den", [[0, "1"]]))
        if not den:
            raise SchemaError("denominator is zero")
        return cls(num, den)


def _cancel(num: P.Poly, den: P.Poly):
    if len(num) > 1 and len(den) > 1:
        g = P.gcd_poly(num, den)
        if len(g) > 1:
            return P.exact_div(num, g), P.exact_div(den, g)
    return num, den


def _as_laurent_parts(x):
    if isinstance(x, RationalR):
        if x.den != P.ONE:
            raise TypeError("nested fractions are not accepted; use arithmetic instead")
        return x.low, x.num
    if isinstance(x, IntLaurentPoly):
        return x.low, x.coeffs
    if isinstance(x, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(x, int):
        return 0, ((x,) if x else P.ZERO)
    if isinstance(x, tuple):
        return 0, P.trim(x)
    raise TypeError(f"cannot interpret {x!r} as an integer Laurent polynomial")


@dataclass(frozen=True)
class LocalizedRing:
    """Ring context for RationalR entries."""

    @property
    def zero(self) -> RationalR:
        return _R_ZERO

    @property
    def one(self) -> RationalR:
        return _R_ONE

    @property
    def z(self) -> RationalR:
        return RationalR._raw(1, (1,), P.ONE)

    def coerce(self, x) -> RationalR:
        return x if isinstance(x, RationalR) else RationalR(x)

    def __repr__(self) -> str:
        return "RR"


_R_ZERO = RationalR._raw(0, P.ZERO, P.ONE)
_R_ONE = RationalR._raw(0, (1,), P.ONE)
RR = LocalizedRing()


# ---------------------------------------------------------------------------
# operations

_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def rational_arith(x: RationalR, y: RationalR, op: str) -> RationalR:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected one of {sorted(_OPS)}") from None
    return fn(RR.coerce(x), RR.coerce(y))


class ValuationData(NamedTuple):
    valuation: int
    lowest_coefficient: int


def valuation_and_lowest(x: RationalR) -> ValuationData:
    """z-adic valuation and lowest coefficient of the series expansion of x."""
    x = RR.coerce(x)
    if not x:
        raise ZeroElement("zero has no valuation")
    return ValuationData(x.low, x.num[0])


def is_unit(x: RationalR) -> bool:
    """Unit test in the Novikov ring Z((z)): lowest coefficient +-1."""
    x = RR.coerce(x)
    return bool(x) and abs(x.num[0]) == 1


def divides(x: RationalR, y: RationalR) -> bool:
    """Whether x divides y, decided by membership of y/x in R."""
    x, y = RR.coerce(x), RR.coerce(y)
    if not x:
        raise ZeroDivisor("divisibility by zero is undefined")
    try:
        y / x
    except DivisionNotInR:
        return False
    return True


class NovikovPredicates(NamedTuple):
    is_unit: bool
    divides: bool


def novikov_predicates(x: RationalR, y: RationalR) -> NovikovPredicates:
    return NovikovPredicates(is_unit(x), divides(x, y))


def series_quotient_integral_through(x: RationalR, y: RationalR, order: int) -> bool:
    """Whether the Laurent series of y/x has integer coefficients up to z^order.

    Works purely with the series expansions over Q, so it is independent of
    the fraction arithmetic used by :func:`divides`.
    """
    x, y = RR.coerce(x), RR.coerce(y)
    if not x:
        raise ZeroDivisor("divisibility by zero is undefined")
    if not y:
        return True
    shift = y.low - x.low
    n = max(order - shift, 0) + 1
    xs = expand_series(x, x.low + n - 1).coeffs
    ys = expand_series(y, y.low + n - 1).coeffs
    xs = list(xs) + [0] * (n - len(xs))
    ys = list(ys) + [0] * (n - len(ys))
    x0 = Fraction(xs[0])
    q: List[Fraction] = []
    for i in range(n):
        acc = Fraction(ys[i]) - sum(q[j] * xs[i - j] for j in range(max(0, i - len(xs) + 1), i))
        qi = acc / x0
        if qi.denominator != 1:
            return False
        q.append(qi)
    return True


# ---------------------------------------------------------------------------
# truncated series

class TruncatedSeries:
    """sum_{j=v}^{T} z^j a_j known modulo z^(T+1), with z on the left.

    Coefficients come from ``ring`` (ZZ or a GroupRing); products obey the
    commutation rule a z = z alpha(a).  A series that is zero through its
    precision stores no coefficients and has valuation T + 1.
    """

    __slots__ = ("ring", "valuation", "coeffs", "precision")

    def __init__(self, ring, coefficients: Mapping[int, Any], precision: int):
        terms = {e: c for e, c in coefficients.items() if c and e <= precision}
        self.ring = ring
        self.precision = precision
        if not terms:
            self.valuation, self.coeffs = precision + 1, ()
            return
        v = min(terms)
        self.valuation = v
        zero = ring.zero
        self.coeffs = tuple(terms.get(e, zero) for e in range(v, precision + 1))

    @classmethod
    def _dense(cls, ring, low: int, coeffs: Sequence, precision: int) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj.ring, obj.precision = ring, precision
        n = precision - low + 1
        coeffs = list(coeffs[:max(n, 0)])
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            obj.valuation, obj.coeffs = precision + 1, ()
            return obj
        zero = ring.zero
        coeffs = coeffs[i:] + [zero] * (n - len(coeffs))
        obj.valuation, obj.coeffs = low + i, tuple(coeffs)
        return obj

    def coefficient(self, exp: int):
        if exp > self.precision:
            raise ValueError(f"coefficient of z^{exp} is beyond precision {self.precision}")
        i = exp - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def coefficient_list(self, start: int = 0) -> list:
        return [self.coefficient(e) for e in range(start, self.precision + 1)]

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise ValueError("cannot raise precision of a truncated series")
        return TruncatedSeries._dense(self.ring, self.valuation, self.coeffs, precision)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.ring != self.ring:
                from .errors import ContextMismatch
                raise ContextMismatch("series over different coefficient rings")
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int) or getattr(other, "ring", None) == self.ring:
            return TruncatedSeries(self.ring, {0: other}, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, prec + 1)
        out = []
        for e in range(lo, prec + 1):
            out.append(self._at(e) + other._at(e))
        return TruncatedSeries._dense(self.ring, lo, out, prec)

    __radd__ = __add__

    def _at(self, e):
        i = e - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def __neg__(self):
        return TruncatedSeries._dense(self.ring, self.valuation, [-c for c in self.coeffs], self.precision)

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
        v1, v2 = self.valuation, other.valuation
        prec = min(self.precision + v2, other.precision + v1)
        lo = v1 + v2
        if lo > prec or not self.coeffs or not other.coeffs:
            return TruncatedSeries._dense(self.ring, prec + 1, [], prec)
        ring = self.ring
        n = prec - lo + 1
        out = [ring.zero] * n
        a, b = self.coeffs, other.coeffs
        for j, bj in enumerate(b):
            if j >= n:
                break
            if not bj:
                continue
            shift = v2 + j
            for i in range(min(len(a), n - j)):
                ai = a[i]
                if ai:
                    out[i + j] = out[i + j] + ring.alpha(ai, shift) * bj
        return TruncatedSeries._dense(ring, lo, out, prec)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other) -> bool:
        try:
            diff = self - other
        except TypeError:
            return NotImplemented
        if diff is NotImplemented:
            return NotImplemented
        return not diff

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = [(self.valuation + i, c) for i, c in enumerate(self.coeffs) if c]
        return f"TruncatedSeries({format_laurent(terms)} + O(z^{self.precision + 1}))"

    def to_json(self) -> dict:
        enc = getattr(self.ring, "element_to_json", None)
        coeffs = [enc(c) if enc else str(c) for c in self.coeffs]
        return {"valuation": self.valuation, "precision": self.precision, "coeffs": coeffs}


@dataclass(frozen=True)
class SeriesRing:
    """Ring context for TruncatedSeries over ``base`` known through z^precision."""

    base: Any
    precision: int

    @property
    def zero(self) -> TruncatedSeries:
        return TruncatedSeries(self.base, {}, self.precision)

    @property
    def one(self) -> TruncatedSeries:
        return TruncatedSeries(self.base, {0: self.base.one}, self.precision)

    def lift(self, a, z_power: int = 0) -> TruncatedSeries:
        """The element z^z_power * a of the completion."""
        return TruncatedSeries(self.base, {z_power: a}, self.precision)

    def coerce(self, x) -> TruncatedSeries:
        if isinstance(x, TruncatedSeries):
            return x
        return self.lift(x)


def expand_series(x: RationalR, precision: int) -> TruncatedSeries:
    """Integer power series of x through z^precision (long division by the denominator)."""
    x = RR.coerce(x)
    if not x:
        return TruncatedSeries(ZZ, {}, precision)
    if precision < x.low:
        raise ValueError(f"precision {precision} is below the valuation {x.low}")
    n = precision - x.low + 1
    num, den = x.num, x.den
    out = [0] * n
    for i in range(n):
        acc = num[i] if i < len(num) else 0
        for k in range(1, min(len(den), i + 1)):
            acc -= den[k] * out[i - k]
        out[i] = acc
    return TruncatedSeries._dense(ZZ, x.low, out, precision)
