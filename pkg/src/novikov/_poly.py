"""Dense integer polynomials as tuples of coefficients, lowest degree first.

The zero polynomial is the empty tuple; nonzero polynomials never carry a
trailing zero.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence, Tuple

Poly = Tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)


def trim(coeffs: Sequence[int]) -> Poly:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c: int) -> Poly:
    if c == 0:
        return ZERO
    return tuple(c * x for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def order(a: Poly) -> int:
    """Index of the lowest nonzero coefficient (z-adic valuation)."""
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("zero polynomial has no order")


def content(a: Poly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a: Poly) -> Poly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return ZERO
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient a / b in Z[z]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO
    db = len(b) - 1
    lead = b[-1]
    rem = list(a)
    qlen = len(a) - db
    if qlen <= 0:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        c = rem[k + db]
        if c:
            qk, r = divmod(c, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qk
            for j, bj in enumerate(b):
                rem[k + j] -= qk * bj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def pseudo_rem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b (lead(b)^(deg a - deg b + 1) * a mod b)."""
    db = len(b) - 1
    lead = b[-1]
    rem = list(a)
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lead * x for x in rem]
        for j, bj in enumerate(b):
            rem[shift + j] -= c * bj
        rem = list(trim(rem))
    return tuple(rem)


def _evaluate(a: Poly, x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _divides(b: Poly, a: Poly) -> bool:
    try:
        exact_div(a, b)
    except ArithmeticError:
        return False
    return True


def _heuristic_gcd(a: Poly, b: Poly):
    """Gcd of primitive a, b by evaluation at a large integer; None if inconclusive.

    Any candidate is verified by exact division, so a returned value is the gcd.
    """
    bound = min(max(abs(c) for c in a), max(abs(c) for c in b))
    xi = 2 * bound + 29
    for _ in range(6):
        h = gcd(_evaluate(a, xi), _evaluate(b, xi))
        coeffs = []
        half = xi // 2
        while h:
            c = h % xi
            if c > half:
                c -= xi
            coeffs.append(c)
            h = (h - c) // xi
        cand = primitive(trim(coeffs))
        if cand and _divides(cand, a) and _divides(cand, b):
            return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _prs_gcd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return ONE
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def gcd_poly(a: Poly, b: Poly) -> Poly:
    """Primitive gcd over Z[z] (equivalently over Q[z], up to scalars)."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a, b = primitive(a), primitive(b)
    if len(a) == 1 or len(b) == 1:
        return ONE
    if a == b:
        return a
    g = _heuristic_gcd(a, b)
    return g if g is not None else _prs_gcd(a, b)
