"""Inverting Sigma-matrices 1 - z e.

Two independent routes: the exact inverse over R (k = 0 only), as adjugate
over det(1 - z e), and the truncated geometric series sum_j (z e)^j in the
Novikov completion, valid for any coefficient ring.  ``factorization_check``
compares them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _poly as P
from ._polymat import det_bareiss
from .errors import DimensionMismatch, IdentityFailure
from .matrix import Matrix
from .ring_core import RR, ZZ, RationalR, SeriesRing, TruncatedSeries, expand_series

DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class SigmaMatrix:
    """The matrix 1 - z e with e square over the coefficient ring."""

    e: Matrix

    def __post_init__(self):
        if self.e.nrows != self.e.ncols:
            raise DimensionMismatch(f"e must be square, got shape {self.e.shape}")

    @property
    def n(self) -> int:
        return self.e.nrows

    @property
    def base(self):
        return self.e.ring

    def over(self, target) -> Matrix:
        """1 - z e as a matrix over RR, a SeriesRing or a TwistedLaurentRing."""
        one, zero = target.one, target.zero
        if target == RR:
            if self.base != ZZ:
                raise DimensionMismatch("R coefficients need k = 0")
            ze = lambda x: RationalR.z_power(1, x)  # noqa: E731
        else:
            ze = lambda x: target.lift(x, 1)  # noqa: E731
        rows = []
        for i, row in enumerate(self.e.rows):
            line = []
            for j, x in enumerate(row):
                entry = one if i == j else zero
                if x:
                    entry = entry - ze(x)
                line.append(entry)
            rows.append(line)
        return Matrix(target, rows, self.n, self.n)


@dataclass(frozen=True)
class SigmaInverse:
    kind: str  # "exact" or "truncated"
    matrix: Matrix
    precision: Optional[int] = None


def sigma_determinant(s: SigmaMatrix) -> P.Poly:
    """det(1 - z e) in Z[z]; its constant term is always 1."""
    if s.base != ZZ:
        raise DimensionMismatch("exact determinant needs k = 0")
    polys = [[P.trim([int(i == j), -x]) for j, x in enumerate(row)] for i, row in enumerate(s.e.rows)]
    return det_bareiss(polys)


def invert_exact_R(s: SigmaMatrix) -> SigmaInverse:
    if s.base != ZZ:
        raise DimensionMismatch("invert_exact_R needs integer e (k = 0)")
    n = s.n
    polys = [[P.trim([int(i == j), -x]) for j, x in enumerate(row)] for i, row in enumerate(s.e.rows)]
    det = det_bareiss(polys)
    if not det or det[0] != 1:
        raise IdentityFailure(f"det(1 - ze) = {det} does not lie in 1 + zZ[z]")
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[polys[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = det_bareiss(minor)
            if (i + j) % 2:
                cof = P.neg(cof)
            inv[i][j] = RationalR._reduce(0, cof, det) if cof else RR.zero
    m = Matrix(RR, inv, n, n)
    one_minus = s.over(RR)
    ident = Matrix.identity(RR, n)
    if m * one_minus != ident or one_minus * m != ident:
        raise IdentityFailure("adjugate inverse of 1 - ze fails the two-sided identity")
    return SigmaInverse("exact", m)


def geometric_terms(s: SigmaMatrix, precision: int):
    """The coefficient matrices X_j of (1 - z e)^-1 = sum_j z^j X_j, j = 0..precision.

    X_0 = 1 and X_j = alpha(X_{j-1}) e, i.e. X_j = alpha^(j-1)(e) ... alpha(e) e.
    """
    base = s.base
    x = Matrix.identity(base, s.n)
    out = [x]
    for _ in range(precision):
        x = x.map(lambda a: base.alpha(a, 1)) * s.e
        out.append(x)
    return out


def invert_truncated(s: SigmaMatrix, precision: int = DEFAULT_PRECISION) -> SigmaInverse:
    if precision < 0:
        raise ValueError("precision must be nonnegative")
    base = s.base
    ring = SeriesRing(base, precision)
    terms = geometric_terms(s, precision)
    n = s.n
    rows = [[TruncatedSeries(base, {j: terms[j][r, c] for j in range(precision + 1)}, precision)
             for c in range(n)] for r in range(n)]
    m = Matrix(ring, rows, n, n)
    one_minus = s.over(ring)
    ident = Matrix.identity(ring, n)
    if m * one_minus != ident or one_minus * m != ident:
        raise IdentityFailure(f"truncated inverse of 1 - ze fails the identity through z^{precision}")
    return SigmaInverse("truncated", m, precision)


def factorization_check(s: SigmaMatrix, precision: int) -> bool:
    """Whether the exact R-inverse expands to the truncated completion inverse."""
    exact = invert_exact_R(s).matrix
    trunc = invert_truncated(s, precision).matrix
    for i in range(s.n):
        for j in range(s.n):
            x = exact[i, j]
            if x and x.low > precision:
                a = [0] * (precision + 1)
            else:
                a = expand_series(x, precision).coefficient_list(0)
            b = trunc[i, j].coefficient_list(0)
            if a != b:
                return False
    return True
