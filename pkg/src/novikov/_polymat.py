"""Fraction-free linear algebra over Z[z] on matrices of dense polynomials."""
from __future__ import annotations

from typing import List, Sequence

from . import _poly as P


def det_bareiss(rows: Sequence[Sequence[P.Poly]]) -> P.Poly:
    n = len(rows)
    if n == 0:
        return P.ONE
    m = [list(r) for r in rows]
    sign = 1
    prev = P.ONE
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return P.ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = P.sub(P.mul(piv, m[i][j]), P.mul(m[i][k], m[k][j]))
                m[i][j] = P.exact_div(num, prev) if num else P.ZERO
            m[i][k] = P.ZERO
        prev = piv
    det = m[n - 1][n - 1]
    return P.neg(det) if sign < 0 else det


def rank_fraction_free(rows: Sequence[Sequence[P.Poly]]) -> int:
    """Rank over Q(z); rows are rescaled by their polynomial gcd to curb growth."""
    m: List[List[P.Poly]] = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv_row = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv_row is None:
            continue
        m[rank], m[piv_row] = m[piv_row], m[rank]
        piv = m[rank]
        p = piv[col]
        for r in range(rank + 1, len(m)):
            t = m[r][col]
            if not t:
                continue
            new = [P.sub(P.mul(p, x), P.mul(t, y)) for x, y in zip(m[r], piv)]
            g = P.ZERO
            for x in new:
                if x:
                    g = P.gcd_poly(g, x)
                    if g == P.ONE:
                        break
            if g and g != P.ONE:
                new = [P.exact_div(x, g) if x else x for x in new]
            m[r] = new
        rank += 1
        if rank == len(m):
            break
    return rank
