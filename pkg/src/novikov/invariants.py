"""Smith normal form over the Novikov ring Z((z)) with all data held in R,
Novikov numbers b_i, q_i, mu_i, and the inequality verdict c_i >= mu_i.

Z((z)) is treated as Euclidean for the norm |lowest nonzero coefficient|:
z is a unit, so only the lowest coefficient matters.  A division step
subtracts a finite polynomial multiple of the pivot, which keeps every
intermediate entry an exact element of R.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import _poly as P
from ._polymat import det_bareiss, rank_fraction_free
from .errors import InvalidComplex
from .homological_core import BasedComplex, validate_homological_data
from .matrix import Matrix
from .ring_core import (
    RR,
    DivisionNotInR,
    RationalR,
    ValuationData,
    divides,
    is_unit,
    valuation_and_lowest,
)

__all__ = [
    "SNFResult",
    "snf_novikov",
    "verify_snf",
    "determinant_R",
    "rank_Qz",
    "DegreeInvariants",
    "homology_invariants",
    "betti_oracle",
    "NovikovReport",
    "novikov_verdict",
]

def _norm(x: RationalR) -> int:
    return abs(x.num[0])


def _size(x: RationalR) -> int:
    return len(x.num) + len(x.den) + sum(abs(c).bit_length() for c in x.num + x.den)


def _associate_scale(p: RationalR) -> Optional[RationalR]:
    """A unit s with s * p an integer, when p has such an associate (None if p already is one).

    Every denominator of R is a unit of Z((z)), and so is a polynomial whose
    constant term is +-1; so p is associate to the content g of its numerator
    exactly when the primitive part has constant term +-1.  Unit pivots become 1.
    """
    g = P.content(p.num)
    if abs(p.num[0]) != g:
        return None
    if p.low == 0 and p.den == P.ONE and p.num == (g,):
        return None
    prim = tuple(c // g for c in p.num)
    if prim[0] < 0:
        prim = P.neg(prim)
    return RationalR._reduce(-p.low, p.den, prim)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _exact_quotient(x: RationalR, p: RationalR) -> Optional[RationalR]:
    try:
        return x / p
    except DivisionNotInR:
        return None


@dataclass
class SNFResult:
    U: Matrix
    V: Matrix
    D: Matrix
    diagonal: List[RationalR]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def torsion(self) -> List[RationalR]:
        return [d for d in self.diagonal if not is_unit(d)]

    def to_json(self) -> dict:
        return {
            "diagonal": [d.to_json() for d in self.diagonal],
            "diagonal_text": [str(d) for d in self.diagonal],
            "rank": self.rank,
            "invariants": [{"valuation": v.valuation, "lowest_coefficient": str(v.lowest_coefficient)}
                           for v in (valuation_and_lowest(d) for d in self.diagonal)],
            "U": [[x.to_json() for x in r] for r in self.U.rows],
            "V": [[x.to_json() for x in r] for r in self.V.rows],
        }


def snf_novikov(m: Matrix) -> SNFResult:
    """Diagonalize m over Z((z)) using only elementary operations with entries in R."""
    if m.ring != RR:
        m = m.map(RR.coerce, RR)
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [[RR.one if i == j else RR.zero for j in range(nr)] for i in range(nr)]
    v = [[RR.one if i == j else RR.zero for j in range(nc)] for i in range(nc)]

    def row_add(i, j, q):  # row_i += q * row_j
        if not q:
            return
        a[i] = [x + q * y if y else x for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y if y else x for x, y in zip(u[i], u[j])]

    def col_add(i, j, q):  # col_i += col_j * q
        if not q:
            return
        for row in a:
            if row[j]:
                row[i] = row[i] + row[j] * q
        for row in v:
            if row[j]:
                row[i] = row[i] + row[j] * q

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_scale(i, s):
        a[i] = [x * s for x in a[i]]
        u[i] = [x * s for x in u[i]]

    def row_comb(i, j, al, be, ga, de):  # (row_i, row_j) <- (al row_i + be row_j, ga row_i + de row_j)
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [al * x + be * y for x, y in zip(ri, rj)]
            mat[j] = [ga * x + de * y for x, y in zip(ri, rj)]

    def col_comb(i, j, al, be, ga, de):
        for mat in (a, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = al * x + be * y
                row[j] = ga * x + de * y

    def reduce_entry(i, t, by_rows):
        """Clear a[i][t] (or a[t][i]) against the pivot; True if the pivot was replaced."""
        add = row_add if by_rows else col_add
        comb = row_comb if by_rows else col_comb
        while True:
            x = a[i][t] if by_rows else a[t][i]
            if not x:
                return False
            p = a[t][t]
            q = _exact_quotient(x, p)
            if q is not None:
                add(i, t, -q)
                return False
            p0, x0 = p.num[0], x.num[0]
            if p.low == 0 and p.den == P.ONE and p.num == (p0,):
                # integer pivot: the symmetric residue of the numerator is a remainder
                half = abs(p0) // 2
                rem = tuple(((c + half) % abs(p0)) - half for c in x.num)
                q = RationalR._reduce(x.low, tuple((c - r) // p0 for c, r in zip(x.num, rem)), x.den)
                add(i, t, -q)
                (row_swap if by_rows else col_swap)(i, t)
                return True
            shift = RationalR.z_power(x.low - p.low)
            if x0 % p0:
                g, s, c = _xgcd(x0, p0)
                # new pivot has lowest coefficient g; the other entry gains valuation
                comb(i, t, RR.coerce(p0 // g), -shift * (x0 // g), RR.coerce(s), shift * c)
                return True
            add(i, t, -shift * (x0 // p0))

    diagonal: List[RationalR] = []
    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x:
                    key = (_norm(x), _size(x), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            for i in range(t, nr):
                # denominators are units, so clearing them is an elementary row scaling
                lcm = P.ONE
                for x in a[i][t:]:
                    if x.den != P.ONE and x.den != lcm:
                        lcm = P.mul(lcm, P.exact_div(x.den, P.gcd_poly(lcm, x.den)))
                if lcm != P.ONE:
                    if lcm[0] < 0:
                        lcm = P.neg(lcm)
                    row_scale(i, RationalR._raw(0, lcm, P.ONE))
            s = _associate_scale(a[t][t])
            if s is not None:
                row_scale(t, s)
            if any(reduce_entry(i, t, True) for i in range(t + 1, nr)):
                continue
            if any(reduce_entry(j, t, False) for j in range(t + 1, nc)):
                continue
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] and not divides(p, a[i][j])), None)
            if bad is None:
                break
            row_add(t, bad[0], RR.one)
        p = a[t][t]
        if is_unit(p):
            row_scale(t, p.inverse())
        else:
            sign = 1 if p.num[0] > 0 else -1
            if p.low or sign < 0:
                row_scale(t, RationalR.z_power(-p.low, sign))
        diagonal.append(a[t][t])

    U = Matrix(RR, u, nr, nr)
    V = Matrix(RR, v, nc, nc)
    D = Matrix(RR, a, nr, nc)
    return SNFResult(U, V, D, diagonal)


def _cleared_rows(m: Matrix) -> Tuple[List[List[P.Poly]], RationalR]:
    """Rows scaled to integer polynomials, and the product of the row multipliers used."""
    out = []
    scale = RR.one
    for row in m.rows:
        nz = [x for x in row if x]
        if not nz:
            out.append([P.ZERO] * len(row))
            continue
        lcm = P.ONE
        for x in nz:
            if x.den != P.ONE:
                g = P.gcd_poly(lcm, x.den)
                lcm = P.mul(lcm, P.exact_div(x.den, g))
        if lcm[0] < 0:
            lcm = P.neg(lcm)
        lo = min(x.low for x in nz)
        line = []
        for x in row:
            if not x:
                line.append(P.ZERO)
            else:
                f = P.mul(x.num, P.exact_div(lcm, x.den))
                line.append((0,) * (x.low - lo) + f)
        out.append(line)
        scale = scale * RationalR._reduce(-lo, lcm, P.ONE)
    return out, scale


def rank_Qz(m: Matrix) -> int:
    """Rank over the fraction field Q(z), by fraction-free elimination."""
    if m.ring != RR:
        m = m.map(RR.coerce, RR)
    rows, _ = _cleared_rows(m)
    return rank_fraction_free(rows)


def determinant_R(m: Matrix) -> RationalR:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    rows, scale = _cleared_rows(m)
    det = det_bareiss(rows)
    if not det:
        return RR.zero
    return RationalR._reduce(0, det, P.ONE) / scale


def verify_snf(m: Matrix, res: SNFResult) -> List[str]:
    """Certificate check; returns a list of failed conditions (empty when valid)."""
    problems = []
    if m.ring != RR:
        m = m.map(RR.coerce, RR)
    if res.U * m * res.V != res.D:
        problems.append("U M V != D")
    for i in range(res.D.nrows):
        for j in range(res.D.ncols):
            x = res.D[i, j]
            if i == j and i < res.rank:
                if x != res.diagonal[i] or not x:
                    problems.append(f"diagonal entry {i} is wrong")
            elif x:
                problems.append(f"off-diagonal entry ({i}, {j}) is nonzero")
    for i in range(res.rank - 1):
        if not divides(res.diagonal[i], res.diagonal[i + 1]):
            problems.append(f"d_{i} does not divide d_{i + 1}")
    for name, t in (("U", res.U), ("V", res.V)):
        if t.nrows and not is_unit(determinant_R(t)):
            problems.append(f"det {name} is not a unit of Z((z))")
    return problems


# ---------------------------------------------------------------------------
# homology

class DegreeInvariants(NamedTuple):
    degree: int
    b: int
    q: int
    torsion: Tuple[ValuationData, ...]
    torsion_entries: Tuple[RationalR, ...] = ()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "b": self.b,
            "q": self.q,
            "torsion": [{"valuation": t.valuation, "lowest_coefficient": str(t.lowest_coefficient)}
                        for t in self.torsion],
            "torsion_entries": [x.to_json() for x in self.torsion_entries],
            "torsion_text": [str(x) for x in self.torsion_entries],
        }


def _require_complex(c: BasedComplex) -> None:
    if c.ring != RR:
        raise InvalidComplex(f"expected a complex over R, got one over {c.ring!r}")
    report = validate_homological_data(c)
    if not report.passed:
        raise InvalidComplex(f"not a chain complex:\n{report}", report)


def homology_invariants(c: BasedComplex, snfs: Optional[dict] = None) -> List[DegreeInvariants]:
    _require_complex(c)
    if snfs is None:
        snfs = {i: snf_novikov(c.d(i)) for i in range(1, c.top + 1)}
    rank = lambda i: snfs[i].rank if i in snfs else 0  # noqa: E731
    out = []
    for i in range(c.top + 1):
        tors = snfs[i + 1].torsion() if (i + 1) in snfs else []
        b = c.rank(i) - rank(i) - rank(i + 1)
        out.append(DegreeInvariants(i, b, len(tors), tuple(valuation_and_lowest(x) for x in tors), tuple(tors)))
    return out


def betti_oracle(c: BasedComplex) -> List[int]:
    """b_i over Q(z): rank C_i - rank d_i - rank d_(i+1)."""
    _require_complex(c)
    ranks = {i: rank_Qz(c.d(i)) for i in range(1, c.top + 1)}
    return [c.rank(i) - ranks.get(i, 0) - ranks.get(i + 1, 0) for i in range(c.top + 1)]


@dataclass
class NovikovReport:
    invariants: List[DegreeInvariants]
    mu: List[int]
    c: List[int]
    verdicts: List[str]
    xi: str = ""

    @property
    def passed(self) -> bool:
        return all(v == "PASS" for v in self.verdicts)

    @property
    def b(self) -> List[int]:
        return [inv.b for inv in self.invariants]

    @property
    def q(self) -> List[int]:
        return [inv.q for inv in self.invariants]

    def to_json(self) -> dict:
        return {
            "xi": self.xi,
            "degrees": [
                {"degree": i, "c": self.c[i], "b": self.invariants[i].b, "q": self.invariants[i].q,
                 "mu": self.mu[i], "verdict": self.verdicts[i],
                 "torsion": self.invariants[i].to_json()["torsion"],
                 "torsion_text": [str(x) for x in self.invariants[i].torsion_entries]}
                for i in range(len(self.mu))
            ],
            "passed": self.passed,
        }

    def table(self) -> str:
        head = f"{'degree':>6} {'c_i':>5} {'b_i':>5} {'q_i':>5} {'mu_i':>5}  verdict"
        lines = [head, "-" * len(head)]
        for i in range(len(self.mu)):
            inv = self.invariants[i]
            lines.append(f"{i:>6} {self.c[i]:>5} {inv.b:>5} {inv.q:>5} {self.mu[i]:>5}  {self.verdicts[i]}")
        if self.xi:
            lines.append(f"xi = {self.xi}")
        return "\n".join(lines)


def novikov_verdict(invariants: Sequence[DegreeInvariants], c: Sequence[int], xi: str = "") -> NovikovReport:
    if any(x < 0 for x in c):
        raise ValueError("critical point counts must be nonnegative")
    n = max(len(invariants), len(c))
    invs = list(invariants)
    for i in range(len(invs), n):
        invs.append(DegreeInvariants(i, 0, 0, ()))
    counts = list(c) + [0] * (n - len(c))
    mu = [invs[i].b + invs[i].q + (invs[i - 1].q if i else 0) for i in range(n)]
    verdicts = ["PASS" if counts[i] >= mu[i] else "FAIL" for i in range(n)]
    return NovikovReport(invs, mu, counts, verdicts, xi)
