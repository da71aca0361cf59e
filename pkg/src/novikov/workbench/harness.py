"""Randomized property harness.

Every trial gets its own seed derived from the master seed, the suite name and
the trial index, so a failing trial can be replayed on its own with
``trial_rng(seed, suite, index)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from ..errors import NovikovError
from ..group_algebra import _int_det, _int_inverse, coefficient_ring
from ..homological_core import ThreeBlockComplex, deform, localized_complex
from ..invariants import betti_oracle, homology_invariants, novikov_verdict, snf_novikov, verify_snf
from ..localization import SigmaMatrix, factorization_check, invert_truncated
from ..matrix import Matrix
from ..ring_core import RR, ZZ, RationalR
from .examples import random_fundamental_domain

SUITES = ("lemma", "theorem", "factorization", "snf", "oracle", "inequality")
TWISTED_SUITES = ("theorem", "truncated_inverse")


def trial_seed(seed: int, suite: str, index: int) -> str:
    return f"{seed}:{suite}:{index}"


def trial_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(trial_seed(seed, suite, index))


# ---------------------------------------------------------------------------
# generators

def random_three_block(rng: random.Random, max_rank: int = 5, bound: int = 3, max_top: int = 3):
    """A three-block complex over Z with c unimodular, and the inverses of c.

    Built from pieces D'_i --(+-1)--> D_{i-1} and F_i --x--> F_{i-1}, then
    scrambled by elementary operations that are block upper triangular for
    the order D < F < D'.
    """
    top = rng.randint(1, max_top)
    nD, nF, nDp = [], [], []
    for i in range(top + 1):
        dp = nD[i - 1] if i else 0
        room = max(0, max_rank - dp)
        d = rng.randint(0, room) if i < top else 0
        # the top D'-block must have room for the previous D-block
        f = rng.randint(0, room - d)
        nD.append(d)
        nF.append(f)
        nDp.append(dp)
    n = [nD[i] + nF[i] + nDp[i] for i in range(top + 1)]
    kind = lambda i, p: 0 if p < nD[i] else (1 if p < nD[i] + nF[i] else 2)  # noqa: E731

    d = {i: [[0] * n[i] for _ in range(n[i - 1])] for i in range(1, top + 1)}
    used = [set() for _ in range(top + 1)]  # F basis vectors already in a piece
    for i in range(1, top + 1):
        for r in range(nDp[i]):
            d[i][r][nD[i] + nF[i] + r] = rng.choice((-1, 1))
        sources = list(range(nD[i], nD[i] + nF[i]))
        rng.shuffle(sources)
        for s in sources:
            avail = [t for t in range(nD[i - 1], nD[i - 1] + nF[i - 1]) if t not in used[i - 1]]
            if not avail or rng.random() < 0.3:
                continue
            t = rng.choice(avail)
            d[i][t][s] = rng.choice([x for x in range(-bound, bound + 1) if x])
            used[i - 1].add(t)
            used[i].add(s)

    def c_unimodular(m, i) -> bool:
        rows = range(nD[i - 1])
        cols = range(nD[i] + nF[i], n[i])
        return not rows or abs(_int_det([[m[r][c] for c in cols] for r in rows])) == 1

    # scramble
    for j in range(top + 1):
        if n[j] < 2:
            continue
        for _ in range(rng.randint(0, 3 * n[j])):
            p, q = rng.sample(range(n[j]), 2)
            if kind(j, p) > kind(j, q):
                continue
            lam = rng.choice((-1, 1))
            up = d.get(j + 1)
            down = d.get(j)
            new_up = [list(r) for r in up] if up is not None else None
            if new_up is not None:
                new_up[p] = [x + lam * y for x, y in zip(up[p], up[q])]
            new_down = [list(r) for r in down] if down is not None else None
            if new_down is not None:
                for r in new_down:
                    r[q] -= r[p] * lam
            if any(abs(x) > bound for m in (new_up, new_down) if m is not None for row in m for x in row):
                continue
            # block upper triangular conjugation keeps the shape but not the corner block c
            if new_up is not None and not c_unimodular(new_up, j + 1):
                continue
            if new_down is not None and not c_unimodular(new_down, j):
                continue
            if new_up is not None:
                d[j + 1] = new_up
            if new_down is not None:
                d[j] = new_down

    def blk(i, rk, ck):
        rows = [r for r in range(n[i - 1]) if kind(i - 1, r) == rk]
        cols = [c for c in range(n[i]) if kind(i, c) == ck]
        return Matrix(ZZ, [[d[i][r][c] for c in cols] for r in rows], len(rows), len(cols))

    maps = {name: {} for name in ("d_D", "a", "c", "d_F", "b", "d_Dp")}
    layout = {"d_D": (0, 0), "a": (0, 1), "c": (0, 2), "d_F": (1, 1), "b": (1, 2), "d_Dp": (2, 2)}
    for i in range(1, top + 1):
        for name, (rk, ck) in layout.items():
            maps[name][i] = blk(i, rk, ck)
    cinv = {}
    for i in range(1, top + 1):
        c = maps["c"][i]
        if c.nrows:
            inv = _int_inverse(tuple(tuple(r) for r in c.rows))
            cinv[i] = Matrix(ZZ, [list(r) for r in inv], c.ncols, c.nrows)
    three = ThreeBlockComplex(ZZ, nD, nF, nDp, **maps)
    return three, cinv


def random_sigma(rng: random.Random, max_n: int = 5, bound: int = 3, k: int = 0, alpha=None) -> SigmaMatrix:
    n = rng.randint(1, max_n)
    if k == 0:
        rows = [[rng.randint(-bound, bound) if rng.random() < 0.6 else 0 for _ in range(n)] for _ in range(n)]
        return SigmaMatrix(Matrix(ZZ, rows, n, n))
    ring = coefficient_ring(k, alpha or [[int(i == j) for j in range(k)] for i in range(k)])
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if rng.random() < 0.5:
                row.append(ring.monomial(tuple(rng.randint(-1, 1) for _ in range(k)), rng.randint(-bound, bound)))
            else:
                row.append(ring.zero)
        rows.append(row)
    return SigmaMatrix(Matrix(ring, rows, n, n))


_DENOMINATORS = [(1, 1), (1, -1), (1, 2), (1, -2), (1, 0, 1), (1, 1, -1)]


def random_R_element(rng: random.Random, bound: int = 2, degree: int = 2) -> RationalR:
    """A sparse small element of R: a short Laurent polynomial, sometimes over 1 + z(...)."""
    if rng.random() < 0.25:
        return RR.zero
    coeffs = [rng.randint(-bound, bound) for _ in range(rng.randint(1, degree + 1))]
    if not any(coeffs):
        coeffs[0] = rng.choice((-1, 1, 2))
    x = RationalR._reduce(rng.randint(-1, 1), tuple(coeffs), (1,))
    if rng.random() < 0.25:
        x = x / RationalR._reduce(0, rng.choice(_DENOMINATORS), (1,))
    return x


def random_R_matrix(rng: random.Random, max_dim: int = 3, bound: int = 2) -> Matrix:
    """A product A * B of small random factors, so rank and torsion vary."""
    m, r, n = rng.randint(1, max_dim), rng.randint(1, max_dim), rng.randint(1, max_dim)
    a = Matrix(RR, [[random_R_element(rng, bound) for _ in range(r)] for _ in range(m)], m, r)
    b = Matrix(RR, [[random_R_element(rng, bound) for _ in range(n)] for _ in range(r)], r, n)
    return a * b


# ---------------------------------------------------------------------------
# suites

@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    passed: int = 0
    first_failure_seed: Optional[str] = None
    first_failure: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.trials

    def to_json(self) -> dict:
        return {"suite": self.name, "trials": self.trials, "passed": self.passed,
                "first_failure_seed": self.first_failure_seed, "first_failure": self.first_failure}


@dataclass
class HarnessSummary:
    seed: int
    k: int
    suites: Dict[str, SuiteResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites.values())

    def to_json(self) -> dict:
        return {"seed": self.seed, "k": self.k, "ok": self.ok,
                "suites": [s.to_json() for s in self.suites.values()]}

    def lines(self) -> List[str]:
        out = []
        for s in self.suites.values():
            tail = "" if s.ok else f"  first failure: seed {s.first_failure_seed}: {s.first_failure}"
            out.append(f"{s.name:<18} {s.passed}/{s.trials}{tail}")
        return out


def check_lemma(rng: random.Random, max_rank: int) -> None:
    three, cinv = random_three_block(rng, max_rank=max_rank)
    out = deform(three, cinv)  # raises IdentityFailure when an identity fails
    for i in range(out.complex.top + 1):
        if out.complex.rank(i) != three.rank("F", i):
            raise AssertionError(f"rank of the deformed complex in degree {i}")


def _fd(rng, max_rank, k, alpha, max_degree=3):
    return random_fundamental_domain(rng=rng, max_degree=rng.randint(0, max_degree), max_rank=max_rank,
                                     coefficient_bound=3, k=k, alpha=alpha)


def check_theorem(rng: random.Random, max_rank: int, k: int = 0, alpha=None, precision: int = 32) -> None:
    fd = _fd(rng, max_rank, k, alpha)
    out = localized_complex(fd.D(), fd.E(), fd.g(), fd.h(), precision=precision)
    hat = out.complex
    for i in range(hat.top + 1):
        want = fd.handle_ranks[i] if i < len(fd.handle_ranks) else 0
        if hat.rank(i) != want:
            raise AssertionError(f"rank C^_{i} = {hat.rank(i)}, expected {want}")
    for i in range(2, hat.top + 1):
        if not (hat.d(i - 1) * hat.d(i)).is_zero():
            raise AssertionError(f"d^ d^ != 0 in degree {i}")


def check_factorization(rng: random.Random, max_rank: int, precision: int = 16) -> None:
    s = random_sigma(rng, max_n=max(1, max_rank))
    if not factorization_check(s, precision):
        raise AssertionError("exact inverse and truncated inverse differ")


def check_truncated_inverse(rng: random.Random, max_rank: int, k: int, alpha, precision: int) -> None:
    s = random_sigma(rng, max_n=max(1, max_rank), k=k, alpha=alpha)
    invert_truncated(s, precision)  # checks both one-sided identities through z^precision


def check_snf(rng: random.Random, max_rank: int) -> None:
    m = random_R_matrix(rng, max_dim=max(1, min(max_rank, 4)))
    problems = verify_snf(m, snf_novikov(m))
    if problems:
        raise AssertionError("; ".join(problems))


def check_oracle(rng: random.Random, max_rank: int) -> None:
    fd = _fd(rng, max_rank, 0, None)
    hat = localized_complex(fd.D(), fd.E(), fd.g(), fd.h()).complex
    b = [x.b for x in homology_invariants(hat)]
    if b != betti_oracle(hat):
        raise AssertionError(f"SNF b = {b}, Q(z) b = {betti_oracle(hat)}")


def check_inequality(rng: random.Random, max_rank: int) -> None:
    fd = _fd(rng, max_rank, 0, None)
    hat = localized_complex(fd.D(), fd.E(), fd.g(), fd.h()).complex
    rep = novikov_verdict(homology_invariants(hat), fd.handle_ranks)
    if not rep.passed:
        raise AssertionError("c_i < mu_i:\n" + rep.table())


def property_harness(trials: int, seed: int, sizes: Optional[dict] = None, *, k: int = 0, alpha=None,
                     precision: int = 32, suites: Optional[Sequence[str]] = None) -> HarnessSummary:
    """Run the property suites; ``sizes`` may set ``max_rank`` (0 gives the degenerate all-zero case)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sizes = dict(sizes or {})
    max_rank = sizes.get("max_rank", 5 if k == 0 else 2)
    if k > 0 and alpha is None:
        alpha = [[int(i == j) for j in range(k)] for i in range(k)]
    if k == 0:
        table: Dict[str, Callable[[random.Random], None]] = {
            "lemma": lambda r: check_lemma(r, max_rank),
            "theorem": lambda r: check_theorem(r, max_rank),
            "factorization": lambda r: check_factorization(r, max_rank),
            "snf": lambda r: check_snf(r, max_rank),
            "oracle": lambda r: check_oracle(r, max_rank),
            "inequality": lambda r: check_inequality(r, max_rank),
        }
    else:
        table = {
            "theorem": lambda r: check_theorem(r, max_rank, k, alpha, precision),
            "truncated_inverse": lambda r: check_truncated_inverse(r, max_rank, k, alpha, precision),
        }
    names = list(suites) if suites is not None else list(table)
    unknown = [s for s in names if s not in table]
    if unknown:
        raise ValueError(f"unknown suites for k = {k}: {unknown}")
    summary = HarnessSummary(seed, k)
    for name in names:
        res = SuiteResult(name)
        for t in range(trials):
            res.trials += 1
            try:
                table[name](trial_rng(seed, name, t))
            except (NovikovError, AssertionError, ArithmeticError) as exc:
                if res.first_failure_seed is None:
                    res.first_failure_seed = trial_seed(seed, name, t)
                    res.first_failure = f"{type(exc).__name__}: {exc}".splitlines()[0]
                continue
            res.passed += 1
        summary.suites[name] = res
    return summary
