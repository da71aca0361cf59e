"""Named and random fundamental-domain instances.

Random instances are built so that they are valid by construction:

1. E is a direct sum of elementary pieces  Lambda --x--> Lambda  plus free
   summands, with every piece either inside D, inside F, or going from F to D.
   Such a d_E is block upper triangular with respect to E = D + F and squares
   to zero.
2. The basis of E is scrambled by elementary operations that respect the
   filtration D in E (row p += lambda * row q only when q is not in D unless p
   is).  Conjugating by these keeps d_E^2 = 0, keeps g the standard
   inclusion and keeps d_E block upper triangular.
3. h = s*g + alpha(d_E) sigma + sigma d_D for a random sigma : D_i -> E_{i+1};
   the s*g term is used only when alpha(d_D) = d_D, which the generator
   arranges by keeping d_D integral in that case.
"""
from __future__ import annotations

import random
from typing import Dict, Optional

from ..errors import UnknownExample
from ..group_algebra import coefficient_ring
from ..matrix import Matrix
from ..ring_core import ZZ
from .data import FundamentalDomainData


def _M(ring, rows, nrows, ncols):
    rows = [[ring.coerce(x) for x in row] for row in rows]
    return Matrix(ring, rows, nrows, ncols)


def _circle_id() -> FundamentalDomainData:
    one = _M(ZZ, [[1]], 1, 1)
    return FundamentalDomainData(
        k=0, alpha=[], N_ranks=[1, 0], handle_ranks=[0, 0],
        d_D=[Matrix.zeros(ZZ, 1, 0)], a=[Matrix.zeros(ZZ, 1, 0)], d_F=[Matrix.zeros(ZZ, 0, 0)],
        e=[one, Matrix.zeros(ZZ, 0, 0)], f=[Matrix.zeros(ZZ, 0, 1), Matrix.zeros(ZZ, 0, 0)],
        meta={"name": "circle-id", "xi": "generator of H^1(S^1)",
              "description": "f = id on the circle: N a point, M_N = N x I, h = id"},
    )


def _circle_cancelling_pair() -> FundamentalDomainData:
    # E_0 = <v0 = g(p), v1>, E_1 = <e>, d(e) = v0 - v1, h(zp) = v1
    return FundamentalDomainData(
        k=0, alpha=[], N_ranks=[1, 0], handle_ranks=[1, 1],
        d_D=[Matrix.zeros(ZZ, 1, 0)], a=[_M(ZZ, [[1]], 1, 1)], d_F=[_M(ZZ, [[-1]], 1, 1)],
        e=[_M(ZZ, [[0]], 1, 1), Matrix.zeros(ZZ, 0, 0)], f=[_M(ZZ, [[1]], 1, 1), Matrix.zeros(ZZ, 1, 0)],
        meta={"name": "circle-cancelling-pair", "xi": "generator of H^1(S^1)",
              "description": "circle with a cancelling pair of critical points of index 0 and 1"},
    )


def _torus_fiber() -> FundamentalDomainData:
    # N = S^1 with one 0-cell and one 1-cell, M_N = N x I, g = h = id
    one = _M(ZZ, [[1]], 1, 1)
    return FundamentalDomainData(
        k=0, alpha=[], N_ranks=[1, 1], handle_ranks=[0, 0],
        d_D=[_M(ZZ, [[0]], 1, 1)], a=[Matrix.zeros(ZZ, 1, 0)], d_F=[Matrix.zeros(ZZ, 0, 0)],
        e=[one, one], f=[Matrix.zeros(ZZ, 0, 1), Matrix.zeros(ZZ, 0, 1)],
        meta={"name": "torus-fiber", "xi": "projection T^2 -> S^1",
              "description": "mapping torus of the identity of the circle"},
    )


def _klein_bottle() -> FundamentalDomainData:
    # N = S^1 with monodromy t -> t^-1; the cover of N has d(cell_1) = t - 1.
    # h(z x_0) = x_0, h(z x_1) = -t x_1 satisfies alpha(d_D) h_1 = h_0 d_D.
    alpha = [[-1]]
    ring = coefficient_ring(1, alpha)
    t = ring.t(0)
    return FundamentalDomainData(
        k=1, alpha=alpha, N_ranks=[1, 1], handle_ranks=[0, 0],
        d_D=[_M(ring, [[t - 1]], 1, 1)], a=[Matrix.zeros(ring, 1, 0)], d_F=[Matrix.zeros(ring, 0, 0)],
        e=[_M(ring, [[1]], 1, 1), _M(ring, [[-t]], 1, 1)],
        f=[Matrix.zeros(ring, 0, 1), Matrix.zeros(ring, 0, 1)],
        meta={"name": "klein-bottle", "xi": "fibration K -> S^1 with fiber S^1",
              "description": "circle bundle over the circle with orientation-reversing monodromy"},
    )


def _torsion_pair() -> FundamentalDomainData:
    # d(e) = p - 2 v, h(zp) = v: the deformed differential is z - 2
    return FundamentalDomainData(
        k=0, alpha=[], N_ranks=[1, 0], handle_ranks=[1, 1],
        d_D=[Matrix.zeros(ZZ, 1, 0)], a=[_M(ZZ, [[1]], 1, 1)], d_F=[_M(ZZ, [[-2]], 1, 1)],
        e=[_M(ZZ, [[0]], 1, 1), Matrix.zeros(ZZ, 0, 0)], f=[_M(ZZ, [[1]], 1, 1), Matrix.zeros(ZZ, 1, 0)],
        meta={"name": "torsion-pair", "xi": "generator of H^1",
              "description": "index 0/1 pair whose Novikov homology is Z((z))/(z - 2) in degree 0"},
    )


NAMED = {
    "circle-id": _circle_id,
    "circle-cancelling-pair": _circle_cancelling_pair,
    "torus-fiber": _torus_fiber,
    "klein-bottle": _klein_bottle,
    "torsion-pair": _torsion_pair,
}


# ---------------------------------------------------------------------------
# random instances

def _random_unit_exponent(rng: random.Random, k: int):
    return tuple(rng.randint(-1, 1) for _ in range(k))


def _random_coeff(rng: random.Random, ring, bound: int, *, integral: bool):
    c = rng.choice([x for x in range(-bound, bound + 1) if x])
    if ring == ZZ or integral:
        return ring.coerce(c)
    if rng.random() < 0.3:
        return ring.monomial(_random_unit_exponent(rng, ring.k), c) + ring.monomial(
            _random_unit_exponent(rng, ring.k), rng.choice((-1, 1)))
    return ring.monomial(_random_unit_exponent(rng, ring.k), c)


def _height(ring, x) -> int:
    if ring == ZZ:
        return abs(x)
    return max((abs(c) for c in x.terms.values()), default=0)


def random_fundamental_domain(
    seed=None,
    *,
    max_degree: int = 2,
    max_rank: int = 3,
    coefficient_bound: int = 3,
    k: int = 0,
    alpha=None,
    rng: Optional[random.Random] = None,
) -> FundamentalDomainData:
    if rng is None:
        rng = random.Random(seed)
    if alpha is None:
        alpha = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    ring = coefficient_ring(k, alpha)
    zero = ring.zero
    B = max(1, coefficient_bound)
    L = max_degree + 1
    nD = [rng.randint(0, max_rank) for _ in range(L)]
    nF = [rng.randint(0, max_rank) for _ in range(L)]
    nE = [x + y for x, y in zip(nD, nF)]
    # with a nontrivial monodromy the g-term of h needs alpha(d_D) = d_D
    use_g = k == 0 or rng.random() < 0.5
    integral_D = k > 0 and use_g

    # 1. elementary pieces; index < nD[i] means the basis vector lies in D
    d = {i: [[zero] * nE[i] for _ in range(nE[i - 1])] for i in range(1, L)}
    used = [set() for _ in range(L)]
    for i in range(1, L):
        sources = list(range(nE[i]))
        rng.shuffle(sources)
        for s in sources:
            if s in used[i] or rng.random() < 0.35:
                continue
            targets = [t for t in range(nE[i - 1]) if t not in used[i - 1] and not (s < nD[i] and t >= nD[i - 1])]
            if not targets:
                continue
            t = rng.choice(targets)
            in_D = s < nD[i] and t < nD[i - 1]
            d[i][t][s] = _random_coeff(rng, ring, B, integral=integral_D and in_D)
            used[i].add(s)
            used[i - 1].add(t)

    # 2. filtration-preserving change of basis, rejecting growth past the bound
    def over_bound(*mats) -> bool:
        return any(_height(ring, x) > B for m in mats for row in m for x in row)

    for j in range(L):
        n = nE[j]
        if n < 2:
            continue
        for _ in range(rng.randint(0, 2 * n)):
            p, q = rng.sample(range(n), 2)
            if p >= nD[j] and q < nD[j]:
                continue  # would move D out of itself
            lam = _random_coeff(rng, ring, 1, integral=integral_D and p < nD[j] and q < nD[j])
            up = d.get(j + 1)  # rows indexed by E_j
            down = d.get(j)    # columns indexed by E_j
            new_up = None
            if up is not None:
                new_up = [list(r) for r in up]
                new_up[p] = [x + lam * y for x, y in zip(up[p], up[q])]
            new_down = None
            if down is not None:
                new_down = [list(r) for r in down]
                for r in new_down:
                    r[q] = r[q] - r[p] * lam
            if over_bound(*(m for m in (new_up, new_down) if m is not None)):
                continue
            if new_up is not None:
                d[j + 1] = new_up
            if new_down is not None:
                d[j] = new_down

    dE = {i: Matrix(ring, d[i], nE[i - 1], nE[i]) for i in range(1, L)}

    def rows_cols(m: Matrix, r0, r1, c0, c1) -> Matrix:
        return m.submatrix(range(r0, r1), range(c0, c1))

    d_D = [rows_cols(dE[i], 0, nD[i - 1], 0, nD[i]) for i in range(1, L)]

    # 3. h = s g + alpha(d_E) sigma + sigma d_D
    al = lambda m: m.map(lambda x: ring.alpha(x, 1))  # noqa: E731
    sigma = {}
    for i in range(L - 1):
        rows = [[(_random_coeff(rng, ring, 1, integral=False) if rng.random() < 0.3 else zero)
                 for _ in range(nD[i])] for _ in range(nE[i + 1])]
        sigma[i] = Matrix(ring, rows, nE[i + 1], nD[i])
    s = rng.choice((-1, 0, 1, 1, 2)) if use_g else 0
    h = []
    for i in range(L):
        g_i = Matrix.block(ring, [[Matrix.identity(ring, nD[i])], [Matrix.zeros(ring, nF[i], nD[i])]])
        hi = g_i.map(lambda x: x * s) if s else Matrix.zeros(ring, nE[i], nD[i])
        if i + 1 < L:
            hi = hi + al(dE[i + 1]) * sigma[i]
        if i >= 1:
            hi = hi + sigma[i - 1] * d_D[i - 1]
        h.append(hi)
    a = [rows_cols(dE[i], 0, nD[i - 1], nD[i], nE[i]) for i in range(1, L)]
    d_F = [rows_cols(dE[i], nD[i - 1], nE[i - 1], nD[i], nE[i]) for i in range(1, L)]
    e = [rows_cols(h[i], 0, nD[i], 0, nD[i]) for i in range(L)]
    f = [rows_cols(h[i], nD[i], nE[i], 0, nD[i]) for i in range(L)]
    meta = {"name": f"random-{seed}" if seed is not None else "random",
            "xi": "", "random_spec": {"seed": seed, "max_degree": max_degree, "max_rank": max_rank,
                                      "coefficient_bound": coefficient_bound, "k": k}}
    return FundamentalDomainData(k, [list(r) for r in alpha], nD, nF, d_D, a, d_F, e, f, meta)


def generate_example(name: Optional[str] = None, *, random_spec: Optional[Dict] = None) -> FundamentalDomainData:
    """A named example, or a random one from {max_degree, max_rank, coefficient_bound, k, alpha, seed}."""
    if name is not None:
        try:
            return NAMED[name]()
        except KeyError:
            raise UnknownExample(f"unknown example {name!r}; known: {', '.join(sorted(NAMED))}") from None
    spec = dict(random_spec or {})
    allowed = {"max_degree", "max_rank", "coefficient_bound", "k", "alpha", "seed"}
    extra = set(spec) - allowed
    if extra:
        raise ValueError(f"unknown random_spec keys: {sorted(extra)}")
    seed = spec.pop("seed", 0)
    return random_fundamental_domain(seed, **spec)
