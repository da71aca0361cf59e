import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from novikov import RR, GroupRing, Matrix, Monodromy, RationalR, SigmaMatrix, expand_series
from novikov import factorization_check, invert_exact_R, invert_truncated
from novikov.errors import DimensionMismatch
from novikov.group_algebra import TwistedLaurentRing, twisted_matrix_mul
from novikov.localization import sigma_determinant
from novikov.matrix import integer_matrix
from novikov.ring_core import ZZ

from oracles import neumann_coefficients

z = RationalR.z_power(1)


def sigma(rows):
    return SigmaMatrix(integer_matrix(rows))


int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))


def test_zero_e_inverts_to_identity():
    s = sigma([[0, 0], [0, 0]])
    assert invert_exact_R(s).matrix == Matrix.identity(RR, 2)
    t = invert_truncated(s, 5).matrix
    assert all(t[i, j].coefficient_list() == ([1] if i == j else [0]) + [0] * 5
               for i in range(2) for j in range(2))


def test_scalar_one_inverts_to_geometric_series():
    s = sigma([[1]])
    assert invert_exact_R(s).matrix[0, 0] == RationalR((1,), (1, -1))
    assert invert_truncated(s, 3).matrix[0, 0].coefficient_list() == [1, 1, 1, 1]


def test_jordan_block_inverse():
    s = sigma([[1, 1], [0, 1]])
    assert sigma_determinant(s) == (1, -2, 1)
    inv = invert_exact_R(s).matrix
    assert inv[0, 0] == RationalR((1,), (1, -1))
    assert inv[0, 1] == RationalR((0, 1), (1, -2, 1))
    assert inv[1, 0] == RR.zero
    assert inv[1, 1] == RationalR((1,), (1, -1))


@pytest.mark.parametrize("T", [0, 1, 7, 16, 64])
def test_factorization_for_e_one(T):
    assert factorization_check(sigma([[1]]), T)


def test_twisted_inverse_with_inversion_monodromy():
    ring = GroupRing(1, Monodromy(((-1,),)))
    t = ring.t(0)
    s = SigmaMatrix(Matrix(ring, [[t]]))
    inv = invert_truncated(s, 2).matrix[0, 0]
    # 1 + zt + z^2 alpha(t) t = 1 + zt + z^2
    assert inv.coefficient_list() == [ring.one, t, ring.one]
    # oracle: multiply the truncation by 1 - zt in the twisted Laurent ring
    L = TwistedLaurentRing(ring)
    trunc = L.element({j: c for j, c in enumerate(inv.coefficient_list())})
    prod = twisted_matrix_mul(Matrix(L, [[trunc]]), Matrix(L, [[L.one - L.lift(t, 1)]]))[0, 0]
    assert all(not prod.coefficient(j) for j in range(1, 3)) and prod.coefficient(0) == ring.one


@given(int_matrices)
def test_exact_inverse_is_two_sided(rows):
    s = sigma(rows)
    inv = invert_exact_R(s).matrix
    m = s.over(RR)
    ident = Matrix.identity(RR, s.n)
    assert inv * m == ident and m * inv == ident


@given(int_matrices)
def test_determinant_lies_in_one_plus_zZz(rows):
    det = sigma_determinant(sigma(rows))
    assert det[0] == 1


@given(int_matrices, st.integers(0, 12))
def test_truncated_inverse_matches_neumann_oracle(rows, T):
    inv = invert_truncated(sigma(rows), T).matrix
    powers = neumann_coefficients(rows, T)
    n = len(rows)
    for i in range(n):
        for j in range(n):
            assert inv[i, j].coefficient_list() == [powers[k][i][j] for k in range(T + 1)]


@given(int_matrices, st.integers(0, 10), st.integers(0, 10))
def test_truncation_is_monotone(rows, T, extra):
    s = sigma(rows)
    lo, hi = invert_truncated(s, T).matrix, invert_truncated(s, T + extra).matrix
    assert all(hi[i, j].truncate(T) == lo[i, j] for i in range(s.n) for j in range(s.n))


@given(int_matrices)
def test_exact_inverse_expands_to_truncated_inverse(rows):
    s = sigma(rows)
    assert factorization_check(s, 16)
    exact, trunc = invert_exact_R(s).matrix, invert_truncated(s, 16).matrix
    for i in range(s.n):
        for j in range(s.n):
            assert expand_series(exact[i, j], 16) == trunc[i, j]


@pytest.mark.parametrize("seed", range(10))
def test_exact_inverse_up_to_six_by_six(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]
    s = sigma(rows)
    inv = invert_exact_R(s).matrix
    assert inv * s.over(RR) == Matrix.identity(RR, 6)


@pytest.mark.parametrize("alpha", [((-1,),), ((1,),)])
def test_twisted_truncated_inverse_is_two_sided(alpha):
    ring = GroupRing(1, Monodromy(alpha))
    rng = random.Random(3)
    e = Matrix(ring, [[ring.monomial((rng.randint(-1, 1),), rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)])
    # construction verifies inv * (1 - ze) = (1 - ze) * inv = 1 through the precision
    res = invert_truncated(SigmaMatrix(e), 12)
    assert res.kind == "truncated" and res.precision == 12


def test_exact_inverse_needs_integer_coefficients():
    ring = GroupRing(1)
    with pytest.raises(DimensionMismatch):
        invert_exact_R(SigmaMatrix(Matrix(ring, [[ring.t(0)]])))
    assert SigmaMatrix(integer_matrix([[2]])).base == ZZ
