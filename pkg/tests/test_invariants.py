import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from novikov import RR, BasedComplex, Matrix, RationalR, betti_oracle, divides, homology_invariants
from novikov import is_unit, novikov_verdict, snf_novikov, verify_snf
from novikov.errors import InvalidComplex
from novikov.invariants import DegreeInvariants, determinant_R, rank_Qz
from novikov.workbench.harness import random_R_matrix, trial_rng

from helpers import matrix_entries
from oracles import invariant_factors_by_minors, rank_Qz_by_evaluation

z = RationalR.z_power(1)


def rmat(rows):
    return Matrix(RR, [[RR.coerce(x) for x in r] for r in rows])


def diag_lowest(res):
    return [abs(d.num[0]) for d in res.diagonal]


def complex_1(entry):
    return BasedComplex(RR, [1, 1], [rmat([[entry]])])


# --- snf examples -------------------------------------------------------------

def test_unit_entry_normalizes_to_one():
    m = rmat([[1 - z, 0], [0, 2]])
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert res.diagonal == [RR.one, RR.coerce(2)]
    (t,) = res.torsion()
    assert abs(t.num[0]) == 2


def test_zero_matrix():
    m = Matrix.zeros(RR, 2, 3)
    res = snf_novikov(m)
    assert res.diagonal == []
    assert res.U == Matrix.identity(RR, 2) and res.V == Matrix.identity(RR, 3)
    assert verify_snf(m, res) == []


def test_coprime_integers_combine():
    m = rmat([[2, 0], [0, 3]])
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert res.diagonal == [RR.one, RR.coerce(6)]


def test_non_associate_torsion_entry_is_kept_as_is():
    res = snf_novikov(rmat([[2 + z]]))
    (d,) = res.diagonal
    assert not is_unit(d)
    assert divides(d, 2 + z) and divides(2 + z, d)
    assert d.low == 0 and d.num[0] == 2


def test_associate_of_an_integer_is_reported_as_that_integer():
    res = snf_novikov(rmat([[2 + 2 * z - 4 * z ** 3]]))
    assert res.diagonal == [RR.coerce(2)]


def test_negative_valuation_entries_are_shifted_to_valuation_zero():
    m = rmat([[3 * z ** -2, 0], [0, z ** 5 * (1 + z)]])
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert res.diagonal == [RR.one, RR.coerce(3)]


def test_rank_deficient_square_matrix():
    row = [1 + z, 2, z]
    m = rmat([row, [2 * x for x in row], [0, 0, 0]])
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert res.rank == 1 and rank_Qz(m) == 1


def test_verify_snf_reports_a_broken_certificate():
    m = rmat([[2, 0], [0, 3]])
    res = snf_novikov(m)
    res.D = rmat([[1, 0], [0, 5]])
    assert "U M V != D" in verify_snf(m, res)


def test_snf_json_shape():
    data = snf_novikov(rmat([[2 + z, 0], [0, 4]])).to_json()
    assert data["rank"] == 2
    # (2 + z, 4) contains (2 + z)^2 - 4(1 + z) = z^2, a unit
    assert [d["lowest_coefficient"] for d in data["invariants"]] == ["1", "8"]
    json.dumps(data)


# --- snf properties -----------------------------------------------------------

@pytest.mark.parametrize("seed", range(80))
def test_random_certificates(seed):
    m = random_R_matrix(trial_rng(seed, "snf-test", 0), max_dim=4, bound=2)
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert res.rank == rank_Qz(m) == rank_Qz_by_evaluation(matrix_entries(m))


int_rows = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-9, 9), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


@given(int_rows)
def test_integer_matrices_agree_with_determinantal_divisors(rows):
    m = rmat(rows)
    res = snf_novikov(m)
    assert verify_snf(m, res) == []
    assert diag_lowest(res) == invariant_factors_by_minors(rows)
    # integer input stays integer: no z ever enters
    assert all(d.low == 0 and d.den == (1,) and len(d.num) == 1 for d in res.diagonal)


@given(int_rows, st.integers(-3, 3))
def test_unit_rescaling_keeps_the_invariants(rows, shift):
    unit = z ** shift * RationalR((1, 2), (1, -1))
    m = rmat(rows)
    scaled = Matrix(RR, [[x * unit for x in r] for r in m.rows])
    assert diag_lowest(snf_novikov(scaled)) == diag_lowest(snf_novikov(m))


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=3))
def test_one_by_one_entry_matches_its_lowest_coefficient(terms):
    x = RR.zero
    for e, c in terms:
        x = x + c * (z ** e) * (1 + z)
    res = snf_novikov(rmat([[x]]))
    if not x:
        assert res.diagonal == []
    else:
        (d,) = res.diagonal
        assert divides(d, x) and divides(x, d)
        assert abs(d.num[0]) == abs(x.num[0])


def test_determinant_of_unimodular_transforms():
    m = random_R_matrix(trial_rng(3, "det", 0), max_dim=3)
    res = snf_novikov(m)
    assert is_unit(determinant_R(res.U)) and is_unit(determinant_R(res.V))


# --- homology invariants ------------------------------------------------------

def test_two_plus_z_complex_has_torsion():
    inv = homology_invariants(complex_1(2 + z))
    assert [x.b for x in inv] == [0, 0]
    assert [x.q for x in inv] == [1, 0]
    (t,) = inv[0].torsion
    assert t.valuation == 0 and t.lowest_coefficient == 2
    assert betti_oracle(complex_1(2 + z)) == [0, 0]


def test_one_minus_z_complex_is_acyclic():
    inv = homology_invariants(complex_1(1 - z))
    assert [(x.b, x.q) for x in inv] == [(0, 0), (0, 0)]


def test_zero_differentials_give_free_homology():
    c = BasedComplex(RR, [2, 3])
    inv = homology_invariants(c)
    assert [(x.b, x.q) for x in inv] == [(2, 0), (3, 0)]
    assert betti_oracle(c) == [2, 3]


def test_circle_output_has_no_rational_homology():
    assert betti_oracle(complex_1(z - 1)) == [0, 0]


def test_three_term_complex():
    # R^1 <-(2  0)- R^2 <-(0; 1)- R^1 : H_0 = Z((z))/2, H_1 = 0, H_2 = 0
    c = BasedComplex(RR, [1, 2, 1], [rmat([[2, 0]]), rmat([[0], [1]])])
    inv = homology_invariants(c)
    assert [(x.b, x.q) for x in inv] == [(0, 1), (0, 0), (0, 0)]
    assert betti_oracle(c) == [0, 0, 0]


def test_invariants_reject_non_complexes():
    c = BasedComplex(RR, [1, 1, 1], [rmat([[1]]), rmat([[1]])], check=False)
    with pytest.raises(InvalidComplex):
        homology_invariants(c)
    with pytest.raises(InvalidComplex):
        betti_oracle(c)


def test_torsion_entries_have_lowest_coefficient_at_least_two():
    m = random_R_matrix(trial_rng(11, "tors", 0), max_dim=3)
    c = BasedComplex(RR, [m.nrows, m.ncols], [m])
    for inv in homology_invariants(c):
        assert inv.q == len(inv.torsion)
        assert all(abs(t.lowest_coefficient) >= 2 for t in inv.torsion)


@pytest.mark.parametrize("seed", range(30))
def test_snf_betti_numbers_agree_with_evaluation_oracle(seed):
    m = random_R_matrix(trial_rng(seed, "betti", 0), max_dim=4)
    c = BasedComplex(RR, [m.nrows, m.ncols], [m])
    b = [x.b for x in homology_invariants(c)]
    ev = rank_Qz_by_evaluation(matrix_entries(m))
    assert b == betti_oracle(c) == [m.nrows - ev, m.ncols - ev]


# --- verdict ------------------------------------------------------------------

def test_all_zero_verdict():
    rep = novikov_verdict(homology_invariants(BasedComplex(RR, [0, 0])), [0, 0])
    assert rep.mu == [0, 0] and rep.verdicts == ["PASS", "PASS"] and rep.passed


def test_torsion_enters_the_next_degree():
    rep = novikov_verdict(homology_invariants(complex_1(2 + z)), [1, 1, 0])
    assert rep.mu == [1, 1, 0]
    assert rep.passed


def test_violations_are_flagged():
    invs = [DegreeInvariants(0, 2, 1, ()), DegreeInvariants(1, 0, 0, ())]
    rep = novikov_verdict(invs, [1, 5])
    assert rep.mu == [3, 1]
    assert rep.verdicts == ["FAIL", "PASS"] and not rep.passed


def test_negative_counts_are_rejected():
    with pytest.raises(ValueError):
        novikov_verdict([], [-1])


def test_report_table_and_json():
    rep = novikov_verdict(homology_invariants(complex_1(2 + z)), [1, 1], xi="generator of H^1")
    table = rep.table()
    lines = table.splitlines()
    assert lines[0].split() == ["degree", "c_i", "b_i", "q_i", "mu_i", "verdict"]
    assert lines[2].split() == ["0", "1", "0", "1", "1", "PASS"]
    assert lines[-1] == "xi = generator of H^1"
    data = json.loads(json.dumps(rep.to_json()))
    assert data["passed"] is True and data["xi"] == "generator of H^1"
    assert data["degrees"][0]["torsion"] == [{"valuation": 0, "lowest_coefficient": "2"}]
    assert [d["mu"] for d in data["degrees"]] == [1, 1]
