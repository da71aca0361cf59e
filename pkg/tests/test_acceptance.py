"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import random
import time

import pytest

from novikov import RR, BasedComplex, Matrix, RationalR, betti_oracle, deform, divides, factorization_check
from novikov import generate_example, homology_invariants, is_unit, novikov_verdict, run_pipeline
from novikov import snf_novikov, localized_complex, verify_deformation, verify_snf
from novikov.workbench.examples import random_fundamental_domain
from novikov.workbench.harness import random_R_matrix, random_sigma, random_three_block, trial_rng

from helpers import ranks_over_Qz
from oracles import invariant_factors_by_minors

SEED = 2024
z = RationalR.z_power(1)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else ""))
        assert ok, detail
    return emit


def two_term(m):
    return BasedComplex(RR, [m.nrows, m.ncols], [m])


@pytest.fixture(scope="module")
def theorem_instances():
    out = []
    for t in range(500):
        rng = trial_rng(SEED, "theorem", t)
        fd = random_fundamental_domain(rng=rng, max_degree=rng.randint(0, 3), max_rank=5, coefficient_bound=3)
        out.append((fd, localized_complex(fd.D(), fd.E(), fd.g(), fd.h())))
    return out


@pytest.fixture(scope="module")
def snf_matrices():
    return [random_R_matrix(trial_rng(SEED, "snf", t), max_dim=4, bound=2) for t in range(500)]


def test_criterion_1_exact_and_truncated_inverses_agree(report):
    start = time.perf_counter()
    ok = sum(factorization_check(random_sigma(trial_rng(SEED, "factorization", t), max_n=5, bound=3), 16)
             for t in range(200))
    elapsed = time.perf_counter() - start
    report(1, "expansion of the exact inverse equals the truncated inverse, T = 16",
           ok == 200 and elapsed < 10, f"{ok}/200 in {elapsed:.2f}s")


def test_criterion_2_deformation_identities(report):
    start = time.perf_counter()
    ok = 0
    for t in range(1000):
        three, cinv = random_three_block(trial_rng(SEED, "lemma", t), max_rank=5, bound=3)
        ok += verify_deformation(deform(three, cinv)).passed
    elapsed = time.perf_counter() - start
    report(2, "five deformation identities on three-block complexes",
           ok == 1000 and elapsed < 30, f"{ok}/1000 in {elapsed:.2f}s")


def test_criterion_3_deformed_ranks_and_square(report, theorem_instances):
    ok = 0
    for fd, out in theorem_instances:
        hat = out.complex
        ranks = all(hat.rank(i) == fd.E().rank(i) - fd.D().rank(i) for i in range(fd.degrees))
        ranks = ranks and all(hat.rank(i) == 0 for i in range(fd.degrees, hat.top + 1))
        square = all((hat.d(i - 1) * hat.d(i)).is_zero() for i in range(2, hat.top + 1))
        ok += ranks and square
    report(3, "rank C^_i = rank E_i - rank D_i and d^ d^ = 0", ok == 500, f"{ok}/500")


def test_criterion_4_circle_examples(report):
    ident = run_pipeline(generate_example("circle-id"))
    pair = run_pipeline(generate_example("circle-cancelling-pair"))
    d = pair.deformed.complex.d(1)[0, 0]
    checks = {
        "circle-id C^ = 0": all(r == 0 for r in ident.hat_ranks),
        "circle-id mu = 0": all(m == 0 for m in ident.novikov.mu) and ident.novikov.q == [0] * len(ident.novikov.q),
        "pair ranks (1, 1)": pair.hat_ranks[:2] == [1, 1] and not any(pair.hat_ranks[2:]),
        "pair d^ is a unit": is_unit(d) and divides(d, z - 1) and divides(z - 1, d),
        "pair homology vanishes": all(x.b == 0 and x.q == 0 for x in pair.novikov.invariants),
        "pair mu = 0 and PASS with c = (1, 1)": (not any(pair.novikov.mu) and pair.novikov.c[:2] == [1, 1]
                                                and pair.novikov.passed),
    }
    bad = [k for k, v in checks.items() if not v]
    report(4, "circle examples", not bad, "failed: " + ", ".join(bad) if bad else f"{len(checks)} checks")


def test_criterion_5_snf_certificates(report, snf_matrices):
    certified = sum(not verify_snf(m, snf_novikov(m)) for m in snf_matrices)
    rng = random.Random(f"{SEED}:integer-snf")
    agree = 0
    for _ in range(100):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        res = snf_novikov(Matrix(RR, [[RR.coerce(x) for x in r] for r in rows]))
        agree += [abs(d.num[0]) for d in res.diagonal] == invariant_factors_by_minors(rows)
    report(5, "SNF certificates and integer specialization", certified == 500 and agree == 100,
           f"{certified}/500 certified, {agree}/100 integer cases agree")


def test_criterion_6_oracle_agreement(report, theorem_instances, snf_matrices):
    complexes = [out.complex for _, out in theorem_instances] + [two_term(m) for m in snf_matrices]
    complexes += [run_pipeline(generate_example(n)).deformed.complex
                  for n in ("circle-id", "circle-cancelling-pair")]
    mismatches = 0
    for c in complexes:
        b = [x.b for x in homology_invariants(c)]
        if b != betti_oracle(c) or b != ranks_over_Qz(c):
            mismatches += 1
    report(6, "SNF Betti numbers equal the Q(z) Betti numbers", mismatches == 0,
           f"{len(complexes) - mismatches}/{len(complexes)} complexes agree")


def test_criterion_7_novikov_inequalities(report, theorem_instances):
    violations = nontrivial = 0
    for fd, out in theorem_instances:
        rep = novikov_verdict(homology_invariants(out.complex), fd.handle_ranks)
        violations += not rep.passed
        nontrivial += any(rep.mu)
    report(7, "c_i >= mu_i in every degree", violations == 0,
           f"{500 - violations}/500 instances ({nontrivial} with some mu_i > 0)")


def test_criterion_8_torsion_detection(report):
    c = two_term(Matrix(RR, [[2 + z]]))
    rep = novikov_verdict(homology_invariants(c), [1, 1])
    ok = rep.b == [0, 0] and rep.q[0] == 1 and rep.mu == [1, 1]
    report(8, "0 -> R -(2 + z)-> R -> 0 has b = (0, 0), q_0 = 1, mu = (1, 1)", ok,
           f"b = {rep.b}, q = {rep.q}, mu = {rep.mu}")
