import pytest

from novikov import RR, BasedComplex, Matrix, RationalR, ThreeBlockComplex, deform, mapping_cone, localized_complex
from novikov import validate_homological_data, verify_deformation
from novikov.errors import DimensionMismatch, InvalidComplex, NotInvertible, NotSplit, NotUpperTriangular
from novikov.homological_core import ChainMapPair
from novikov.localization import SigmaMatrix, invert_exact_R
from novikov.matrix import integer_matrix
from novikov.ring_core import ZZ
from novikov.workbench import generate_example
from novikov.workbench.examples import random_fundamental_domain
from novikov.workbench.harness import random_three_block, trial_rng

from helpers import cone_over_R, ranks_over_Qz

z = RationalR.z_power(1)
M = integer_matrix


def point():
    return BasedComplex(ZZ, [1])


# --- validation ---------------------------------------------------------------

def test_circle_data_passes():
    D = E = point()
    report = validate_homological_data(E, ChainMapPair(D, [M([[1]])], [M([[1]])]))
    assert report.passed


def test_nonzero_square_is_reported_with_degree_and_entry():
    c = BasedComplex(ZZ, [1, 1, 1], [M([[2]]), M([[3]])], check=False)
    report = validate_homological_data(c)
    assert not report.passed
    (failure,) = report.failures
    assert failure.degree == 2
    assert failure.identity == "d^2 = 0"
    assert (failure.row, failure.col) == (0, 0)
    assert failure.value.startswith("6")
    with pytest.raises(InvalidComplex):
        BasedComplex(ZZ, [1, 1, 1], [M([[2]]), M([[3]])])


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        BasedComplex(ZZ, [1, 2], [M([[1, 2, 3]])])
    with pytest.raises(DimensionMismatch):
        validate_homological_data(point(), ChainMapPair(point(), [M([[1, 1]])], []))


@pytest.mark.parametrize("seed", range(20))
def test_random_generator_output_validates(seed):
    fd = random_fundamental_domain(seed, max_rank=4, max_degree=3)
    assert validate_homological_data(fd.E(), ChainMapPair(fd.D(), fd.g(), fd.h())).passed
    assert validate_homological_data(fd.D()).passed


# --- mapping cone -------------------------------------------------------------

def test_cone_of_identity_is_acyclic():
    E = BasedComplex(ZZ, [2, 2], [M([[1, 0], [0, 0]])])
    g = [Matrix.identity(ZZ, 2), Matrix.identity(ZZ, 2)]
    h = [Matrix.zeros(ZZ, 2, 2), Matrix.zeros(ZZ, 2, 2)]
    cone = mapping_cone(E, E, g, h)
    assert ranks_over_Qz(cone_over_R(cone)) == [0, 0, 0]


def test_circle_cone_has_differential_one_minus_z():
    cone = mapping_cone(point(), point(), [M([[1]])], [M([[1]])])
    assert cone.ranks == [1, 1]
    assert cone.d(1)[0, 0].to_rational() == 1 - z


def test_zero_maps_give_direct_sum():
    D = BasedComplex(ZZ, [1, 1], [M([[2]])])
    E = BasedComplex(ZZ, [1, 1], [M([[3]])])
    zero = [Matrix.zeros(ZZ, 1, 1)] * 2
    cone = mapping_cone(D, E, zero, zero)
    assert cone.ranks == [1, 2, 1]
    d1 = cone.d(1).map(lambda x: x.to_rational(), RR)
    d2 = cone.d(2).map(lambda x: x.to_rational(), RR)
    assert d1 == Matrix(RR, [[RR.coerce(3), RR.zero]])
    assert d2 == Matrix(RR, [[RR.zero], [RR.coerce(-2)]])


@pytest.mark.parametrize("seed", range(15))
def test_random_cones_square_to_zero(seed):
    fd = random_fundamental_domain(seed, max_rank=3, max_degree=3)
    cone = mapping_cone(fd.D(), fd.E(), fd.g(), fd.h())
    assert validate_homological_data(cone).passed


def test_cone_over_twisted_coefficients_squares_to_zero():
    fd = generate_example("klein-bottle")
    cone = mapping_cone(fd.D(), fd.E(), fd.g(), fd.h())
    assert validate_homological_data(cone).passed


def test_cone_rejects_non_chain_maps():
    D = BasedComplex(ZZ, [1, 1], [M([[1]])])
    E = BasedComplex(ZZ, [1, 1], [M([[2]])])
    g = [Matrix.identity(ZZ, 1)] * 2
    with pytest.raises(InvalidComplex):
        mapping_cone(D, E, g, [Matrix.zeros(ZZ, 1, 1)] * 2)


# --- deformation lemma -----------------------------------------------------------

def _scalar_three_block(a, b, d_f, c=1):
    return ThreeBlockComplex(ZZ, [1, 0], [1, 1], [0, 1],
                             a={1: M([[a]])}, c={1: M([[c]])}, d_F={1: M([[d_f]])}, b={1: M([[b]])})


@pytest.mark.parametrize("a,b,d_f", [(2, 3, 5), (0, 3, 1), (4, 0, -2), (-1, -1, 0)])
def test_scalar_deformation(a, b, d_f):
    out = deform(_scalar_three_block(a, b, d_f), {1: M([[1]])})
    assert out.d(1) == M([[d_f - b * a]])
    assert out.ranks == [1, 1]


def test_wrong_inverse_is_rejected():
    with pytest.raises(NotInvertible):
        deform(_scalar_three_block(1, 1, 1, c=-1), {1: M([[1]])})
    with pytest.raises(NotInvertible):
        deform(_scalar_three_block(1, 1, 1), {})


@pytest.mark.parametrize("seed", range(60))
def test_random_three_block_identities(seed):
    three, cinv = random_three_block(trial_rng(seed, "test", 0), max_rank=4, bound=3)
    out = deform(three, cinv)
    report = verify_deformation(out)
    assert report.passed
    names = {"d^ d^ = 0", "u d = d^ u", "d v = v d^", "u v = 1", "v u = 1 - d w - w d"}
    assert {f.identity for f in report.failures} <= names


@pytest.mark.parametrize("seed", range(10))
def test_deformation_with_zero_a_or_b_keeps_d_F(seed):
    three, cinv = random_three_block(trial_rng(seed, "zero-ab", 0), max_rank=3, bound=2)
    n = three.top + 1
    ranks = [three.ranks[p] for p in ("D", "F", "Dp")]
    for drop in ("a", "b"):
        maps = {k: dict(v) for k, v in three.maps.items()}
        maps[drop] = {}
        # a = 0 (or b = 0) keeps d^2 = 0 only if the c-relation still holds; skip otherwise
        try:
            t2 = ThreeBlockComplex(ZZ, *ranks, **maps)
        except InvalidComplex:
            continue
        out = deform(t2, cinv)
        for i in range(1, n):
            assert out.d(i) == t2.block("d_F", i)


# --- the deformed complex of a fundamental domain ------------------------------------


def _split(fd):
    return fd.D(), fd.E(), fd.g(), fd.h()


def test_cancelling_pair_gives_z_minus_one():
    out = localized_complex(*_split(generate_example("circle-cancelling-pair")))
    assert out.ranks[:2] == [1, 1]
    assert out.d(1)[0, 0] == z - 1
    cone = mapping_cone(*_split(generate_example("circle-cancelling-pair")))
    assert ranks_over_Qz(cone_over_R(cone)) == [0, 0, 0]


def test_zero_h_gives_quotient_complex():
    D = BasedComplex(ZZ, [1, 1], [M([[0]])])
    E = BasedComplex(ZZ, [2, 2], [M([[0, 1], [0, 3]])])
    g = [M([[1], [0]]), M([[1], [0]])]
    h = [Matrix.zeros(ZZ, 2, 1)] * 2
    out = localized_complex(D, E, g, h)
    assert out.d(1) == Matrix(RR, [[RR.coerce(3)]])


def test_empty_D_leaves_E_unchanged():
    E = BasedComplex(ZZ, [2, 1], [M([[2], [-1]])])
    D = BasedComplex(ZZ, [0, 0])
    g = h = [Matrix.zeros(ZZ, 2, 0), Matrix.zeros(ZZ, 1, 0)]
    out = localized_complex(D, E, g, h)
    assert out.ranks[:2] == [2, 1]
    assert out.d(1) == E.d(1).map(RR.coerce, RR)


def test_g_must_be_the_standard_inclusion():
    E = BasedComplex(ZZ, [2])
    with pytest.raises(NotSplit):
        localized_complex(point(), E, [M([[0], [1]])], [M([[0], [0]])])


def test_basis_split_reorders_E():
    E = BasedComplex(ZZ, [2])
    out = localized_complex(point(), E, [M([[0], [1]])], [M([[0], [0]])], basis_split=[[1]])
    assert out.ranks[0] == 1


def test_lower_left_block_must_vanish():
    D = BasedComplex(ZZ, [1, 1])
    E = BasedComplex(ZZ, [2, 2], [M([[0, 0], [1, 0]])])
    g = [M([[1], [0]]), M([[1], [0]])]
    h = [Matrix.zeros(ZZ, 2, 1)] * 2
    with pytest.raises(NotUpperTriangular):
        localized_complex(D, E, g, h)


@pytest.mark.parametrize("seed", range(30))
def test_ranks_and_homology_agree_with_the_cone(seed):
    fd = random_fundamental_domain(seed, max_rank=3, max_degree=3)
    out = localized_complex(*_split(fd))
    for i, r in enumerate(out.ranks):
        assert r == fd.E().rank(i) - fd.D().rank(i)
    assert validate_homological_data(out.complex).passed
    cone = cone_over_R(mapping_cone(*_split(fd)))
    b_hat = ranks_over_Qz(out.complex)
    b_cone = ranks_over_Qz(cone)
    width = max(len(b_hat), len(b_cone))
    pad = lambda b: b + [0] * (width - len(b))  # noqa: E731
    assert pad(b_hat) == pad(b_cone)


@pytest.mark.parametrize("seed", range(10))
def test_closed_formula_matches_three_block_deformation(seed):
    fd = random_fundamental_domain(seed, max_rank=3, max_degree=2)
    out = localized_complex(*_split(fd))
    E, D = fd.E(), fd.D()
    for i in range(1, E.top + 1):
        nD0, nD1 = D.rank(i - 1), D.rank(i)
        e_prev = fd.h()[i - 1].submatrix(range(nD0), range(nD0))
        f_prev = fd.h()[i - 1].submatrix(range(nD0, E.rank(i - 1)), range(nD0))
        a = E.d(i).submatrix(range(nD0), range(nD1, E.rank(i))).map(RR.coerce, RR)
        d_F = E.d(i).submatrix(range(nD0, E.rank(i - 1)), range(nD1, E.rank(i))).map(RR.coerce, RR)
        b = -f_prev.map(lambda x: RationalR.z_power(1, x), RR)
        cinv = invert_exact_R(SigmaMatrix(e_prev)).matrix
        assert out.d(i) == d_F - b * cinv * a


def test_twisted_instance_is_verified_through_the_precision():
    fd = generate_example("klein-bottle")
    out = localized_complex(*_split(fd), precision=12)
    assert out.precision == 12
    assert validate_homological_data(out.complex).passed


def test_complex_json_shape():
    c = BasedComplex(ZZ, [1, 1], [M([[4]])])
    data = c.to_json()
    assert data["ranks"] == [1, 1]
    assert data["differentials"] == [[["4"]]]


def test_interface_alias():
    import novikov
    assert novikov.theorem_2_4 is localized_complex
