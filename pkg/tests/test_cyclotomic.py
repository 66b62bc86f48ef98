import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sarkisov.cyclotomic import (
    ALL,
    CycNum,
    DegenerateInput,
    Dim1,
    Mat,
    ProjPoint,
    common_invariant_subspace,
    cross_ratio,
    eigen_fixed_points,
    eigenvalues,
    sqrt5,
)

from oracles import orbit_span_oracle

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 20]


@st.composite
def cycnums(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))
    den = draw(st.integers(1, 5))
    return CycNum(n, coeffs, den)


def approx(x: CycNum) -> complex:
    return complex(x)


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-8 * (1 + abs(a) + abs(b))


# -- field axioms and the complex embedding ------------------------------------


@given(cycnums(), cycnums(), cycnums())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(cycnums())
def test_inverse(a):
    assume(not a.is_zero())
    assert a * a.inverse() == 1


@given(cycnums(), cycnums())
def test_embedding_is_a_homomorphism(a, b):
    assert close(approx(a + b), approx(a) + approx(b))
    assert close(approx(a * b), approx(a) * approx(b))


@given(cycnums(), cycnums())
def test_equality_iff_equal_representation(a, b):
    same_value = close(approx(a), approx(b)) and close(approx(a.galois(11)), approx(b.galois(11)))
    if a == b:
        assert a.to_json() == b.to_json() and hash(a) == hash(b)
    if a.to_json() == b.to_json():
        assert same_value


@given(cycnums(), cycnums())
def test_conductor_of_results_divides_lcm(a, b):
    m = math.lcm(a.conductor, b.conductor)
    for r in (a + b, a * b, a - b):
        assert m % r.conductor == 0


@pytest.mark.parametrize("n,k,m", [(4, 1, 12), (3, 2, 15), (5, 3, 20), (6, 1, 12)])
def test_same_root_two_ways(n, k, m):
    a = CycNum.zeta(n, k)
    b = CycNum.zeta(m, k * m // n)
    assert a == b and a.to_json() == b.to_json()


def test_canonical_conductor_drops_to_true_field():
    assert (CycNum.zeta(8) + CycNum.zeta(8, 7)).conductor == 8
    assert (CycNum.zeta(8) ** 2).conductor == 4
    assert (CycNum.zeta(3) + CycNum.zeta(3, 2)) == -1
    assert sqrt5() * sqrt5() == 5


@given(cycnums())
def test_json_round_trip(a):
    assert CycNum.from_json(a.to_json()) == a


@given(cycnums(), st.sampled_from([1, 11, 13, 17]))
def test_galois_is_a_field_automorphism(a, k):
    b = CycNum.zeta(4) + a
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)


# -- fixed points on P^1 -------------------------------------------------------


def test_rotation_fixed_points():
    for n in (3, 5, 12):
        z = CycNum.zeta(n)
        pts = eigen_fixed_points(Mat.diag(z, z.inverse()))
        assert pts == {ProjPoint([1, 0]), ProjPoint([0, 1])}


def test_identity_fixes_everything():
    assert eigen_fixed_points(Mat.identity(2)) is ALL


def test_antidiagonal_fixed_points():
    # eigenvectors of [[0,1],[1,0]] by hand: (1,1) and (1,-1)
    assert eigen_fixed_points(Mat([[0, 1], [1, 0]])) == {ProjPoint([1, 1]), ProjPoint([1, -1])}


@st.composite
def finite_order_mats(draw):
    n = draw(st.sampled_from([2, 3, 4, 5, 6, 8]))
    a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
    d = Mat.diag(CycNum.zeta(n, a), CycNum.zeta(n, b))
    p = Mat([[1, draw(st.integers(-2, 2))], [draw(st.integers(-2, 2)), 1]])
    assume(not p.det().is_zero())
    return p @ d @ p.inverse()


@given(finite_order_mats())
def test_eigen_fixed_points_are_fixed(m):
    pts = eigen_fixed_points(m)
    if pts is ALL:
        assert m.is_scalar()
        return
    assert 1 <= len(pts) <= 2
    for p in pts:
        assert m.act(p) == p


# -- invariant subspaces in dimension 3 ----------------------------------------


W = CycNum.zeta(3)
DIAG = Mat.diag(1, W, W * W)
CYC = Mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_diagonal_generators_have_invariant_line():
    r = common_invariant_subspace([DIAG, Mat.diag(1, -1, 1)])
    assert isinstance(r, Dim1) and r.point == ProjPoint([1, 0, 0])


def test_heisenberg_pair_is_irreducible():
    assert common_invariant_subspace([DIAG, CYC]) is None


def test_scalar_reports_first_basis_line():
    r = common_invariant_subspace([Mat.diag(W, W, W)])
    assert isinstance(r, Dim1) and r.point == ProjPoint([1, 0, 0])


@pytest.mark.parametrize(
    "gens",
    [[DIAG, CYC], [Mat.diag(1, -1, -1), CYC], [Mat.diag(1, -1, 1)], [DIAG], [Mat.diag(1, 1, -1), Mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]])]],
)
def test_common_invariant_subspace_against_orbit_span(gens):
    r = common_invariant_subspace(gens)
    if r is None:
        assert orbit_span_oracle(gens)
    else:
        assert all(g.act(r.point) == r.point for g in gens)


# -- cross-ratio ---------------------------------------------------------------


def test_cross_ratio_normalization():
    for lam in (Fraction(2), Fraction(-1, 3), CycNum.zeta(5)):
        assert cross_ratio(ProjPoint([0, 1]), ProjPoint([1, 1]), ProjPoint([1, 0]), ProjPoint([lam, 1])) == lam


def test_cross_ratio_matches_rational_formula():
    # with affine coordinates z = x/y: (s - p)(q - r) / ((s - r)(q - p)), points at infinity dropped
    p, q, r, s = ProjPoint([1, 0]), ProjPoint([0, 1]), ProjPoint([1, 1]), ProjPoint([1, -1])
    # p = oo: the ratio reduces to (q - r)/(s - r) = (0 - 1)/(-1 - 1) = 1/2
    assert cross_ratio(p, q, r, s) == Fraction(1, 2)


def test_cross_ratio_rejects_repeated_points():
    with pytest.raises(DegenerateInput):
        cross_ratio(ProjPoint([1, 0]), ProjPoint([1, 0]), ProjPoint([0, 1]), ProjPoint([1, 1]))


@given(finite_order_mats(), st.lists(st.integers(-4, 4), min_size=4, max_size=4, unique=True))
def test_cross_ratio_mobius_invariant(m, xs):
    pts = [ProjPoint([x, 1]) for x in xs]
    assert cross_ratio(*pts) == cross_ratio(*[m.act(p) for p in pts])


# -- eigenvalues ---------------------------------------------------------------


def test_eigenvalues_of_permutation_matrix():
    lams = set(eigenvalues(CYC))
    assert lams == {CycNum.rational(1), W, W * W}


def test_projective_point_normalization():
    p = ProjPoint([CycNum.zeta(4), 2])
    assert p[0] == 1 and p == ProjPoint([1, -2 * CycNum.zeta(4)])
