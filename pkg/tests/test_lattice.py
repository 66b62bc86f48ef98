import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sarkisov.cyclotomic import ProjPoint
from sarkisov.groups import abelian_invariant_factors, subgroups
from sarkisov.lattice import (
    BASEPOINT,
    EXPECTED_COUNTS,
    MINIMAL_IMAGE_NAMES,
    TORUS_DEN,
    HexGroup,
    NotIsometry,
    PicLattice,
    d6_element,
    hex_act,
    hex_fixed_points,
    hex_invariant_rank,
    hex_minimal,
    hex_mul,
    hexagon_group,
    hexagon_image,
    image_generators,
    image_name,
    invariant_rank,
    minus_one_curves,
    minus_one_curves_certified,
    named_images,
    on_surface,
    pic_matrix,
    torus_part,
    vertex_perm,
)


def classical_curves(r):
    """The seven shapes of exceptional classes on a blow-up of at most 8 points."""
    shapes = [  # (a, multiplicities sorted descending, padded with zeros)
        (0, [-1]),
        (1, [1, 1]),
        (2, [1] * 5),
        (3, [2] + [1] * 6),
        (4, [2] * 3 + [1] * 5),
        (5, [2] * 6 + [1] * 2),
        (6, [3] + [2] * 7),
    ]
    out = set()
    for a, mult in shapes:
        if len(mult) > r:
            continue
        for perm in set(itertools.permutations(mult + [0] * (r - len(mult)))):
            out.add((a,) + tuple(-m for m in perm))
    return out


@pytest.mark.parametrize("d", range(1, 10))
def test_exceptional_curve_counts(d):
    curves, _ = minus_one_curves_certified(d)
    assert len(curves) == EXPECTED_COUNTS[d]
    assert set(curves) == classical_curves(9 - d)


@pytest.mark.parametrize("d", range(1, 8))
def test_exceptional_curves_satisfy_adjunction(d):
    lat = PicLattice(d)
    for c in minus_one_curves(d):
        assert lat.dot(c, c) == -1
        assert lat.dot(c, lat.K) == -1


@pytest.mark.parametrize("d", range(1, 10))
def test_lattice_invariants(d):
    lat = PicLattice(d, quadric=False)
    assert lat.dot(lat.K, lat.K) == d
    assert lat.signature() == (1, lat.rank - 1)


def test_quadric_lattice():
    q = PicLattice(8)
    assert q.rank == 2 and q.basis == ["f1", "f2"]
    assert q.dot(q.K, q.K) == 8
    assert not q.never_minimal
    assert PicLattice(8, quadric=False).never_minimal
    assert PicLattice(7).never_minimal


def test_invariant_rank_basic():
    q = PicLattice(8)
    assert invariant_rank(q, []) == 2
    assert invariant_rank(q, [[[0, 1], [1, 0]]]) == 1
    with pytest.raises(NotIsometry):
        invariant_rank(q, [[[1, 1], [0, 1]]])
    p5 = PicLattice(5)
    transposition = np.eye(5, dtype=int)
    transposition[[1, 2]] = transposition[[2, 1]]
    assert invariant_rank(p5, [transposition.tolist()]) == 4


def test_invariant_rank_bad_shape():
    with pytest.raises(NotIsometry):
        invariant_rank(PicLattice(6), [[[1, 0], [0, 1]]])


# -- hexagon model ---------------------------------------------------------------


def hex_elements():
    torus = st.tuples(st.integers(0, 11), st.integers(0, 11)).map(lambda t: (t[0] * TORUS_DEN // 12, t[1] * TORUS_DEN // 12))
    perms = st.sampled_from(list(itertools.permutations(range(3))))
    return st.tuples(torus, perms, st.integers(0, 1))


def compose(p, q):
    return tuple(p[q[i]] for i in range(6))


@given(hex_elements(), hex_elements(), hex_elements())
def test_hex_mul_associative(g, h, k):
    assert hex_mul(hex_mul(g, h), k) == hex_mul(g, hex_mul(h, k))


@given(hex_elements(), hex_elements())
def test_vertex_perm_is_homomorphism(g, h):
    assert vertex_perm(hex_mul(g, h)) == compose(vertex_perm(g), vertex_perm(h))


@given(hex_elements(), hex_elements())
def test_pic_matrix_is_homomorphism_and_isometry(g, h):
    lat = PicLattice(6)
    A, B = np.array(pic_matrix(g)), np.array(pic_matrix(h))
    assert (np.array(pic_matrix(hex_mul(g, h))) == A @ B).all()
    assert (A.T @ lat.gram @ A == lat.gram).all()
    assert (A @ lat.K == lat.K).all()


@given(hex_elements(), hex_elements())
def test_exact_action_is_homomorphism(g, h):
    rng = random.Random(hash((g, h)))
    a, b = rng.randint(1, 9), rng.randint(1, 9)
    pt = (ProjPoint([1, a, b]), ProjPoint([a * b, b, a]))
    assert on_surface(pt)
    assert hex_act(hex_mul(g, h), pt) == hex_act(g, hex_act(h, pt))
    assert on_surface(hex_act(g, pt))


def test_hexagon_has_sixteen_subgroups_and_three_minimal_ones():
    g, _ = hexagon_group()
    subs = subgroups(g)
    assert len(subs) == 16
    lifts = {vertex_perm(x): x for x in (d6_element(k, e) for k in range(6) for e in range(2))}
    inv = {v: k for k, v in hexagon_group()[1].items()}
    minimal = []
    for h in subs:
        gens = [lifts[inv[i]] for i in range(12) if (h.mask >> i) & 1]
        G = HexGroup.generated(gens)
        assert hexagon_image(G) == h.mask
        assert hex_minimal(G) == (hex_invariant_rank(G) == 1)
        if hex_minimal(G):
            minimal.append(image_name(h.mask))
    assert sorted(minimal) == sorted(MINIMAL_IMAGE_NAMES)


def test_named_images_orders():
    orders = {k: bin(v).count("1") for k, v in named_images().items()}
    assert orders == {"1": 1, "<r>": 6, "<r^2,s>": 6, "<r^2,rs>": 6, "<r,s>": 12, "<r^3,s>": 4, "<r^2>": 3, "<r^3>": 2}


def test_coordinate_permutations_give_non_minimal_s3():
    # permuting coordinates of both factors simultaneously fixes -K and the class h
    gens = [((0, 0), (1, 2, 0), 0), ((0, 0), (1, 0, 2), 0)]
    G = HexGroup.generated(gens)
    assert G.order == 6
    assert image_name(hexagon_image(G)) == "<r^2,rs>"
    assert hex_invariant_rank(G) == 2


@pytest.mark.parametrize("name", MINIMAL_IMAGE_NAMES)
def test_standard_lifts_fix_basepoint(name):
    G = HexGroup.generated(image_generators(name))
    assert BASEPOINT in hex_fixed_points(G)
    assert torus_part(G) == [((0, 0), (0, 1, 2), 0)]


def test_torus_twist_moves_fixed_points():
    third = TORUS_DEN // 3
    G = HexGroup.generated([hex_mul(((third, 2 * third), (0, 1, 2), 0), d6_element(1, 0))])
    pts = hex_fixed_points(G)
    assert all(on_surface(p) for p in pts)
    assert all(hex_act(g, p) == p for p in pts for g in G.elements)


def test_torus_part_is_normal_with_image_quotient():
    third = TORUS_DEN // 3
    gens = image_generators("<r,s>") + [((third, 0), (0, 1, 2), 0)]
    G = HexGroup.generated(gens)
    T = torus_part(G)
    assert len(T) * 12 == G.order
    Tset = set(T)
    for g in G.generators:
        for t in T:
            ginv = next(x for x in G.elements if hex_mul(g, x) == ((0, 0), (0, 1, 2), 0))
            assert hex_mul(hex_mul(g, t), ginv) in Tset
    assert abelian_invariant_factors(HexGroup(T).materialize()) == (3, 3)
