import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sarkisov.cyclotomic import DegenerateInput, Mat, ProjPoint, cross_ratio
from sarkisov.groups import normal_subgroups, recognize
from sarkisov.lattice import PicLattice, invariant_rank
from sarkisov.quadric import (
    TAU,
    GoursatDatum,
    InvalidDatum,
    NoSwapExtension,
    QuadAut,
    QuadGroup,
    base_for,
    build_group,
    degree4_orbit_general_position,
    enumerate_data,
    find_degree2_orbit_general_position,
    lattice_action,
    swap_only,
)
from sarkisov.verify import quad_universe

Z, O = ProjPoint([1, 0]), ProjPoint([0, 1])


def kernel(label, n, order, tag=None):
    F = base_for(label, n).F.group
    for h in normal_subgroups(F):
        if h.order == order and (tag is None or recognize(h.as_group()).tag == tag):
            return h.mask
    raise LookupError


def datum(label, n, K_order, tag=None, twist=None, phi=None):
    K = kernel(label, n, K_order, tag)
    F = base_for(label, n).F.group
    q, _ = F.quotient(K)
    return GoursatDatum(label, n, K, tuple(range(q.n)) if phi is None else phi, twist)


# -- element algebra -----------------------------------------------------------


def random_aut(rng, label, n):
    base = base_for(label, n)
    return base.aut((rng.randrange(base.n), rng.randrange(base.n), rng.randrange(2)))


def random_point(rng):
    def one():
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        return ProjPoint([a, b]) if (a, b) != (0, 0) else ProjPoint([1, 0])

    return one(), one()


def test_composition_law_matches_pointwise_action():
    rng = random.Random(2024)
    labels = [("C", 5), ("D", 4), ("D", 6), ("A4", None), ("S4", None), ("A5", None)]
    checked = 0
    for _ in range(100):
        lab = rng.choice(labels)
        f, g = random_aut(rng, *lab), random_aut(rng, *lab)
        for _ in range(3):
            p = random_point(rng)
            assert (f @ g).act(p) == f.act(g.act(p))
            checked += 1
    assert checked >= 100


def test_triple_multiplication_matches_matrices():
    rng = random.Random(5)
    base = base_for("S4", None)
    for _ in range(200):
        x = (rng.randrange(24), rng.randrange(24), rng.randrange(2))
        y = (rng.randrange(24), rng.randrange(24), rng.randrange(2))
        assert base.aut(base.mul(x, y)).proj_equal(base.aut(x) @ base.aut(y))


def test_tau_swaps_coordinates():
    assert TAU.act((Z, O)) == (O, Z)
    assert (TAU @ TAU).proj_equal(QuadAut(Mat.identity(2), Mat.identity(2), 0))


# -- build_group ---------------------------------------------------------------


def test_cyclic_full_kernel_order():
    G = build_group(datum("C", 5, 5))
    assert G.order == 50


def test_klein_with_c2_kernel():
    d = datum("D", 2, 2)
    G = build_group(d)
    assert G.order == 16
    g0 = QuadGroup(G.base, G.g0())
    assert str(recognize(g0.materialize())) == "C2^3"


def test_cyclic_diagonal_has_normalized_swap():
    for n in (3, 4, 7):
        d = datum("C", n, 1)
        G = build_group(d)
        assert G.order == 2 * n
        assert all(a == b for a, b, s in G.elements if not s)  # diagonal G0
        assert any(s and a == 0 for a, b, s in G.elements)  # (x, y) -> (y, g(x))


@pytest.mark.parametrize("label,n", [("C", k) for k in range(2, 13)] + [("D", k) for k in range(2, 13)] + [("A4", None), ("S4", None), ("A5", None)])
def test_order_formula_on_every_datum(label, n):
    for d in enumerate_data(label, n):
        G = build_group(d)
        assert G.order == 2 * d.k_order**2 * d.d_order == d.order()


def test_exact_sequence_small_data():
    for d in enumerate_data("D", 6)[:12] + enumerate_data("A4")[:6]:
        G = build_group(d)
        g0 = QuadGroup(G.base, G.g0())
        kk = {(a, b) for a, b, s in g0.elements if (d.K >> a) & 1 and (d.K >> b) & 1}
        assert len(kk) == d.k_order**2
        assert g0.order // len(kk) == d.d_order
        # K x K is exactly {(a, 1)} . {(1, b)}
        k1 = {a for a, b, s in g0.elements if b == 0}
        k2 = {b for a, b, s in g0.elements if a == 0}
        assert {(a, b) for a in k1 for b in k2} == kk


def test_invalid_datum_rejected():
    F = base_for("S4", None).F.group
    nonnormal = next(h.mask for h in __import__("sarkisov").groups.subgroups(F) if h.order == 2)
    with pytest.raises(InvalidDatum):
        build_group(GoursatDatum("S4", None, nonnormal, (0,)))


def test_missing_swap_extension_reported():
    # an exotic phi on D/K = C5 (x -> x^2) squares to inversion, never to the identity
    d = datum("C", 5, 1)
    q, _ = d.F.group.quotient(d.K)
    phi = tuple(int(q.power(i, 2)) for i in range(q.n))
    with pytest.raises(NoSwapExtension):
        build_group(GoursatDatum("C", 5, d.K, phi))


# -- minimality ----------------------------------------------------------------


def test_minimality():
    G = build_group(datum("D", 5, 5))
    assert G.is_minimal()
    assert not G.strip_swap().is_minimal()
    assert swap_only(base_for("C", 3)).is_minimal()


@pytest.mark.parametrize("d", enumerate_data("D", 4)[:10])
def test_minimality_matches_lattice_rank(d):
    G = build_group(d)
    lat = PicLattice(8)
    assert invariant_rank(lat, lattice_action(G)) == 1
    assert invariant_rank(lat, lattice_action(G.strip_swap())) == 2


# -- fixed loci ----------------------------------------------------------------


def test_cyclic_diagonal_fixes_diagonal_point():
    G = build_group(datum("C", 6, 1, twist=0))
    loc = G.fixed_locus()
    assert not loc.is_empty
    p = loc.sample_point()
    assert p[0] == p[1]
    assert all(G.base.aut(g).act(p) == p for g in G.generators)


def test_swap_only_fixes_diagonal():
    loc = swap_only(base_for("C", 2)).fixed_locus()
    assert loc.variant == "Graph"
    assert loc.curves() == [("graph", 0)]


def test_dihedral_diagonal_has_empty_locus():
    G = build_group(datum("D", 5, 1, twist=0))
    assert G.fixed_locus().variant == "Empty"


@pytest.mark.parametrize("d", enumerate_data("D", 3) + enumerate_data("C", 4) + enumerate_data("D", 2))
def test_fixed_locus_agrees_with_pointwise_check(d):
    G = build_group(d)
    loc = G.fixed_locus()
    auts = [G.base.aut(g) for g in G.generators]
    for i in range(len(G.base.points)):
        for j in range(len(G.base.points)):
            p = G.base.point((i, j))
            fixed = all(a.act(p) == p for a in auts)
            assert fixed == any(G.base.contains(c, (i, j)) for c in loc.components)


# -- orbits in general position ------------------------------------------------


@pytest.mark.parametrize("n,m", [(3, 1), (4, 2), (6, 3), (5, 5), (8, 4)])
def test_dihedral_cyclic_kernel_two_orbit(n, m):
    G = build_group(datum("D", n, m, tag="Cyclic", twist=0))
    orb = find_degree2_orbit_general_position(G)
    (p1, q1), (p2, q2) = orb
    assert p1 != p2 and q1 != q2
    auts = [G.base.aut(g) for g in G.generators]
    assert all({a.act(p) for p in orb} == set(orb) for a in auts)
    # the off-diagonal pair is an orbit as well
    assert all({a.act(p) for p in [(Z, O), (O, Z)]} == {(Z, O), (O, Z)} for a in auts)


def test_klein_full_product_has_no_general_two_orbit():
    G = build_group(datum("D", 2, 4, twist=0))
    assert find_degree2_orbit_general_position(G) is None


def test_swap_only_two_orbit_off_diagonal():
    orb = find_degree2_orbit_general_position(swap_only(base_for("C", 2)))
    (p1, q1), (p2, q2) = orb
    assert (p1, q1) == (q2, p2) and p1 != q1


def test_degree4_general_position_examples():
    diag = [(ProjPoint([k, 1]), ProjPoint([k, 1])) for k in range(4)]
    assert not degree4_orbit_general_position(diag)
    fiber = [(Z, O), (Z, ProjPoint([1, 1])), (O, Z), (ProjPoint([1, 1]), ProjPoint([2, 1]))]
    assert not degree4_orbit_general_position(fiber)
    pts = [(O, O), (ProjPoint([1, 1]), Z), (Z, ProjPoint([1, 1])), (ProjPoint([1, -1]), ProjPoint([1, 3]))]
    xs, ys = [p for p, _ in pts], [q for _, q in pts]
    assert cross_ratio(*xs) != cross_ratio(*ys)
    assert degree4_orbit_general_position(pts)
    with pytest.raises(DegenerateInput):
        degree4_orbit_general_position(pts[:3])


def test_points_on_graph_of_mobius_map_not_general():
    m = Mat([[2, 1], [1, 1]])
    pts = [(ProjPoint([k, 1]), m.act(ProjPoint([k, 1]))) for k in (0, 1, 3, 7)]
    assert not degree4_orbit_general_position(pts)


# -- kernels -------------------------------------------------------------------


def test_kernel_examples():
    G = build_group(datum("D", 6, 3))
    assert bin(G.kernel_K1()).count("1") == 3
    assert G.kernel_K1() == kernel("D", 6, 3)
    assert build_group(datum("D", 6, 1)).kernel_K1() == 1
    full = datum("A4", None, 12)
    assert build_group(full).kernel_K1() == full.K


def test_kernel_monotone_on_random_subgroups():
    G = build_group(datum("D", 6, 6, tag="Dihedral", twist=0))
    rng = random.Random(11)
    for _ in range(40):
        gens = rng.sample(G.elements, 2)
        H = QuadGroup.generated(G.base, gens)
        assert H.kernel_K1() & ~G.kernel_K1() == 0


@given(st.sampled_from(quad_universe(6)), st.data())
def test_swap_coset_normalizes_g0(d, data):
    G = build_group(d)
    base = G.base
    g0 = set(G.g0())
    s = data.draw(st.sampled_from([x for x in G.elements if x[2]]))
    x = data.draw(st.sampled_from(sorted(g0)))
    assert base.mul(base.mul(s, x), base.inverse(s)) in g0
    assert base.mul(s, s) in g0
