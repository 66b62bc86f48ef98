import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sarkisov.groups import (
    FiniteGroup,
    OrderBoundExceeded,
    alternating,
    automorphisms,
    catalog_fingerprints,
    construct,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    from_json,
    ga1f5,
    has_near_abelian_rank2_subgroup,
    index_le_k_fixing_subgroup_exists,
    iso_from_label,
    min_faithful_linear_degree,
    normal_subgroups,
    perm_group,
    recognize,
    subgroups,
    subgroups_meeting,
    symmetric,
)


def brute_subgroups(g: FiniteGroup) -> set[frozenset]:
    """Every subgroup as the closure of at most two elements, when g is 2-generated per subgroup.

    Used only for small groups where every subgroup is generated by <= 3 elements.
    """
    out = set()
    for k in range(0, 4):
        for gens in itertools.combinations(range(g.n), k):
            m = g.closure_mask(list(gens))
            out.add(frozenset(i for i in range(g.n) if (m >> i) & 1))
    return out


def dihedral_subgroup_count(n: int) -> int:
    # cyclic <r^d> for d | n, and dihedral <r^d, r^k s> for d | n, 0 <= k < d
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return len(divs) + sum(divs)


# -- subgroup enumeration ------------------------------------------------------


def test_cyclic6_has_one_subgroup_per_divisor():
    lat = subgroups(cyclic(6))
    assert sorted(h.order for h in lat) == [1, 2, 3, 6]


def test_d6_sixteen_subgroups():
    g = dihedral(6)
    lat = list(subgroups(g))
    assert len(lat) == 16
    rot = next(h for h in lat if h.order == 6 and recognize(h.as_group()).tag == "Cyclic")
    rotation_subgroups = [h for h in lat if h <= rot]
    reflection_subgroups = [h for h in lat if h.order == 2 and not h <= rot]
    dihedral_subgroups = [h for h in lat if not recognize(h.as_group()).tag == "Cyclic"]
    assert (len(rotation_subgroups), len(reflection_subgroups), len(dihedral_subgroups)) == (4, 6, 6)


def test_trivial_group_has_one_subgroup():
    assert len(subgroups(cyclic(1))) == 1


@pytest.mark.parametrize("n", range(1, 25))
def test_dihedral_subgroup_counts_match_divisor_formula(n):
    assert len(subgroups(dihedral(n))) == dihedral_subgroup_count(n)


@pytest.mark.parametrize("g", [dihedral(4), alternating(4), symmetric(4), direct_product([cyclic(2), cyclic(4)]), ga1f5()])
def test_subgroups_agree_with_brute_force(g):
    ours = {frozenset(h.elements) for h in subgroups(g)}
    assert ours == brute_subgroups(g)


@pytest.mark.parametrize("g", [symmetric(4), dihedral(6), alternating(5), ga1f5()])
def test_enumerated_subgroups_are_closed_restrictions(g):
    for h in subgroups(g):
        els = h.elements
        assert 0 in els
        assert g.n % len(els) == 0
        sub = h.as_group()
        assert sub.check_axioms()
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                assert els[int(sub.table[i, j])] == int(g.table[a, b])


def test_subgroups_meeting_matches_filtered_lattice():
    g = symmetric(4)
    seeds = [x for x in range(g.n) if g.element_orders[x] == 4]
    want = {h.mask for h in subgroups(g) if any(x in h for x in seeds)}
    assert {h.mask for h in subgroups_meeting(g, seeds)} == want


def test_subgroups_respects_bound():
    with pytest.raises(OrderBoundExceeded):
        subgroups(symmetric(5), bound=100)


# -- normal subgroups ----------------------------------------------------------


def test_d5_normal_subgroups():
    orders = sorted(h.order for h in normal_subgroups(dihedral(5)))
    assert orders == [1, 5, 10]


def test_d6_normal_subgroups():
    normals = normal_subgroups(dihedral(6))
    tags = Counter((h.order, str(recognize(h.as_group()))) for h in normals)
    assert tags == Counter({(1, "C1"): 1, (2, "C2"): 1, (3, "C3"): 1, (6, "C6"): 1, (6, "D3"): 2, (12, "D6"): 1})


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_odd_dihedral_normals_are_rotation_subgroups(n):
    normals = normal_subgroups(dihedral(n))
    assert all(h.order == 2 * n or all(dihedral(n).element_orders[x] != 2 for x in h.elements) for h in normals)


def test_abelian_groups_all_subgroups_normal():
    g = direct_product([cyclic(4), cyclic(6)])
    assert len(normal_subgroups(g)) == len(subgroups(g))


def test_normality_flags_match_conjugation():
    g = symmetric(4)
    lat = subgroups(g)
    for h, flag in zip(lat, lat.normal_flags):
        conj = all(g.conjugate_mask(h.mask, x) == h.mask for x in range(g.n))
        assert flag == conj


# -- recognition ---------------------------------------------------------------


def histogram(g):
    return dict(sorted(Counter(g.element_orders).items()))


def test_order_twelve_histograms_differ():
    assert histogram(alternating(4)) == {1: 1, 2: 3, 3: 8}
    assert histogram(dihedral(6)) == {1: 1, 2: 7, 3: 2, 6: 2}
    assert recognize(cyclic(12)).tag == "Cyclic"
    assert recognize(alternating(4)).tag == "A4"
    assert str(recognize(dihedral(6))) == "D6"


def test_order_twenty_separation():
    fps = {recognize(g).fingerprint for g in (ga1f5(), dihedral(10), cyclic(20))}
    assert len(fps) == 3
    assert recognize(ga1f5()).tag == "GA1F5"


@pytest.mark.parametrize(
    "tag,n,expected",
    [("C", 7, "C7"), ("D", 6, "D6"), ("V4", None, "Klein4"), ("A4", None, "A4"), ("S4", None, "S4"),
     ("A5", None, "A5"), ("S5", None, "S5"), ("GA1F5", None, "GA1F5"), ("E", 3, "C2^3")],
)
def test_recognize_construct_round_trip(tag, n, expected):
    assert str(recognize(construct(tag, n))) == expected


def test_catalog_fingerprints_pairwise_distinct():
    for order in range(1, 241):
        fps = [fp for _, _, fp in catalog_fingerprints(order)]
        assert len(fps) == len(set(fps)), order


def test_recognize_invariant_under_relabelling():
    g = symmetric(4)
    rng = np.random.default_rng(7)
    perm = np.concatenate([[0], 1 + rng.permutation(g.n - 1)])
    inv = np.argsort(perm)
    table = perm[g.table[np.ix_(inv, inv)]]
    h = FiniteGroup(table)
    assert recognize(h) == recognize(g)


def test_non_catalog_group_is_other():
    c = recognize(direct_product([cyclic(3), symmetric(3)]))
    assert c.tag == "Other" and c.order == 18


# -- faithful degree -----------------------------------------------------------


def test_min_faithful_linear_degree_table():
    assert min_faithful_linear_degree(iso_from_label("C", 9)) == 1
    assert min_faithful_linear_degree(iso_from_label("D", 5)) == 2
    assert min_faithful_linear_degree(iso_from_label("A5")) == 3
    assert min_faithful_linear_degree(iso_from_label("A4")) == 3
    assert min_faithful_linear_degree(iso_from_label("S5")) == 4
    assert min_faithful_linear_degree(recognize(direct_product([cyclic(2), cyclic(4)]))) == 2


def irreducible_degree_candidates(g: FiniteGroup) -> list[tuple[int, ...]]:
    """Multisets of irreducible degrees allowed by class count, linear-character count and sum of squares."""
    classes = len(g.conjugacy_classes)
    linear = g.n // bin(g.derived_mask).count("1")
    rest, slots = g.n - linear, classes - linear
    divs = [d for d in range(2, g.n) if g.n % d == 0 and d * d <= rest]
    return [c for c in itertools.combinations_with_replacement(divs, slots) if sum(d * d for d in c) == rest]


def test_a4_has_no_faithful_two_dimensional_representation():
    a4 = alternating(4)
    # degrees must be 1,1,1,3: every 2-dim rep is a sum of linear characters, which kill [A4, A4] = V4
    assert irreducible_degree_candidates(a4) == [(3,)]
    assert bin(a4.derived_mask).count("1") == 4
    assert min_faithful_linear_degree(recognize(a4)) == 3


def test_a5_has_no_two_dimensional_irreducible():
    cands = irreducible_degree_candidates(alternating(5))
    assert cands == [(3, 3, 4, 5)]
    assert min_faithful_linear_degree(recognize(alternating(5))) == 3


# -- near abelian subgroups ----------------------------------------------------


def test_near_abelian_examples():
    assert has_near_abelian_rank2_subgroup(direct_product([cyclic(4), cyclic(2)]))
    assert not has_near_abelian_rank2_subgroup(direct_product([dihedral(5), dihedral(5)]))
    assert not has_near_abelian_rank2_subgroup(alternating(4))


def test_index_fixing_examples():
    assert index_le_k_fixing_subgroup_exists(cyclic(6), 1)
    assert not index_le_k_fixing_subgroup_exists(direct_product([alternating(4), alternating(4)]), 4)
    assert index_le_k_fixing_subgroup_exists(dihedral(3), 2)


def _oracle_index_le_k(g, k):
    for h in subgroups(g):
        if h.order * k >= g.n:
            sub = h.as_group()
            if sub.is_abelian and len(sub.abelian_invariants) <= 2:
                return True
    return False


@pytest.mark.parametrize("g", [dihedral(6), symmetric(4), alternating(5), direct_product([cyclic(2)] * 3), ga1f5()])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_index_fixing_matches_lattice_scan(g, k):
    assert index_le_k_fixing_subgroup_exists(g, k) == _oracle_index_le_k(g, k)


# -- descriptors and automorphisms ---------------------------------------------


@pytest.mark.parametrize(
    "desc",
    [{"kind": "catalog", "tag": "D", "n": 6}, {"kind": "table", "mul": cyclic(5).table.tolist()},
     {"kind": "product", "factors": [{"kind": "catalog", "tag": "C", "n": 2}, {"kind": "catalog", "tag": "C", "n": 3}]}],
)
def test_json_descriptors_round_trip(desc):
    g = from_json(desc)
    h = from_json(g.to_json())
    assert np.array_equal(g.table, h.table)


def test_automorphism_counts():
    assert len(automorphisms(cyclic(12))) == 4
    assert len(automorphisms(dihedral(2))) == 6
    assert len(automorphisms(dihedral(5))) == 20
    assert len(automorphisms(alternating(4))) == 24


# -- properties ----------------------------------------------------------------


small_groups = st.sampled_from(
    [cyclic(8), dihedral(7), dihedral(8), alternating(4), symmetric(4), ga1f5(), elementary_abelian(2, 3),
     direct_product([cyclic(3), cyclic(3)]), perm_group([(1, 2, 0, 3), (0, 1, 3, 2)])]
)


@given(small_groups, st.data())
def test_group_axioms_and_generated_closure(g, data):
    assert g.check_axioms()
    a = data.draw(st.integers(0, g.n - 1))
    b = data.draw(st.integers(0, g.n - 1))
    m = g.closure_mask([a, b])
    sub = g.subgroup(m)
    assert g.n % sub.order == 0
    assert g.closure_mask(g.generators) == (1 << g.n) - 1


@given(small_groups, st.data())
def test_lagrange_and_meet_closed(g, data):
    lat = list(subgroups(g))
    h = data.draw(st.sampled_from(lat))
    k = data.draw(st.sampled_from(lat))
    assert g.n % h.order == 0
    assert g.is_subgroup_mask(h.mask & k.mask)
