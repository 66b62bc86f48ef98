import json
from collections import Counter

import pytest

from sarkisov.groups import OrderBoundExceeded, max_order, recognize, subgroups
from sarkisov.lattice import enumerate_hex_groups, hex_invariant_rank
from sarkisov.quadric import build_group
from sarkisov.rigidity import NOT_RIGID, RIGID, SUPERRIGID, UNKNOWN, pgl3_group, pgl3_realizations
from sarkisov.verify import (
    Pair,
    Verdict,
    VerificationReport,
    _resolution_pairs,
    dp5_minimal_subgroups,
    iter_pairs,
    kernel_monotonicity_check,
    merge_reports,
    quad_universe,
    report_json,
    verify_main_theorem,
    verify_superrigidity_monotonicity,
)


def test_quintic_minimal_subgroups():
    hist = Counter(str(recognize(h.as_group())) for h in dp5_minimal_subgroups())
    assert hist == {"C5": 6, "D5": 6, "GA1F5": 6, "A5": 1, "S5": 1}


def test_quintic_pair_count():
    # S5 contains all 20, A5 contains 6 + 6 + 1, each GA1F5 three, each D5 two, each C5 itself
    assert sum(1 for _ in iter_pairs(["dp5"])) == 20 + 13 + 6 * 3 + 6 * 2 + 6


def test_quadric_pair_count_independent():
    # full subgroup lattice filtered by "contains a ruling swap", on every tabulated group
    bound = 64
    expected = 0
    for d in quad_universe(4):
        if d.order() > bound:
            continue
        fg = build_group(d).materialize()
        expected += sum(1 for h in subgroups(fg) if any(fg.labels[i][2] for i in h.elements))
    pairs = [p for p in iter_pairs(["dp8"], max_n=4, order_bound=bound) if p.g_desc["order"] <= bound]
    assert len(pairs) == expected


def test_sextic_pair_count_independent():
    expected = 0
    for G in enumerate_hex_groups(2):
        fg = G.materialize()
        for h in subgroups(fg):
            if hex_invariant_rank(G.subgroup_from_ids(h.elements)) == 1:
                expected += 1
    assert sum(1 for _ in iter_pairs(["dp6"], max_torsion=2)) == expected


def test_plane_pair_count():
    expected = sum(len(subgroups(pgl3_group(g))) for g in pgl3_realizations().values())
    assert sum(1 for _ in iter_pairs(["p2"])) == expected
    a5 = pgl3_group(pgl3_realizations()["A5-icosahedral"])
    assert len(subgroups(a5)) == 59


def test_main_theorem_small_universe():
    rep = verify_main_theorem(["dp5", "dp6", "dp8", "p2"], max_n=4, order_bound=64, max_torsion=3)
    assert rep.ok and not rep.violations
    assert not rep.flagged
    assert rep.pairs_checked == sum(rep.pairs_by_degree.values())


def test_report_deterministic_and_job_independent():
    a = report_json(verify_main_theorem(["dp5", "p2"], jobs=1))
    b = report_json(verify_main_theorem(["dp5", "p2"], jobs=1))
    c = report_json(verify_main_theorem(["dp5", "p2"], jobs=2))
    assert a == b == c
    assert "runtime" not in json.loads(a)


def test_merge_is_order_independent():
    r1 = verify_main_theorem(["dp5"])
    r2 = verify_main_theorem(["p2"])
    u = {"degrees": ["dp5", "p2"]}
    assert merge_reports([r1, r2], u).to_json() == merge_reports([r2, r1], u).to_json()


def test_ga1f5_policy_does_not_change_outcome():
    for policy in ("unknown", "notrigid"):
        rep = verify_main_theorem(["dp5"], ga1f5_policy=policy)
        assert rep.ok and not rep.flagged
    assert verify_main_theorem(["dp5"], ga1f5_policy="notrigid").unknowns == []


def test_superrigidity_quintic():
    rep = verify_superrigidity_monotonicity(["dp5"])
    assert rep.ok and rep.gaps == []
    assert "granularity_gaps" in rep.to_json()


def test_kernel_monotonicity():
    rep = kernel_monotonicity_check(max_n=6, order_bound=96)
    assert rep.ok and rep.pairs_checked > 0


def test_bad_universe():
    with pytest.raises(OrderBoundExceeded):
        verify_main_theorem(["dp5"], order_bound=max_order() + 1)
    with pytest.raises(ValueError):
        verify_main_theorem(["dp7"])


def _pair(h, g, same=False):
    return Pair("dp8", "g", "h", g, h, {"order": 8}, {"order": 8 if same else 4})


UNDECIDED = Verdict(UNKNOWN, "witness-mismatch", (("geometric", (RIGID,)), ("table", (NOT_RIGID,))))


def test_joint_resolution_per_policy():
    combos = set(_resolution_pairs(_pair(UNDECIDED, UNDECIDED)))
    assert combos == {(RIGID, RIGID), (NOT_RIGID, NOT_RIGID)}


def test_resolution_against_definite():
    combos = set(_resolution_pairs(_pair(Verdict.definite(RIGID), UNDECIDED)))
    assert combos == {(RIGID, RIGID), (RIGID, NOT_RIGID)}


def test_equal_subgroup_resolves_with_group():
    loose = Verdict(UNKNOWN, "unclassified", (("any", (RIGID, NOT_RIGID)),))
    assert set(_resolution_pairs(_pair(loose, loose, same=True))) == {(RIGID, RIGID), (NOT_RIGID, NOT_RIGID)}


def test_report_text_mentions_counts():
    rep = VerificationReport({"degrees": ["dp5"]}, pairs_checked=3, pairs_by_degree={"dp5": 3})
    txt = rep.to_text()
    assert "pairs checked: 3" in txt and "violations: 0" in txt


def test_superrigid_verdicts_present():
    counts = verify_main_theorem(["dp5"]).status_counts["dp5"]
    assert counts[SUPERRIGID] == 2
