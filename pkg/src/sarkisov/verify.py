"""Exhaustive checks of rigidity monotonicity over enumerated group actions.

For every minimal action G in a universe and every minimal subgroup H of G
(a literal subset of G's elements), the verifier compares the engine's
verdicts.  The statement checked is: H rigid implies G rigid, and H
superrigid implies G superrigid.

Undecided verdicts never count as violations.  Each one carries the set of
definite verdicts it could resolve to, and a pair is flagged when some
resolution would produce a violation.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .cyclotomic import Mat
from .groups import FiniteGroup, OrderBoundExceeded, max_order, recognize, subgroups, subgroups_meeting
from .lattice import (
    HexGroup,
    PicLattice,
    enumerate_hex_groups,
    hex_minimal,
    invariant_rank,
    vertex_perm,
)
from .quadric import QuadGroup, build_group, enumerate_data
from .rigidity import (
    NOT_RIGID,
    RIGID,
    SUPERRIGID,
    UNKNOWN,
    WitnessMismatch,
    audit_deg8,
    decide_deg5,
    decide_deg6,
    decide_deg9,
    pgl3_group,
    pgl3_realizations,
)

DEGREES = ("dp5", "dp6", "dp8", "p2")
DEFINITE = (SUPERRIGID, RIGID, NOT_RIGID)


@dataclass(frozen=True)
class Verdict:
    """A verdict plus, when undecided, the definite verdicts it may stand for.

    ``resolutions`` pairs a resolution policy with the verdicts still possible
    under it.  Policy "any" applies whatever policy the other verdict uses, so
    two undecided verdicts are resolved jointly rather than independently.
    """

    variant: str
    reason: str | None = None
    resolutions: tuple[tuple[str, tuple[str, ...]], ...] = ()

    @classmethod
    def definite(cls, variant: str) -> "Verdict":
        return cls(variant)

    @property
    def decided(self) -> bool:
        return self.variant != UNKNOWN

    def options(self, policy: str) -> tuple[str, ...]:
        if self.decided:
            return (self.variant,)
        table = dict(self.resolutions)
        return table.get(policy, table.get("any", (RIGID, NOT_RIGID)))

    def policies(self) -> set[str]:
        return {p for p, _ in self.resolutions if p != "any"}

    def to_json(self) -> dict:
        out = {"status": self.variant}
        if self.reason:
            out["reason"] = self.reason
            out["resolutions"] = {p: list(v) for p, v in self.resolutions}
        return out


def _rigid(v: str) -> bool:
    return v in (RIGID, SUPERRIGID)


@dataclass
class VerificationReport:
    universe: dict
    pairs_checked: int = 0
    pairs_by_degree: dict = field(default_factory=dict)
    groups_by_degree: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)
    flagged: list = field(default_factory=list)
    gaps: list = field(default_factory=list)
    status_counts: dict = field(default_factory=dict)
    kind: str = "main-theorem"
    runtime: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "universe": self.universe,
            "pairs_checked": self.pairs_checked,
            "pairs_by_degree": dict(sorted(self.pairs_by_degree.items())),
            "groups_by_degree": dict(sorted(self.groups_by_degree.items())),
            "status_counts": {k: dict(sorted(v.items())) for k, v in sorted(self.status_counts.items())},
            "violations": self.violations,
            "flagged": self.flagged,
            "unknowns": self.unknowns,
        }
        if self.kind == "superrigidity":
            out["granularity_gaps"] = self.gaps
        if timing and self.runtime is not None:
            out["runtime"] = self.runtime
        return out

    def to_text(self) -> str:
        lines = [
            f"{self.kind} verification over {', '.join(self.universe['degrees'])}",
            f"pairs checked: {self.pairs_checked}",
        ]
        for deg, n in sorted(self.pairs_by_degree.items()):
            lines.append(f"  {deg}: {n} pairs over {self.groups_by_degree.get(deg, 0)} groups")
        lines.append(f"violations: {len(self.violations)}")
        lines.append(f"pairs with an undecided verdict: {len(self.unknowns)}")
        lines.append(f"flagged (some resolution would violate): {len(self.flagged)}")
        if self.kind == "superrigidity":
            lines.append(f"granularity gaps: {len(self.gaps)}")
        for v in self.violations[:20]:
            lines.append(f"  VIOLATION {v}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# universe items: (group id, descriptor, verdict, iterator of (subgroup id, descriptor, verdict))


@dataclass
class Pair:
    degree: str
    g_id: str
    h_id: str
    g: Verdict
    h: Verdict
    g_desc: dict
    h_desc: dict


def _digest(obj) -> str:
    return hashlib.sha1(repr(obj).encode()).hexdigest()[:12]


# -- degree 5 ---------------------------------------------------------------------


def _dp5_generators() -> list[list[list[int]]]:
    """W(A4) = S5 acting on Pic = Z<h, e1..e4>: three transpositions and the quadratic involution."""

    def perm(i, j):
        m = [[int(r == c) for c in range(5)] for r in range(5)]
        m[i][i] = m[j][j] = 0
        m[i][j] = m[j][i] = 1
        return m

    q = [
        [2, 1, 1, 1, 0],
        [-1, 0, -1, -1, 0],
        [-1, -1, 0, -1, 0],
        [-1, -1, -1, 0, 0],
        [0, 0, 0, 0, 1],
    ]
    return [perm(1, 2), perm(2, 3), perm(3, 4), q]


@lru_cache(maxsize=1)
def dp5_group() -> FiniteGroup:
    import numpy as np

    def mul(a, b):
        return tuple(map(tuple, (np.array(a) @ np.array(b)).tolist()))

    gens = [tuple(map(tuple, m)) for m in _dp5_generators()]
    ident = tuple(tuple(int(r == c) for c in range(5)) for r in range(5))
    return FiniteGroup.generate(gens, mul, ident)


def dp5_minimal_subgroups() -> list:
    g = dp5_group()
    lat = PicLattice(5)
    out = []
    for h in subgroups(g):
        mats = [g.labels[i] for i in h.generators] or [g.labels[0]]
        if invariant_rank(lat, mats) == 1:
            out.append(h)
    return out


def _dp5_items(ga1f5_policy: str):
    g = dp5_group()
    mins = dp5_minimal_subgroups()
    verdicts = {}
    for h in mins:
        iso = recognize(h.as_group())
        st = decide_deg5(iso, ga1f5_policy)
        if st.variant == UNKNOWN:
            v = Verdict(UNKNOWN, st.reason, (("any", (RIGID, NOT_RIGID)),))
        else:
            v = Verdict.definite(st.variant)
        verdicts[h.mask] = (v, {"iso": str(iso), "order": h.order})
    for G in mins:
        gv, gd = verdicts[G.mask]
        subs = [(f"{H.mask:x}", verdicts[H.mask][1], verdicts[H.mask][0]) for H in mins if H <= G]
        yield f"{G.mask:x}", gd, gv, subs


# -- degree 6 ---------------------------------------------------------------------


def _hex_verdict(H: HexGroup) -> Verdict:
    try:
        return Verdict.definite(decide_deg6(H).variant)
    except WitnessMismatch:
        return Verdict(UNKNOWN, "witness-mismatch", (("any", (RIGID, NOT_RIGID)),))


def _dp6_items(max_torsion: int):
    cache: dict[frozenset, tuple[Verdict, dict]] = {}
    for G in enumerate_hex_groups(max_torsion):
        fg = G.materialize()
        seeds = [i for i, x in enumerate(fg.labels) if _is_order3_rotation(x)]
        subs = []
        for h in subgroups_meeting(fg, seeds):
            H = G.subgroup_from_ids(h.elements)
            if not hex_minimal(H):
                continue
            key = H.element_set
            if key not in cache:
                cache[key] = (_hex_verdict(H), {"order": H.order})
            v, d = cache[key]
            subs.append((_digest(sorted(key)), d, v))
        gv, gd = cache.get(G.element_set) or (_hex_verdict(G), {"order": G.order})
        yield _digest(G.elements), gd, gv, subs


def _is_order3_rotation(x) -> bool:
    vp = vertex_perm(x)
    return vp in ((2, 3, 4, 5, 0, 1), (4, 5, 0, 1, 2, 3))


# -- degree 8 ---------------------------------------------------------------------


def quad_verdict(G: QuadGroup) -> Verdict:
    a = audit_deg8(G)
    if a.consistent:
        return Verdict.definite(a.table)
    if a.table == NOT_RIGID:
        a = audit_deg8(G, full=True)
    geo = (a.geometric,) if a.geometric != UNKNOWN else (RIGID, NOT_RIGID)
    return Verdict(UNKNOWN, "witness-mismatch", (("geometric", geo), ("table", (a.table,))))


def quad_universe(max_n: int) -> list:
    specs = [("C", k) for k in range(2, max_n + 1)] + [("D", k) for k in range(2, max_n + 1)]
    specs += [("A4", None), ("S4", None), ("A5", None)]
    out = []
    for lab, n in specs:
        out.extend(enumerate_data(lab, n))
    return out


def _two_power(k: int) -> bool:
    return k & (k - 1) == 0


def _dp8_items(max_n: int, order_bound: int):
    data = quad_universe(max_n)
    groups = [build_group(d) for d in data]
    cache: dict[tuple, Verdict] = {}

    def verdict(H: QuadGroup) -> Verdict:
        F = H.base.F
        key = (F.label, F.n, H.element_set)
        if key not in cache:
            cache[key] = quad_verdict(H)
        return cache[key]

    by_base: dict[tuple, list[int]] = {}
    for i, G in enumerate(groups):
        by_base.setdefault((G.base.F.label, G.base.F.n), []).append(i)
    for i, (d, G) in enumerate(zip(data, groups)):
        gdesc = {"datum": d.to_json(), "order": G.order}
        gv = verdict(G)
        subs: dict[frozenset, tuple] = {}
        if G.order <= order_bound:
            fg = G.materialize(order_bound)
            seeds = [j for j, x in enumerate(fg.labels) if x[2] and _two_power(fg.element_orders[j])]
            for h in subgroups_meeting(fg, seeds):
                H = G.subgroup_from_ids(h.elements)
                subs[H.element_set] = ({"order": H.order}, H)
        # data groups over the same base contained in G (covers groups too large to tabulate)
        for j in by_base[(G.base.F.label, G.base.F.n)]:
            H = groups[j]
            if H.order <= G.order and H.element_set <= G.element_set and H.element_set not in subs:
                subs[H.element_set] = ({"order": H.order, "datum": data[j].to_json()}, H)
        items = []
        for key in sorted(subs, key=lambda s: (len(s), sorted(s))):
            desc, H = subs[key]
            items.append((_digest(sorted(key)), desc, verdict(H)))
        yield _digest(d.key()), gdesc, gv, items


# -- degree 9 ---------------------------------------------------------------------


def _p2_items():
    for name, gens in sorted(pgl3_realizations().items()):
        g = pgl3_group(gens)
        subs = []
        for h in subgroups(g):
            mats = [g.labels[i] for i in h.generators] or [Mat.identity(3)]
            st = decide_deg9(mats)
            subs.append((f"{name}:{h.mask:x}", {"order": h.order, "iso": st.details["iso"]}, Verdict.definite(st.variant)))
        gv = decide_deg9(gens)
        yield name, {"name": name, "order": g.n}, Verdict.definite(gv.variant), subs


# ---------------------------------------------------------------------------
# drivers


def _items(degree: str, max_n: int, order_bound: int, max_torsion: int, ga1f5_policy: str):
    if degree == "dp5":
        return _dp5_items(ga1f5_policy)
    if degree == "dp6":
        return _dp6_items(max_torsion)
    if degree == "dp8":
        return _dp8_items(max_n, order_bound)
    if degree == "p2":
        return _p2_items()
    raise ValueError(f"unknown universe component {degree!r}")


def iter_pairs(
    degrees: Sequence[str] = DEGREES,
    max_n: int = 12,
    order_bound: int | None = None,
    max_torsion: int = 12,
    ga1f5_policy: str = "unknown",
) -> Iterator[Pair]:
    order_bound = max_order() if order_bound is None else order_bound
    if order_bound > max_order():
        raise OrderBoundExceeded(f"order bound {order_bound} exceeds the materialization cap {max_order()}")
    for deg in degrees:
        for g_id, g_desc, gv, subs in _items(deg, max_n, order_bound, max_torsion, ga1f5_policy):
            for h_id, h_desc, hv in subs:
                yield Pair(deg, g_id, h_id, gv, hv, g_desc, h_desc)


def _universe(degrees, max_n, order_bound, max_torsion, ga1f5_policy) -> dict:
    return {
        "degrees": list(degrees),
        "max_n": max_n,
        "order_bound": order_bound,
        "max_torsion": max_torsion,
        "ga1f5_policy": ga1f5_policy,
    }


def _pair_record(p: Pair) -> dict:
    return {
        "degree": p.degree,
        "G": p.g_id,
        "H": p.h_id,
        "G_desc": p.g_desc,
        "H_desc": p.h_desc,
        "G_status": p.g.to_json(),
        "H_status": p.h.to_json(),
    }


def _short_record(p: Pair) -> dict:
    return {"degree": p.degree, "G": p.g_id, "H": p.h_id, "G_status": p.g.to_json(), "H_status": p.h.to_json()}


def _resolution_pairs(p: Pair) -> Iterator[tuple[str, str]]:
    """(H, G) verdict combinations left open by the undecided verdicts, policy by policy."""
    for policy in sorted(p.g.policies() | p.h.policies()) or ["any"]:
        g_opts = p.g.options(policy)
        if p.h_desc["order"] == p.g_desc["order"]:
            # H = G resolves together with G
            yield from ((v, v) for v in g_opts)
            continue
        for h in p.h.options(policy):
            for g in g_opts:
                yield h, g


_CHECKS: dict[str, Callable[[str, str], str | None]] = {}


def _run_degree(args: tuple) -> VerificationReport:
    kind, deg, max_n, order_bound, max_torsion, ga1f5_policy = args
    check = _CHECKS[kind]
    t0 = time.perf_counter()
    rep = VerificationReport(_universe([deg], max_n, order_bound, max_torsion, ga1f5_policy), kind=kind)
    seen: set[str] = set()
    counts: dict[str, int] = {}
    for p in iter_pairs([deg], max_n, order_bound, max_torsion, ga1f5_policy):
        rep.pairs_checked += 1
        if p.g_id not in seen:
            seen.add(p.g_id)
            counts[p.g.variant] = counts.get(p.g.variant, 0) + 1
        if p.g.decided and p.h.decided:
            outcome = check(p.h.variant, p.g.variant)
            if outcome == "violation":
                rep.violations.append(_pair_record(p))
            elif outcome == "gap":
                rep.gaps.append(_pair_record(p))
            continue
        rep.unknowns.append(_short_record(p))
        if any(check(h, g) == "violation" for h, g in _resolution_pairs(p)):
            rep.flagged.append(_pair_record(p))
    rep.pairs_by_degree = {deg: rep.pairs_checked}
    rep.groups_by_degree = {deg: len(seen)}
    rep.status_counts = {deg: counts}
    rep.runtime = {deg: round(time.perf_counter() - t0, 3)}
    return rep


def merge_reports(parts: Sequence[VerificationReport], universe: dict) -> VerificationReport:
    """Combine per-component reports; the result does not depend on the order of ``parts``."""
    parts = sorted(parts, key=lambda r: r.universe["degrees"])
    out = VerificationReport(universe, kind=parts[0].kind if parts else "main-theorem")
    out.runtime = {}
    for r in parts:
        out.pairs_checked += r.pairs_checked
        for name in ("pairs_by_degree", "groups_by_degree", "status_counts"):
            getattr(out, name).update(getattr(r, name))
        out.violations += r.violations
        out.unknowns += r.unknowns
        out.flagged += r.flagged
        out.gaps += r.gaps
        out.runtime.update(r.runtime or {})
    out.runtime["seconds"] = round(sum(out.runtime.values()), 3)
    return out


def _run(
    kind: str,
    degrees: Sequence[str],
    max_n: int,
    order_bound: int | None,
    max_torsion: int,
    ga1f5_policy: str,
    jobs: int = 1,
) -> VerificationReport:
    order_bound = max_order() if order_bound is None else order_bound
    if order_bound > max_order():
        raise OrderBoundExceeded(f"order bound {order_bound} exceeds the materialization cap {max_order()}")
    for deg in degrees:
        if deg not in DEGREES:
            raise ValueError(f"unknown universe component {deg!r}")
    tasks = [(kind, deg, max_n, order_bound, max_torsion, ga1f5_policy) for deg in degrees]
    if jobs > 1 and len(tasks) > 1:
        from multiprocessing import Pool

        with Pool(min(jobs, len(tasks))) as pool:
            parts = pool.map(_run_degree, tasks)
    else:
        parts = [_run_degree(t) for t in tasks]
    return merge_reports(parts, _universe(degrees, max_n, order_bound, max_torsion, ga1f5_policy))


def _main_check(h: str, g: str) -> str | None:
    return "violation" if _rigid(h) and g == NOT_RIGID else None


def _super_check(h: str, g: str) -> str | None:
    if h != SUPERRIGID:
        return None
    if g == NOT_RIGID:
        return "violation"
    if g == RIGID:
        return "gap"
    return None


def verify_main_theorem(
    degrees: Sequence[str] = DEGREES,
    max_n: int = 12,
    order_bound: int | None = None,
    max_torsion: int = 12,
    ga1f5_policy: str = "unknown",
    jobs: int = 1,
) -> VerificationReport:
    """H rigid and G not rigid never happens for minimal H inside minimal G."""
    return _run("main-theorem", degrees, max_n, order_bound, max_torsion, ga1f5_policy, jobs)


def verify_superrigidity_monotonicity(
    degrees: Sequence[str] = DEGREES,
    max_n: int = 12,
    order_bound: int | None = None,
    max_torsion: int = 12,
    ga1f5_policy: str = "unknown",
    jobs: int = 1,
) -> VerificationReport:
    """H superrigid forces G superrigid; Rigid-only verdicts for G are reported as gaps."""
    return _run("superrigidity", degrees, max_n, order_bound, max_torsion, ga1f5_policy, jobs)


_CHECKS.update({"main-theorem": _main_check, "superrigidity": _super_check})


def kernel_monotonicity_check(max_n: int = 12, order_bound: int | None = None) -> VerificationReport:
    """K1(H) is contained in K1(G) for every tabulated minimal H inside G."""
    order_bound = max_order() if order_bound is None else order_bound
    rep = VerificationReport(_universe(["dp8"], max_n, order_bound, None, None), kind="kernel-monotonicity")
    t0 = time.perf_counter()
    for d in quad_universe(max_n):
        if d.order() > order_bound:
            continue
        G = build_group(d)
        fg = G.materialize(order_bound)
        kg = G.kernel_K1()
        seeds = [j for j, x in enumerate(fg.labels) if x[2] and _two_power(fg.element_orders[j])]
        rep.groups_by_degree["dp8"] = rep.groups_by_degree.get("dp8", 0) + 1
        for h in subgroups_meeting(fg, seeds):
            H = G.subgroup_from_ids(h.elements)
            rep.pairs_checked += 1
            if H.kernel_K1() & ~kg:
                rep.violations.append({"G": d.to_json(), "H_order": H.order})
    rep.pairs_by_degree["dp8"] = rep.pairs_checked
    rep.runtime = {"seconds": round(time.perf_counter() - t0, 3)}
    return rep


def report_json(rep: VerificationReport, timing: bool = False) -> str:
    return json.dumps(rep.to_json(timing), sort_keys=True, indent=1)
