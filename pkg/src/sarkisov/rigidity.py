"""Per-degree rigidity decisions for finite group actions on del Pezzo surfaces.

Each ``decide_*`` function returns a :class:`RigidityStatus`.  A ``NotRigid``
status always carries a :class:`LinkWitness`; on the quadric, P^2 and the
sextic surface the witness orbit is computed exactly and can be re-checked
with the ``validate_*`` helpers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

from .cyclotomic import CycNum, Dim1, Dim2, Mat, ProjPoint, common_invariant_subspace, eigenspaces, sqrt5
from .groups import (
    FiniteGroup,
    IsoClass,
    OrderBoundExceeded,
    iso_from_label,
    max_order,
    min_faithful_linear_degree,
    recognize,
)
from .lattice import BASEPOINT, HexGroup, NotMinimal, hex_fixed_points, hex_minimal, image_name, hexagon_image, torus_part
from .quadric import (
    GoursatDatum,
    QuadGroup,
    build_group,
    degree2_general,
    find_degree2_orbit_general_position,
    find_degree4_orbit_general_position,
    near_abelian_rank2,
)

__all__ = [
    "RigidityStatus",
    "LinkWitness",
    "LINK_MENU",
    "NotMinimal",
    "WitnessMismatch",
    "InfiniteGroup",
    "decide_low_degree",
    "decide_deg4",
    "decide_deg5",
    "decide_deg6",
    "decide_deg8",
    "decide_goursat",
    "audit_deg8",
    "dp4_embedding_obstruction",
    "decide_deg9",
    "deg8_case",
    "pgl3_group",
    "pgl3_realizations",
    "validate_quadric_witness",
    "validate_p2_witness",
    "validate_hex_witness",
    "iso_class_from_name",
]

SUPERRIGID = "Superrigid"
RIGID = "Rigid"
NOT_RIGID = "NotRigid"
UNKNOWN = "Unknown"
VARIANTS = (SUPERRIGID, RIGID, NOT_RIGID, UNKNOWN)
TARGETS = ("ConicBundle", "P2", "P1xP1", "dP5", "dP6", "SelfBertini", "SelfGeiser")


class WitnessMismatch(RuntimeError):
    """Table verdict and geometric audit disagree."""

    def __init__(self, message: str, audit: "Deg8Audit | None" = None):
        super().__init__(message)
        self.audit = audit


class InfiniteGroup(OrderBoundExceeded):
    pass


# ---------------------------------------------------------------------------
# citations (named results, used verbatim in verdict JSON)

CITE = {
    "mfs": "Definition of G-birational rigidity via Sarkisov links",
    "segre_manin": "Segre-Manin theorem: minimal del Pezzo surfaces of degree at most 3 are rigid",
    "bertini": "Degree 1: every link is a Bertini self-involution (superrigidity)",
    "deg4": "Quartic del Pezzo criterion: rigid iff no G-fixed point",
    "tangent": "A fixed point gives a faithful 2-dimensional tangent representation",
    "cyclic_fixed": "A cyclic group acting on a rational surface fixes a point",
    "deg5_groups": "Minimal groups on the quintic del Pezzo surface: C5, D5, GA(1,5), A5, S5",
    "deg5": "Quintic del Pezzo rigidity: A5 and S5 superrigid, C5 and D5 not rigid",
    "deg5_ga": "GA(1,5) on the quintic del Pezzo surface is not decided by the classification",
    "deg6": "Sextic del Pezzo rigidity: rigid iff the torus kernel is nontrivial",
    "deg6_fixed": "Torus-free minimal groups on the sextic del Pezzo surface fix ([1:1:1],[1:1:1])",
    "quad_menu": "Sarkisov link menu from the quadric surface",
    "quad_cyclic": "Quadric, cyclic factor: the group fixes a point and links to P^2",
    "quad_dih_cyclic": "Quadric, dihedral factor with cyclic kernel: type I link to a conic bundle",
    "quad_dih_dihedral": "Quadric, dihedral factor with dihedral kernel: rigid",
    "quad_klein": "Quadric, Klein four factor: rigid iff the kernel is the whole Klein group",
    "quad_a4": "Quadric, tetrahedral factor: rigid",
    "quad_s4": "Quadric, octahedral factor: rigid",
    "quad_a5": "Quadric, icosahedral factor: superrigid",
    "structure": "Type I links and links to P^2 force a 2-generated abelian subgroup of small index in G0",
    "dp4_auto": "Automorphism groups of quartic del Pezzo surfaces",
    "sakovics": "Sakovics: P^2 is G-rigid iff G is transitive and not A4 or S4",
    "blichfeldt": "Blichfeldt: intransitive linear groups fix a point of P^2",
}


# ---------------------------------------------------------------------------
# verdict values


@dataclass(frozen=True)
class LinkWitness:
    link_type: str
    degree: int
    target: str
    orbit: tuple | None = None

    def __post_init__(self):
        if self.link_type not in ("I", "II"):
            raise ValueError("link type must be I or II")
        if self.degree < 1:
            raise ValueError("centre degree must be positive")
        if self.target not in TARGETS:
            raise ValueError(f"unknown link target {self.target!r}")
        if self.orbit is not None and len(self.orbit) != self.degree:
            raise ValueError("centre orbit size must equal the centre degree")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"type": self.link_type, "d": self.degree, "target": self.target}
        if self.orbit is not None:
            out["orbit"] = [_point_json(p) for p in self.orbit]
        return out


def _point_json(p):
    if isinstance(p, ProjPoint):
        return p.to_json()
    return [q.to_json() for q in p]


@dataclass(frozen=True)
class RigidityStatus:
    variant: str
    witness: LinkWitness | None = None
    reason: str | None = None
    citations: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown status {self.variant!r}")
        if self.variant == NOT_RIGID and self.witness is None:
            raise ValueError("NotRigid needs a witness")
        if self.variant == UNKNOWN and not self.reason:
            raise ValueError("Unknown needs a reason tag")

    @property
    def is_rigid(self) -> bool:
        return self.variant in (RIGID, SUPERRIGID)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.variant}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        out["citations"] = list(self.citations)
        if self.details:
            out["details"] = self.details
        return out

    def __str__(self):
        s = self.variant
        if self.witness is not None:
            w = self.witness
            s += f" (type {w.link_type}, d={w.degree}, -> {w.target})"
        if self.reason:
            s += f" [{self.reason}]"
        return s


def superrigid(*cites: str, **details) -> RigidityStatus:
    return RigidityStatus(SUPERRIGID, citations=tuple(CITE[c] for c in cites), details=details)


def rigid(*cites: str, **details) -> RigidityStatus:
    return RigidityStatus(RIGID, citations=tuple(CITE[c] for c in cites), details=details)


def not_rigid(witness: LinkWitness, *cites: str, **details) -> RigidityStatus:
    return RigidityStatus(NOT_RIGID, witness, citations=tuple(CITE[c] for c in cites), details=details)


def unknown(reason: str, *cites: str, **details) -> RigidityStatus:
    return RigidityStatus(UNKNOWN, reason=reason, citations=tuple(CITE[c] for c in cites), details=details)


# ---------------------------------------------------------------------------
# link menus: (link type, d, d', target)


@dataclass(frozen=True)
class LinkRow:
    link_type: str
    d: int
    d_prime: int | None
    target: str
    citation: str


LINK_MENU: dict[int, tuple[LinkRow, ...]] = {
    1: (LinkRow("II", 1, 1, "SelfBertini", CITE["bertini"]),),
    2: (
        LinkRow("II", 1, 1, "SelfGeiser", CITE["segre_manin"]),
        LinkRow("II", 1, 1, "SelfBertini", CITE["segre_manin"]),
    ),
    3: (
        LinkRow("II", 1, 1, "SelfGeiser", CITE["segre_manin"]),
        LinkRow("II", 2, 2, "SelfBertini", CITE["segre_manin"]),
    ),
    4: (LinkRow("I", 1, None, "ConicBundle", CITE["deg4"]),),
    5: (
        LinkRow("II", 1, 2, "P2", CITE["deg5"]),
        LinkRow("II", 2, 1, "P1xP1", CITE["deg5"]),
    ),
    6: (LinkRow("II", 1, 1, "P1xP1", CITE["deg6"]),),
    8: (
        LinkRow("I", 2, None, "ConicBundle", CITE["quad_menu"]),
        LinkRow("II", 7, 7, "SelfBertini", CITE["quad_menu"]),
        LinkRow("II", 6, 6, "SelfGeiser", CITE["quad_menu"]),
        LinkRow("II", 5, 2, "dP5", CITE["quad_menu"]),
        LinkRow("II", 4, 4, "P1xP1", CITE["quad_menu"]),
        LinkRow("II", 3, 1, "dP6", CITE["quad_menu"]),
        LinkRow("II", 1, 2, "P2", CITE["quad_menu"]),
    ),
    9: (
        LinkRow("I", 1, None, "ConicBundle", CITE["sakovics"]),
        LinkRow("I", 4, None, "ConicBundle", CITE["sakovics"]),
    ),
}


# ---------------------------------------------------------------------------
# degrees 1-5


def decide_low_degree(d: int, minimal: bool) -> RigidityStatus:
    if d not in (1, 2, 3):
        raise ValueError("low-degree decision covers degrees 1, 2 and 3")
    if not minimal:
        raise NotMinimal("the action must have invariant Picard rank 1")
    if d == 1:
        return superrigid("segre_manin", "bertini")
    return rigid("segre_manin")


FixedInfo = str  # "Yes" | "No" | "Unknown"


def decide_deg4(fixed_point: FixedInfo, G: IsoClass | None) -> RigidityStatus:
    witness = LinkWitness("I", 1, "ConicBundle")
    if fixed_point == "Yes":
        return not_rigid(witness, "deg4")
    if fixed_point == "No":
        return rigid("deg4")
    if fixed_point != "Unknown":
        raise ValueError("fixed-point information must be Yes, No or Unknown")
    if G is not None:
        deg = min_faithful_linear_degree(G)
        if deg is not None and deg > 2:
            return rigid("deg4", "tangent", derived_fixed_point="No")
        if G.tag == "Cyclic":
            return not_rigid(witness, "deg4", "cyclic_fixed", derived_fixed_point="Yes")
    return unknown("fixed-point-undecided", "deg4")


DEG5_GROUPS = ("C5", "D5", "GA1F5", "A5", "S5")


def _short_name(G: IsoClass) -> str:
    return str(G)


def decide_deg5(G: IsoClass, ga1f5_policy: str = "unknown") -> RigidityStatus:
    """Decision on the quintic del Pezzo surface.

    ``ga1f5_policy`` selects the verdict for GA(1,5): ``"unknown"`` (default)
    or ``"notrigid"``, justified by the GA(1,5)-invariant pair of C5-fixed
    points which centres a link to P^1 x P^1.
    """
    name = _short_name(G)
    if name not in DEG5_GROUPS:
        raise NotMinimal(f"{name} is not a minimal group on the quintic del Pezzo surface")
    if name in ("A5", "S5"):
        return superrigid("deg5_groups", "deg5", "tangent")
    if name == "C5":
        return not_rigid(LinkWitness("II", 1, "P2"), "deg5")
    if name == "D5":
        return not_rigid(LinkWitness("II", 2, "P1xP1"), "deg5")
    if ga1f5_policy == "notrigid":
        return not_rigid(LinkWitness("II", 2, "P1xP1"), "deg5_ga", policy="notrigid")
    if ga1f5_policy != "unknown":
        raise ValueError("ga1f5 policy must be 'unknown' or 'notrigid'")
    return unknown("unclassified", "deg5_ga", policy="unknown")


# ---------------------------------------------------------------------------
# degree 6


def decide_deg6(G: HexGroup) -> RigidityStatus:
    if not hex_minimal(G):
        raise NotMinimal(f"hexagon image {image_name(hexagon_image(G))} is not minimal")
    fixed = hex_fixed_points(G)
    torus = len(torus_part(G))
    if torus > 1:
        if fixed:
            raise WitnessMismatch("nontrivial torus kernel but the group fixes a point")
        return rigid("deg6", torus_order=torus)
    if not fixed:
        raise WitnessMismatch("trivial torus kernel but no fixed point found")
    pt = BASEPOINT if BASEPOINT in fixed else sorted(fixed, key=repr)[0]
    return not_rigid(LinkWitness("II", 1, "P1xP1", (pt,)), "deg6", "deg6_fixed")


# ---------------------------------------------------------------------------
# degree 8


DP4_AUT_ORDERS = (16, 32, 64, 96, 160)
DP8_LINK_GROUPS = ("C5", "C6", "S3", "D5", "D6", "GA1F5", "A5", "S5")
_DP8_LINK_ORDERS = frozenset({5, 6, 10, 12, 20, 60, 120})


def dp4_embedding_obstruction(G: IsoClass | None, order: int) -> str:
    """CannotEmbed, CanEmbed or Unknown for an embedding into Aut of a quartic del Pezzo surface."""
    if order % 9 == 0 or not any(m % order == 0 for m in DP4_AUT_ORDERS):
        return "CannotEmbed"
    if G is not None:
        if G.tag == "Cyclic" and G.n in (1, 2, 3, 4, 5):
            return "CanEmbed"
        if G.tag == "Klein4" or (G.tag == "ElemAbelian" and G.n <= 4):
            return "CanEmbed"
        if G.tag == "Dihedral" and G.n in (3, 5):
            return "CanEmbed"
    return "Unknown"


def _family(c: IsoClass) -> str:
    if c.tag == "Cyclic":
        return "C"
    if c.tag == "Klein4":
        return "V4"
    if c.tag == "Dihedral":
        return "D"
    return c.tag


def deg8_case(F1: IsoClass, K1: IsoClass) -> str:
    """Row of the quadric classification selected by the factor group and kernel."""
    f, k = _family(F1), _family(K1)
    if f == "C":
        return "a"
    if f == "D":
        return "b" if k == "C" else "dihedral-kernel"
    if f == "V4":
        return "c" if k == "C" else "klein-full"
    if f in ("A4", "S4", "A5"):
        return f
    raise ValueError(f"{F1} is not a finite subgroup of PGL2")


_CASE_CITE = {
    "a": "quad_cyclic",
    "b": "quad_dih_cyclic",
    "c": "quad_klein",
    "dihedral-kernel": "quad_dih_dihedral",
    "klein-full": "quad_klein",
    "A4": "quad_a4",
    "S4": "quad_s4",
    "A5": "quad_a5",
}


@dataclass
class Deg8Audit:
    """Outcome of the geometric checks for one quadric group."""

    case: str
    table: str
    fixed_point: tuple | None = None
    orbit2: list | None = None
    near_abelian2: bool | None = None
    iso: str | None = None
    iso_blocked: bool | None = None
    dp4: str | None = None
    near_abelian4: bool | None = None
    orbit4: list | None = None
    fixed_empty: bool | None = None
    orbit3: bool | None = None
    orbit5: bool | None = None

    @property
    def geometric(self) -> str:
        if self.fixed_point is not None or self.orbit2 is not None:
            return NOT_RIGID
        blocked4 = self.dp4 == "CannotEmbed" or self.near_abelian4 is False or (
            self.near_abelian4 is not None and self.orbit4 is None
        )
        if self.fixed_empty and self.orbit2 is None and self.iso_blocked and blocked4:
            return RIGID
        return UNKNOWN

    @property
    def consistent(self) -> bool:
        if self.table == NOT_RIGID:
            return self.geometric == NOT_RIGID
        return self.geometric == RIGID

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "table": self.table,
            "geometric": self.geometric,
            "fixed_point": None if self.fixed_point is None else _point_json(self.fixed_point),
            "orbit2": None if self.orbit2 is None else [_point_json(p) for p in self.orbit2],
            "iso": self.iso,
            "dp4": self.dp4,
            "orbit4_found": self.orbit4 is not None,
        }


def _table_verdict(case: str) -> str:
    if case in ("a", "b", "c"):
        return NOT_RIGID
    return SUPERRIGID if case == "A5" else RIGID


@lru_cache(maxsize=4096)
def _mask_class(label: str, n: int | None, mask: int) -> IsoClass:
    from .quadric import base_for

    F = base_for(label, n).F.group
    return recognize(F.subgroup(mask).as_group())


def _classes(G: QuadGroup) -> tuple[IsoClass, IsoClass]:
    F = G.base.F
    return _mask_class(F.label, F.n, G.projection_F1()), _mask_class(F.label, F.n, G.kernel_K1())


def audit_deg8(G: QuadGroup, full: bool = False) -> Deg8Audit:
    """Run the geometric checks matching the table row of G.

    For table-NotRigid rows the search stops at the first witness unless
    ``full`` is set; table-Rigid rows always get the complete obstruction
    audit.
    """
    if not G.is_minimal():
        raise NotMinimal("no element of the group exchanges the rulings")
    F1, K1 = _classes(G)
    case = deg8_case(F1, K1)
    a = Deg8Audit(case, _table_verdict(case))
    loc = G.fixed_locus()
    a.fixed_empty = loc.is_empty
    if not loc.is_empty:
        a.fixed_point = loc.sample_point()
    if a.table == NOT_RIGID and a.fixed_point is not None and not full:
        return a
    g0 = G.g0()
    a.near_abelian2 = near_abelian_rank2(G.base, g0, 2)
    if a.near_abelian2:
        a.orbit2 = find_degree2_orbit_general_position(G)
    if a.table == NOT_RIGID and not full:
        return a
    iso = G.iso_class()
    if iso is not None:
        a.iso = str(iso)
        a.iso_blocked = a.iso not in DP8_LINK_GROUPS
    else:
        a.iso_blocked = G.order not in _DP8_LINK_ORDERS
    if not a.iso_blocked:
        # the (5,2) and (3,1) links are centred at orbits of size 5 and 3
        a.orbit3 = next(G.orbits_of_size(3), None) is not None
        a.orbit5 = next(G.orbits_of_size(5), None) is not None
        a.iso_blocked = not (a.orbit3 or a.orbit5)
    a.dp4 = dp4_embedding_obstruction(iso, G.order)
    if a.dp4 != "CannotEmbed":
        a.near_abelian4 = near_abelian_rank2(G.base, g0, 4)
        if a.near_abelian4:
            a.orbit4 = find_degree4_orbit_general_position(G)
    return a


def decide_deg8(G: QuadGroup, datum: GoursatDatum | None = None) -> RigidityStatus:
    """Table verdict for a minimal quadric group, confirmed by the geometric audit."""
    a = audit_deg8(G)
    details = {"case": a.case, "order": G.order}
    if datum is not None:
        details["datum"] = datum.to_json()
    if not a.consistent:
        raise WitnessMismatch(
            f"table says {a.table} (case {a.case}) but the geometric audit says {a.geometric}", a
        )
    cite = _CASE_CITE[a.case]
    if a.table == NOT_RIGID:
        if a.case == "a" and a.fixed_point is not None:
            w = LinkWitness("II", 1, "P2", (a.fixed_point,))
        elif a.orbit2 is not None:
            w = LinkWitness("I", 2, "ConicBundle", tuple(a.orbit2))
        else:
            w = LinkWitness("II", 1, "P2", (a.fixed_point,))
        return not_rigid(w, "quad_menu", cite, **details)
    details["dp4"] = a.dp4
    if a.table == SUPERRIGID:
        return superrigid("quad_menu", cite, "structure", "dp4_auto", **details)
    return rigid("quad_menu", cite, "structure", "dp4_auto", **details)


def decide_goursat(d: GoursatDatum) -> RigidityStatus:
    G = build_group(d)
    return decide_deg8(G, G.datum)


def validate_quadric_witness(G: QuadGroup, w: LinkWitness) -> bool:
    """Re-check a quadric witness: a genuine orbit of the stated size, in general position."""
    if w.orbit is None:
        return False
    pts = set(w.orbit)
    if len(pts) != w.degree:
        return False
    for g in G.generators:
        aut = G.base.aut(g)
        if {aut.act(p) for p in pts} != pts:
            return False
    if len(G.orbit_explicit(next(iter(pts)))) != w.degree:
        return False
    if w.degree == 2:
        return degree2_general(list(pts))
    return True


# ---------------------------------------------------------------------------
# degree 9: the projective plane


def _pgl3_group(gens: Sequence[Mat]) -> FiniteGroup:
    try:
        return FiniteGroup.generate(list(gens), lambda a, b: a @ b, Mat.identity(3), key=lambda m: m.proj_key())
    except OrderBoundExceeded as e:
        raise InfiniteGroup(f"closure exceeds {max_order()} elements; not a (small) finite group") from e


def _collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return Mat([list(p), list(q), list(r)]).det().is_zero()


def _four_orbit(group: FiniteGroup) -> tuple | None:
    """An orbit of four points, no three collinear, centred at eigenlines of order-3 elements."""
    mats = group.labels
    for i in range(1, group.n):
        if group.element_orders[i] != 3:
            continue
        for _, basis in eigenspaces(mats[i]):
            if len(basis) != 1:
                continue
            p = ProjPoint(basis[0])
            orb = {m.act(p) for m in mats}
            if len(orb) == 4 and not any(_collinear(*t) for t in itertools.combinations(orb, 3)):
                return tuple(sorted(orb, key=repr))
    return None


def decide_deg9(gens: Sequence[Mat]) -> RigidityStatus:
    if not gens:
        gens = [Mat.identity(3)]
    if any(g.n != 3 for g in gens):
        raise ValueError("P^2 decisions need 3x3 matrices")
    group = _pgl3_group(gens)
    inv = common_invariant_subspace(gens)
    iso = recognize(group)
    details = {"order": group.n, "iso": str(iso)}
    if inv is not None:
        if isinstance(inv, Dim1):
            orbit = (inv.point,)
            details["invariant"] = "point"
        else:
            orbit = None
            details["invariant"] = "line"
        return not_rigid(LinkWitness("I", 1, "ConicBundle", orbit), "sakovics", "blichfeldt", transitive=False, **details)
    if iso.tag in ("A4", "S4"):
        return not_rigid(LinkWitness("I", 4, "ConicBundle", _four_orbit(group)), "sakovics", transitive=True, **details)
    return rigid("sakovics", transitive=True, **details)


def pgl3_group(gens: Sequence[Mat]) -> FiniteGroup:
    """Closure of 3x3 generators in PGL3 (ids in BFS order, matrices as labels)."""
    return _pgl3_group(gens)


def pgl3_realizations() -> dict[str, list[Mat]]:
    """Stored finite subgroups of PGL3 used by the verifier and the tests."""
    w = CycNum.zeta(3)
    i = CycNum.zeta(4)
    d = Mat.diag(1, w, w * w)
    p = Mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    t = Mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    # order 4 element of the Hessian group: the discrete Fourier matrix
    f = Mat([[1, 1, 1], [1, w, w * w], [1, w * w, w]]).scale((w - w * w).inverse())
    half = Mat.diag(1, -1, -1)
    rot4 = Mat([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    phi = (1 + sqrt5()) / 2
    ico = Mat(
        [
            [CycNum.rational(1) / 2, -phi / 2, (phi - 1) / 2],
            [phi / 2, (phi - 1) / 2, CycNum.rational(-1) / 2],
            [(phi - 1) / 2, CycNum.rational(1) / 2, phi / 2],
        ]
    )
    return {
        "C3-diagonal": [d],
        "S3-permutation": [p, t],
        "C3xC3-heisenberg": [d, p],
        "heisenberg-18": [d, p, t],
        "heisenberg-36": [d, p, f],
        "A4-signed": [half, p],
        "S4-signed": [rot4, p],
        "A5-icosahedral": [p, half, ico],
        "C4-diagonal": [Mat.diag(1, i, -1)],
    }


def validate_p2_witness(group: FiniteGroup, w: LinkWitness) -> bool:
    if w.orbit is None:
        return False
    pts = set(w.orbit)
    if any({m.act(q) for q in pts} != pts for m in group.labels):
        return False
    orb = {m.act(next(iter(pts))) for m in group.labels}
    if len(orb) != w.degree:
        return False
    if w.degree == 4:
        return not any(_collinear(*t) for t in itertools.combinations(pts, 3))
    return True


def validate_hex_witness(G: HexGroup, w: LinkWitness) -> bool:
    from .lattice import hex_act, on_surface

    if w.orbit is None or len(w.orbit) != 1:
        return False
    p = w.orbit[0]
    return on_surface(p) and all(hex_act(g, p) == p for g in G.generators)


def iso_class_from_name(name: str) -> IsoClass:
    """IsoClass for names like C5, D5, V4, A5, S5, GA1F5."""
    if name in ("A4", "S4", "A5", "S5", "GA1F5"):
        return iso_from_label(name)
    if name == "V4":
        return iso_from_label("V4")
    if name[0] in "CD" and name[1:].isdigit():
        return iso_from_label(name[0], int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")
