"""Finite automorphism groups of the quadric P^1 x P^1.

An automorphism is a triple (A, B, s): for s = 0 it maps (x, y) to (Ax, By),
for s = 1 to (Ay, Bx).  Every group built here lives over a fixed Klein group
F, so A and B are stored as element ids of F and the whole group algebra runs
on F's multiplication table.

Points that matter (isolated fixed points of any element) all have
coordinates in the finite F-invariant set of fixed points of elements of F.
That set is tabulated once per F as ``QuadBase.points``, and points of the
quadric are then pairs of indices into it.  Curve components of fixed loci
(fibers and graphs of Mobius maps) are kept symbolic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .cyclotomic import ALL, INFINITY, DegenerateInput, Mat, ProjPoint, cross_ratio
from .groups import FiniteGroup, IsoClass, OrderBoundExceeded, automorphisms, max_order, normal_subgroups, recognize
from .mobius import KleinGroup, realize

Triple = tuple[int, int, int]
PointIdx = tuple[int, int]


class NoSwapExtension(ValueError):
    pass


class InvalidDatum(ValueError):
    pass


# ---------------------------------------------------------------------------
# explicit automorphisms


@dataclass(frozen=True)
class QuadAut:
    """Automorphism of P^1 x P^1 given by explicit matrices."""

    A: Mat
    B: Mat
    swap: int

    def __matmul__(self, other: "QuadAut") -> "QuadAut":
        # self after other
        if self.swap:
            return QuadAut(self.A @ other.B, self.B @ other.A, 1 ^ other.swap)
        return QuadAut(self.A @ other.A, self.B @ other.B, other.swap)

    def act(self, p: tuple[ProjPoint, ProjPoint]) -> tuple[ProjPoint, ProjPoint]:
        x, y = p
        if self.swap:
            return self.A.act(y), self.B.act(x)
        return self.A.act(x), self.B.act(y)

    def proj_equal(self, other: "QuadAut") -> bool:
        return self.swap == other.swap and self.A.proj_equal(other.A) and self.B.proj_equal(other.B)


TAU = QuadAut(Mat.identity(2), Mat.identity(2), 1)


# ---------------------------------------------------------------------------
# per-F tables


class QuadBase:
    """Lookup tables for a Klein group F acting on each factor."""

    def __init__(self, F: KleinGroup):
        self.F = F
        g = F.group
        self.table = g.table
        self.inv = [int(x) for x in g.inv]
        self.n = g.n
        pts: list[ProjPoint] = []
        index: dict[ProjPoint, int] = {}
        # the special points: fixed points of nonidentity elements (an F-invariant set)
        for i in range(1, g.n):
            for p in sorted(F.fixed(i), key=_point_sort_key):
                if p not in index:
                    index[p] = len(pts)
                    pts.append(p)
        self.points = pts
        self.point_index = index
        self.perm = [tuple(index[F.matrix(a).act(p)] for p in pts) for a in range(g.n)]
        self.fix: list = [ALL] + [frozenset(index[p] for p in F.fixed(a)) for a in range(1, g.n)]
        self.orders = g.element_orders

    def mul(self, x: Triple, y: Triple) -> Triple:
        t = self.table
        a, b, s = x
        c, d, u = y
        if s:
            return int(t[a, d]), int(t[b, c]), 1 ^ u
        return int(t[a, c]), int(t[b, d]), u

    def inverse(self, x: Triple) -> Triple:
        a, b, s = x
        if s:
            # (a, b, 1)^-1 = (b^-1, a^-1, 1)
            return self.inv[b], self.inv[a], 1
        return self.inv[a], self.inv[b], 0

    def act(self, x: Triple, p: PointIdx) -> PointIdx:
        a, b, s = x
        i, j = p
        if s:
            return self.perm[a][j], self.perm[b][i]
        return self.perm[a][i], self.perm[b][j]

    def aut(self, x: Triple) -> QuadAut:
        return QuadAut(self.F.matrix(x[0]), self.F.matrix(x[1]), x[2])

    def point(self, p: PointIdx) -> tuple[ProjPoint, ProjPoint]:
        return self.points[p[0]], self.points[p[1]]

    def element_order(self, x: Triple) -> int:
        if not x[2]:
            return math.lcm(self.orders[x[0]], self.orders[x[1]])
        # (a,b,1)^2 = (ab, ba, 0) and ab, ba are conjugate
        return 2 * self.orders[int(self.table[x[0], x[1]])]

    # -- fixed loci of single elements -----------------------------------------

    def element_locus(self, x: Triple) -> frozenset:
        a, b, s = x
        if s:
            m = int(self.table[a, b])
            if m == 0:
                return frozenset({("graph", b)})
            return frozenset(("pt", i, self.perm[b][i]) for i in self.fix[m])
        fa, fb = self.fix[a], self.fix[b]
        if fa is ALL and fb is ALL:
            return frozenset({("whole",)})
        if fa is ALL:
            return frozenset(("fib", 2, j) for j in fb)
        if fb is ALL:
            return frozenset(("fib", 1, i) for i in fa)
        return frozenset(("pt", i, j) for i in fa for j in fb)

    def contains(self, comp: tuple, p: PointIdx) -> bool:
        kind = comp[0]
        i, j = p
        if kind == "whole":
            return True
        if kind == "pt":
            return comp[1] == i and comp[2] == j
        if kind == "fib":
            return (i if comp[1] == 1 else j) == comp[2]
        return self.perm[comp[1]][i] == j

    def meet(self, c: tuple, d: tuple) -> set:
        """Intersection of two irreducible components, as a set of components."""
        kc, kd = c[0], d[0]
        if kc == "whole":
            return {d}
        if kd == "whole":
            return {c}
        if kc == "pt":
            return {c} if self.contains(d, (c[1], c[2])) else set()
        if kd == "pt":
            return {d} if self.contains(c, (d[1], d[2])) else set()
        if kc == "graph" and kd == "fib":
            c, d = d, c
            kc, kd = kd, kc
        if kc == "fib" and kd == "fib":
            if c[1] == d[1]:
                return {c} if c[2] == d[2] else set()
            a, b = (c[2], d[2]) if c[1] == 1 else (d[2], c[2])
            return {("pt", a, b)}
        if kc == "fib":  # fiber against graph
            m = d[1]
            if c[1] == 1:
                return {("pt", c[2], self.perm[m][c[2]])}
            return {("pt", self.perm[self.inv[m]][c[2]], c[2])}
        m, m2 = c[1], d[1]
        if m == m2:
            return {c}
        rel = int(self.table[self.inv[m2], m])
        return {("pt", x, self.perm[m][x]) for x in self.fix[rel]}


def _point_sort_key(p: ProjPoint):
    return tuple(complex(c).real for c in p) + tuple(complex(c).imag for c in p)


@lru_cache(maxsize=None)
def base_for(label: str, n: int | None = None) -> QuadBase:
    return QuadBase(realize(label, n))


def _simplify(base: QuadBase, comps: Iterable[tuple]) -> frozenset:
    comps = set(comps)
    curves = [c for c in comps if c[0] != "pt"]
    if any(c[0] == "whole" for c in curves):
        return frozenset({("whole",)})
    out = set(curves)
    for c in comps:
        if c[0] == "pt" and not any(base.contains(k, (c[1], c[2])) for k in curves):
            out.add(c)
    return frozenset(out)


def meet_loci(base: QuadBase, x: frozenset, y: frozenset) -> frozenset:
    out: set = set()
    for c in x:
        for d in y:
            out |= base.meet(c, d)
    return _simplify(base, out)


# ---------------------------------------------------------------------------
# fixed locus values


@dataclass(frozen=True)
class FixedLocus:
    """Fixed set of a group on P^1 x P^1: a finite union of symbolic components.

    Components are ("pt", i, j), ("fib", ruling, i), ("graph", m) and
    ("whole",), with point indices into ``base.points`` and m an element id
    of F.  ``("fib", 1, i)`` is {points[i]} x P^1 and ``("graph", m)`` is
    {(x, Mx)}.
    """

    base: QuadBase
    components: frozenset

    @property
    def variant(self) -> str:
        kinds = {c[0] for c in self.components}
        if not kinds:
            return "Empty"
        if "whole" in kinds:
            return "Whole"
        if kinds == {"pt"}:
            return "Points"
        if kinds <= {"fib"} and len(self.components) == 1:
            return "Fiber"
        if kinds <= {"graph"} and len(self.components) == 1:
            return "Graph"
        return "Union"

    @property
    def is_empty(self) -> bool:
        return not self.components

    def points(self) -> list[PointIdx]:
        return sorted((c[1], c[2]) for c in self.components if c[0] == "pt")

    def curves(self) -> list[tuple]:
        return sorted(c for c in self.components if c[0] != "pt")

    def has_point(self) -> bool:
        return bool(self.components)

    def sample_point(self) -> tuple[ProjPoint, ProjPoint] | None:
        """Some explicit fixed point, or None when empty."""
        pts = self.points()
        if pts:
            return self.base.point(pts[0])
        for c in self.curves():
            return next(sample_on_curve(self.base, c))
        return None

    def to_json(self) -> list:
        out = []
        for c in sorted(self.components):
            if c[0] == "pt":
                out.append({"kind": "point", "point": [self.base.points[c[1]].to_json(), self.base.points[c[2]].to_json()]})
            elif c[0] == "fib":
                out.append({"kind": "fiber", "ruling": c[1], "base": self.base.points[c[2]].to_json()})
            elif c[0] == "graph":
                out.append({"kind": "graph", "matrix": self.base.F.matrix(c[1]).to_json()})
            else:
                out.append({"kind": "whole"})
        return out


_SAMPLES = (2, 3, 5, 7, 11, 13)


def sample_on_curve(base: QuadBase, comp: tuple) -> Iterator[tuple[ProjPoint, ProjPoint]]:
    """A few explicit points on a curve component (generic ones among them)."""
    for k, t in enumerate(_SAMPLES):
        p = ProjPoint([t, 1])
        if comp[0] == "fib":
            q = base.points[comp[2]]
            yield (q, p) if comp[1] == 1 else (p, q)
        elif comp[0] == "graph":
            yield p, base.F.matrix(comp[1]).act(p)
        else:
            yield p, ProjPoint([_SAMPLES[-1 - k] ** 2 + 1, 1])


# ---------------------------------------------------------------------------
# Goursat data


@dataclass(frozen=True)
class GoursatDatum:
    """(F, K, phi, twist): G = G0 u sigma_c G0 with G0 = {(a, b) : phi(aK) = bK}.

    ``K`` is a bitmask over F's element ids, ``phi`` an automorphism of F/K
    given as a tuple over quotient ids, ``twist`` an element id of F.
    """

    label: str
    n: int | None
    K: int
    phi: tuple[int, ...]
    twist: int | None = None

    @property
    def base(self) -> QuadBase:
        return base_for(self.label, self.n)

    @property
    def F(self) -> KleinGroup:
        return self.base.F

    @cached_property
    def quotient(self) -> tuple[FiniteGroup, list[int]]:
        return self.F.group.quotient(self.K)

    @property
    def k_order(self) -> int:
        return bin(self.K).count("1")

    @property
    def d_order(self) -> int:
        return self.quotient[0].n

    def order(self) -> int:
        return 2 * self.k_order**2 * self.d_order

    def k_class(self) -> IsoClass:
        return recognize(self.F.group.subgroup(self.K).as_group())

    def f_name(self) -> str:
        if self.label == "D" and self.n == 2:
            return "V4"
        return self.F.name()

    def k_name(self) -> str:
        if self.K == (1 << self.F.order) - 1:
            return "full"
        return str(self.k_class())

    def is_identity_phi(self) -> bool:
        return all(i == v for i, v in enumerate(self.phi))

    def with_twist(self, c: int) -> "GoursatDatum":
        return GoursatDatum(self.label, self.n, self.K, self.phi, c)

    def to_json(self) -> dict:
        F = {"pgl2": self.label}
        if self.n is not None:
            F["n"] = self.n
        return {
            "F": F,
            "K": self.k_name(),
            "K_elements": [i for i in range(self.F.order) if (self.K >> i) & 1],
            "phi": "id" if self.is_identity_phi() else list(self.phi),
            "twist": self.twist,
        }

    def key(self) -> tuple:
        return (self.label, self.n or 0, self.K, self.phi, -1 if self.twist is None else self.twist)


def g0_member(d: GoursatDatum, a: int, b: int) -> bool:
    _, proj = d.quotient
    return d.phi[proj[a]] == proj[b]


def valid_twists(d: GoursatDatum) -> list[int]:
    """Coset representatives c (first in element order) whose swap (c, 1, 1) extends G0.

    Twists in the same K-coset give the same group, distinct cosets give
    distinct groups.
    """
    F = d.F.group
    t = F.table
    _, proj = d.quotient
    seen: set[int] = set()
    out = []
    gens0 = _g0_generators(d)
    for c in range(F.n):
        if proj[c] in seen:
            continue
        seen.add(proj[c])
        if not g0_member(d, c, c):
            continue
        cinv = int(F.inv[c])
        # sigma_c (a, b) sigma_c^-1 = (c b c^-1, a)
        if all(g0_member(d, int(t[t[c, b], cinv]), a) for a, b, _ in gens0):
            out.append(c)
    return out


def _g0_generators(d: GoursatDatum) -> list[Triple]:
    F = d.F.group
    _, proj = d.quotient
    ksub = F.subgroup(d.K)
    gens: list[Triple] = []
    for k in ksub.generators:
        gens.append((k, 0, 0))
        gens.append((0, k, 0))
    target: dict[int, int] = {}
    for b in range(F.n):
        target.setdefault(proj[b], b)
    for f in F.generators:
        gens.append((f, target[d.phi[proj[f]]], 0))
    return gens


def enumerate_data(label: str, n: int | None = None) -> list[GoursatDatum]:
    """Every (K, phi, twist) over the Klein group, in a fixed order.

    Data without any valid twist are skipped here; ``build_group`` reports
    them with NoSwapExtension when asked directly.
    """
    F = realize(label, n)
    out = []
    for k in normal_subgroups(F.group):
        q, _ = F.group.quotient(k.mask)
        for phi in automorphisms(q):
            d = GoursatDatum(label, n, k.mask, tuple(phi))
            for c in valid_twists(d):
                out.append(d.with_twist(c))
    return out


def untwisted_data(label: str, n: int | None = None) -> list[GoursatDatum]:
    """All (K, phi) pairs, with or without a swap extension."""
    F = realize(label, n)
    out = []
    for k in normal_subgroups(F.group):
        q, _ = F.group.quotient(k.mask)
        for phi in automorphisms(q):
            out.append(GoursatDatum(label, n, k.mask, tuple(phi)))
    return out


# ---------------------------------------------------------------------------
# groups of triples


class QuadGroup:
    """A finite subgroup of Aut(P^1 x P^1) over a fixed Klein group F.

    The element list is always held (at most a few thousand triples); a
    multiplication table is built only on request and only below the
    materialization cap.
    """

    def __init__(self, base: QuadBase, elements: Iterable[Triple], gens: Sequence[Triple] | None = None, datum: GoursatDatum | None = None):
        self.base = base
        self.elements: tuple[Triple, ...] = tuple(sorted(set(elements)))
        self.element_set = frozenset(self.elements)
        self.datum = datum
        self._gens = list(gens) if gens is not None else None
        self._fg: FiniteGroup | None = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def generated(cls, base: QuadBase, gens: Sequence[Triple], bound: int = 10**5) -> "QuadGroup":
        gens = [g for g in gens if g != (0, 0, 0)]
        seen = {(0, 0, 0)}
        frontier = [(0, 0, 0)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = base.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > bound:
                            raise OrderBoundExceeded(f"quadric group exceeds {bound} elements")
            frontier = nxt
        return cls(base, seen, gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x: Triple) -> bool:
        return x in self.element_set

    @property
    def generators(self) -> list[Triple]:
        if self._gens is None:
            gens: list[Triple] = []
            cur: set = {(0, 0, 0)}
            for x in self.elements:
                if x not in cur:
                    gens.append(x)
                    cur = set(QuadGroup.generated(self.base, gens).elements)
            self._gens = gens
        return self._gens

    def g0(self) -> list[Triple]:
        return [x for x in self.elements if not x[2]]

    def strip_swap(self) -> "QuadGroup":
        return QuadGroup(self.base, self.g0())

    def is_subgroup_of(self, other: "QuadGroup") -> bool:
        return self.element_set <= other.element_set

    def materialize(self, bound: int | None = None) -> FiniteGroup:
        """Multiplication table over the element list (identity first)."""
        if self._fg is not None:
            return self._fg
        bound = max_order() if bound is None else bound
        if self.order > bound:
            raise OrderBoundExceeded(f"|G| = {self.order} exceeds materialization cap {bound}")
        els = [(0, 0, 0)] + [x for x in self.elements if x != (0, 0, 0)]
        idx = {x: i for i, x in enumerate(els)}
        table = [[idx[self.base.mul(x, y)] for y in els] for x in els]
        gens = [idx[g] for g in self.generators]
        fg = FiniteGroup(table, gens, labels=els)
        fg.index = idx
        self._fg = fg
        return fg

    def subgroup_from_ids(self, ids: Iterable[int]) -> "QuadGroup":
        fg = self.materialize()
        return QuadGroup(self.base, (fg.labels[i] for i in ids))

    # -- structure ------------------------------------------------------------

    def is_minimal(self) -> bool:
        """Invariant Picard rank 1: some element exchanges the rulings."""
        return any(x[2] for x in self.elements)

    def kernel_K1(self) -> int:
        """{a : (a, id) in G} as a bitmask over F."""
        m = 0
        for a, b, s in self.elements:
            if not s and b == 0:
                m |= 1 << a
        return m

    def projection_F1(self) -> int:
        m = 0
        for a, _, s in self.elements:
            if not s:
                m |= 1 << a
        return m

    def f1_class(self) -> IsoClass:
        return recognize(self.base.F.group.subgroup(self.projection_F1()).as_group())

    def k1_class(self) -> IsoClass:
        return recognize(self.base.F.group.subgroup(self.kernel_K1()).as_group())

    def iso_class(self) -> IsoClass | None:
        """Isomorphism type when materializable, else None."""
        if self.order > max_order():
            return None
        return recognize(self.materialize())

    def fixed_locus(self) -> FixedLocus:
        comps = frozenset({("whole",)})
        for g in self.generators:
            comps = meet_loci(self.base, comps, self.base.element_locus(g))
            if not comps:
                break
        return FixedLocus(self.base, comps)

    # -- orbits -----------------------------------------------------------------

    def orbit_idx(self, p: PointIdx) -> frozenset[PointIdx]:
        seen = {p}
        frontier = [p]
        gens = self.generators
        while frontier:
            nxt = []
            for q in frontier:
                for g in gens:
                    r = self.base.act(g, q)
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return frozenset(seen)

    def orbit_explicit(self, p: tuple[ProjPoint, ProjPoint]) -> frozenset:
        auts = [self.base.aut(g) for g in self.generators]
        seen = {p}
        frontier = [p]
        while frontier:
            nxt = []
            for q in frontier:
                for g in auts:
                    r = g.act(q)
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return frozenset(seen)

    def special_orbits(self) -> list[frozenset[PointIdx]]:
        """Partition of (special points)^2 into orbits, in a fixed order."""
        m = len(self.base.points)
        done: set = set()
        out = []
        for p in itertools.product(range(m), repeat=2):
            if p in done:
                continue
            o = self.orbit_idx(p)
            done |= o
            out.append(o)
        return out

    def curve_candidates(self, k: int) -> list[tuple]:
        """Curve components C whose pointwise stabilizer has index k.

        A point outside (special points)^2 with orbit of size k lies on such
        a curve: all of its stabilizer fixes it through one common curve.
        """
        stab: dict[tuple, int] = {("whole",): 1}
        for x in self.elements:
            if x == (0, 0, 0):
                continue
            for c in self.base.element_locus(x):
                if c[0] != "pt":
                    stab[c] = stab.get(c, 1) + 1
        return sorted(c for c, s in stab.items() if s * k == self.order)

    def orbits_of_size(self, k: int) -> Iterator[list[tuple[ProjPoint, ProjPoint]]]:
        for o in self.special_orbits():
            if len(o) == k:
                yield [self.base.point(p) for p in sorted(o)]
        for c in self.curve_candidates(k):
            for p in sample_on_curve(self.base, c):
                o = self.orbit_explicit(p)
                if len(o) == k:
                    yield sorted(o, key=_pair_sort_key)

    def to_json(self) -> dict:
        out = {"order": self.order}
        if self.datum is not None:
            out["datum"] = self.datum.to_json()
        return out


def _pair_sort_key(p):
    return _point_sort_key(p[0]) + _point_sort_key(p[1])


def build_group(d: GoursatDatum) -> QuadGroup:
    """G = G0 u sigma_c G0 for the datum; searches a twist when none is given."""
    base = d.base
    F = base.F.group
    if not F.is_normal_mask(d.K) or not F.is_subgroup_mask(d.K):
        raise InvalidDatum("K must be a normal subgroup of F")
    q, proj = d.quotient
    if sorted(d.phi) != list(range(q.n)) or any(
        d.phi[int(q.table[i, j])] != int(q.table[d.phi[i], d.phi[j]]) for i in range(q.n) for j in range(q.n)
    ):
        raise InvalidDatum("phi must be an automorphism of F/K")
    c = d.twist
    if c is None:
        tw = valid_twists(d)
        if not tw:
            raise NoSwapExtension(f"no swap twist extends the fibred product for {d.to_json()}")
        c = tw[0]
        d = d.with_twist(c)
    elif c not in valid_twists(d) and not _twist_ok(d, c):
        raise NoSwapExtension(f"twist {c} does not give a group")
    cosets: dict[int, list[int]] = {}
    for b in range(F.n):
        cosets.setdefault(proj[b], []).append(b)
    g0 = [(a, b, 0) for a in range(F.n) for b in cosets[d.phi[proj[a]]]]
    t = F.table
    swaps = [(int(t[c, b]), a, 1) for a, b, _ in g0]
    gens = _g0_generators(d) + [(c, 0, 1)]
    return QuadGroup(base, g0 + swaps, gens, d)


def _twist_ok(d: GoursatDatum, c: int) -> bool:
    F = d.F.group
    t = F.table
    cinv = int(F.inv[c])
    return g0_member(d, c, c) and all(g0_member(d, int(t[t[c, b], cinv]), a) for a, b, _ in _g0_generators(d))


def swap_only(base: QuadBase) -> QuadGroup:
    return QuadGroup(base, [(0, 0, 0), (0, 0, 1)], [(0, 0, 1)])


# ---------------------------------------------------------------------------
# general position


def degree2_general(o: Sequence[tuple[ProjPoint, ProjPoint]]) -> bool:
    (p1, q1), (p2, q2) = o
    return p1 != p2 and q1 != q2


def degree4_orbit_general_position(orbit: Sequence[tuple[ProjPoint, ProjPoint]]) -> bool:
    """Four points: no two on a common fiber and not all on one (1,1)-curve."""
    pts = list(orbit)
    if len(pts) != 4 or len(set(pts)) != 4:
        raise DegenerateInput("expected four distinct points")
    xs = [p for p, _ in pts]
    ys = [q for _, q in pts]
    if len(set(xs)) < 4 or len(set(ys)) < 4:
        return False
    return cross_ratio(*xs) != cross_ratio(*ys)


def find_degree2_orbit_general_position(G: QuadGroup):
    """A G-orbit {p, q} of size 2 with p, q distinct in both coordinates, or None.

    The four points built from the two fixed points of a rotation are tried
    first; then every orbit inside (special points)^2 and finally generic
    points of curves with a pointwise stabilizer of index 2.
    """
    base = G.base
    pi = base.point_index
    z, o = ProjPoint([1, 0]), ProjPoint([0, 1])
    if z in pi and o in pi:
        for p in ((z, z), (z, o), (o, z), (o, o)):
            orb = G.orbit_idx((pi[p[0]], pi[p[1]]))
            if len(orb) == 2:
                pts = [base.point(x) for x in sorted(orb)]
                if degree2_general(pts):
                    return pts
    for orb in G.orbits_of_size(2):
        if degree2_general(orb):
            return orb
    return None


def find_degree4_orbit_general_position(G: QuadGroup):
    for orb in G.orbits_of_size(4):
        if degree4_orbit_general_position(orb):
            return orb
    return None


# ---------------------------------------------------------------------------
# abelian subgroups of small index inside G0


def near_abelian_rank2(base: QuadBase, elements: Sequence[Triple], k: int) -> bool:
    """Does the group have an abelian subgroup with <= 2 invariant factors of index <= k?

    Works on the element list directly; the order bound on element orders
    settles large groups without enumerating subgroups.
    """
    n = len(elements)
    need = -(-n // k)
    orders = {x: base.element_order(x) for x in elements}
    top = max(orders.values())
    if top >= need:
        return True
    if top * top < need:
        return False
    lo = -(-need // top)
    cyc: dict[frozenset, Triple] = {}
    for x in elements:
        if orders[x] < lo:
            continue
        pw = [(0, 0, 0)]
        y = x
        while y != (0, 0, 0):
            pw.append(y)
            y = base.mul(y, x)
        cyc.setdefault(frozenset(pw), x)
    items = sorted(cyc.items(), key=lambda kv: -len(kv[0]))
    for i, (sa, a) in enumerate(items):
        for sb, b in items[i:]:
            if len(sa) * len(sb) < need:
                break
            if base.mul(a, b) != base.mul(b, a):
                continue
            if len(sa) * len(sb) // len(sa & sb) >= need:
                return True
    return False


def lattice_action(G: QuadGroup) -> list[list[list[int]]]:
    """Action on Z f1 + Z f2 by the generators (swap exchanges f1, f2)."""
    return [[[0, 1], [1, 0]] if g[2] else [[1, 0], [0, 1]] for g in G.generators]
