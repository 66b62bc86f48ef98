"""Picard lattices of del Pezzo surfaces and the degree-6 hexagon model."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import CycNum, Mat, ProjPoint, eigenspaces
from .groups import FiniteGroup, IsoClass, OrderBoundExceeded, dihedral, max_order, recognize


class NotIsometry(ValueError):
    pass


class NotMinimal(ValueError):
    pass


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class PicLattice:
    """Pic of a del Pezzo surface of degree d.

    Degree 8 defaults to the quadric (basis f1, f2); ``quadric=False`` gives
    the blow-up of P^2 at a point, which is never minimal.
    """

    degree: int
    quadric: bool = True

    def __post_init__(self):
        if not 1 <= self.degree <= 9:
            raise ValueError("degree must be in 1..9")

    @property
    def is_quadric(self) -> bool:
        return self.degree == 8 and self.quadric

    @property
    def rank(self) -> int:
        return 2 if self.is_quadric else 10 - self.degree

    @property
    def basis(self) -> list[str]:
        if self.is_quadric:
            return ["f1", "f2"]
        return ["h"] + [f"e{i}" for i in range(1, 10 - self.degree)]

    @cached_property
    def gram(self) -> np.ndarray:
        if self.is_quadric:
            return np.array([[0, 1], [1, 0]], dtype=np.int64)
        return np.diag([1] + [-1] * (9 - self.degree)).astype(np.int64)

    @cached_property
    def K(self) -> np.ndarray:
        if self.is_quadric:
            return np.array([-2, -2], dtype=np.int64)
        return np.array([-3] + [1] * (9 - self.degree), dtype=np.int64)

    @property
    def never_minimal(self) -> bool:
        """Degree 7 and the blown-up plane always carry an invariant (-1)-curve."""
        return self.degree == 7 or (self.degree == 8 and not self.quadric)

    def dot(self, u, v) -> int:
        return int(np.asarray(u) @ self.gram @ np.asarray(v))

    def signature(self) -> tuple[int, int]:
        ev = np.linalg.eigvalsh(self.gram.astype(float))
        return int((ev > 0).sum()), int((ev < 0).sum())


def minus_one_curves(d: int, bound: int | None = None) -> list[tuple[int, ...]]:
    """Classes c = a h - sum b_i e_i with c^2 = cK = -1 and |coefficients| <= bound.

    Written as vectors in the basis (h, e_1, ..., e_r).  The search fixes a
    and then distributes b with sum b = 3a - 1 and sum b^2 = a^2 + 1, pruning
    by Cauchy-Schwarz on the remaining coordinates.
    """
    if not 1 <= d <= 9:
        raise ValueError("degree must be in 1..9")
    r = 9 - d
    if r == 0:
        return []
    bound = 2 * r if bound is None else bound
    out: list[tuple[int, ...]] = []
    for a in range(-bound, bound + 1):
        s_target = 3 * a - 1
        q_target = a * a + 1
        for b in _fixed_sum_square(r, s_target, q_target, bound):
            out.append((a,) + tuple(-x for x in b))
    out.sort()
    return out


def _fixed_sum_square(r: int, s: int, q: int, bound: int):
    """Integer vectors of length r with entries in [-bound, bound], sum s, sum of squares q."""
    if r == 0:
        if s == 0 and q == 0:
            yield ()
        return
    if q < 0 or s * s > r * q:
        return
    if (s - q) % 2:
        return  # x and x^2 have equal parity
    top = min(bound, math.isqrt(q))
    for x in range(-top, top + 1):
        for rest in _fixed_sum_square(r - 1, s - x, q - x * x, bound):
            yield (x,) + rest


def minus_one_curves_certified(d: int) -> tuple[list[tuple[int, ...]], int]:
    """Enumerate with increasing bound until doubling it changes nothing."""
    bound = 2
    cur = minus_one_curves(d, bound)
    while True:
        nxt = minus_one_curves(d, 2 * bound)
        if nxt == cur:
            return cur, bound
        bound *= 2
        cur = nxt


EXPECTED_COUNTS = {9: 0, 8: 1, 7: 3, 6: 6, 5: 10, 4: 16, 3: 27, 2: 56, 1: 240}


def _rank_q(rows: Sequence[Sequence[int]], ncols: int) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def invariant_rank(lattice: PicLattice, action: Sequence[Sequence[Sequence[int]]]) -> int:
    """Rank of the sublattice fixed by every matrix (columns = images of basis vectors)."""
    n = lattice.rank
    rows: list[list[int]] = []
    for m in action:
        M = np.asarray(m, dtype=np.int64)
        if M.shape != (n, n):
            raise NotIsometry("action matrix has the wrong shape")
        if not np.array_equal(M.T @ lattice.gram @ M, lattice.gram):
            raise NotIsometry("action does not preserve the intersection form")
        if not np.array_equal(M @ lattice.K, lattice.K):
            raise NotIsometry("action does not fix the canonical class")
        rows.extend((M - np.eye(n, dtype=np.int64)).tolist())
    return n - _rank_q(rows, n) if rows else n


# ---------------------------------------------------------------------------
# the hexagon model of the degree-6 surface
#
# S = {x0 y0 = x1 y1 = x2 y2} in P^2 x P^2.  Hexagon vertices, in cyclic order:
#   0: e1, 1: d12, 2: e2, 3: d23, 4: e3, 5: d13
# so r (i -> i+1) is a rotation by one step, tau acts as r^3 and the
# diagonal S3 of coordinate permutations is <r^2, rs>.  Here
# e_i = {x_j = x_k = 0} and d_jk = {y_j = y_k = 0}.  The torus acts by
# x_i -> l_i x_i, y_i -> y_i / l_i; S3 permutes coordinates; tau swaps x, y.

TORUS_DEN = 27720  # lcm(1..12): exponents of torus elements live in (1/TORUS_DEN) Z / Z

Perm3 = tuple[int, int, int]
HexEl = tuple[tuple[int, int], Perm3, int]

_E_VERTEX = (0, 2, 4)
_D_VERTEX = {frozenset({0, 1}): 1, frozenset({1, 2}): 3, frozenset({0, 2}): 5}
_S3 = tuple(itertools.permutations(range(3)))
HEX_IDENTITY: HexEl = ((0, 0), (0, 1, 2), 0)


def _perm_mul(p: Perm3, q: Perm3) -> Perm3:
    return tuple(p[q[i]] for i in range(3))  # type: ignore[return-value]


def _perm_inv(p: Perm3) -> Perm3:
    out = [0, 0, 0]
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)  # type: ignore[return-value]


def torus_norm(t3: Sequence[int]) -> tuple[int, int]:
    """Exponent triple modulo the diagonal, normalized to (0, a1, a2)."""
    return ((t3[1] - t3[0]) % TORUS_DEN, (t3[2] - t3[0]) % TORUS_DEN)


def _sigma_torus(p: Perm3, t: tuple[int, int]) -> tuple[int, int]:
    full = (0, t[0], t[1])
    moved = [0, 0, 0]
    for i in range(3):
        moved[p[i]] = full[i]
    return torus_norm(moved)


def hex_mul(g: HexEl, h: HexEl) -> HexEl:
    """(t1, s1, w1)(t2, s2, w2) = (t1 + s1(+-t2), s1 s2, w1 + w2)."""
    t1, p1, w1 = g
    t2, p2, w2 = h
    if w1:
        t2 = ((-t2[0]) % TORUS_DEN, (-t2[1]) % TORUS_DEN)
    m = _sigma_torus(p1, t2)
    return ((t1[0] + m[0]) % TORUS_DEN, (t1[1] + m[1]) % TORUS_DEN), _perm_mul(p1, p2), w1 ^ w2


def vertex_perm(g: HexEl) -> tuple[int, ...]:
    _, p, w = g
    out = [0] * 6
    for i in range(3):
        out[_E_VERTEX[i]] = _E_VERTEX[p[i]]
    for pair, v in _D_VERTEX.items():
        out[v] = _D_VERTEX[frozenset(p[i] for i in pair)]
    if w:
        out = [(v + 3) % 6 for v in out]
    return tuple(out)


def _dihedral6_perm(k: int, e: int) -> tuple[int, ...]:
    # r^k s^e with r: i -> i+1 and s: i -> 1-i, a reflection through two
    # edge midpoints; the coordinate transposition x1 <-> x2 is then rs
    return tuple(((1 - i if e else i) + k) % 6 for i in range(6))


@lru_cache(maxsize=None)
def hexagon_group() -> tuple[FiniteGroup, dict]:
    """D6 as a FiniteGroup with id k + 6e for r^k s^e, and perm -> id."""
    g = dihedral(6)
    index = {_dihedral6_perm(k, e): k + 6 * e for k in range(6) for e in range(2)}
    return g, index


@lru_cache(maxsize=None)
def lift_of_vertex_perm() -> dict[tuple[int, ...], HexEl]:
    out = {}
    for p in _S3:
        for w in (0, 1):
            g = ((0, 0), p, w)
            out[vertex_perm(g)] = g
    return out


def d6_element(k: int, e: int) -> HexEl:
    """Standard lift (trivial torus part) of r^k s^e."""
    return lift_of_vertex_perm()[_dihedral6_perm(k, e)]


def named_images() -> dict[str, int]:
    """Masks of the named subgroups of D6 (ids k + 6e)."""
    g, _ = hexagon_group()
    r, s = 1, 6
    r2 = 2
    rs = int(g.table[r, s])
    return {
        "1": 1,
        "<r>": g.closure_mask([r]),
        "<r^2,s>": g.closure_mask([r2, s]),
        "<r^2,rs>": g.closure_mask([r2, rs]),
        "<r,s>": g.closure_mask([r, s]),
        "<r^3,s>": g.closure_mask([3, s]),
        "<r^2>": g.closure_mask([r2]),
        "<r^3>": g.closure_mask([3]),
    }


MINIMAL_IMAGE_NAMES = ("<r>", "<r^2,s>", "<r,s>")


def pic_matrix(g: HexEl) -> list[list[int]]:
    """Action on Pic = Z<h, e1, e2, e3>, columns are images of basis vectors."""
    _, p, w = g
    cols: list[list[int]] = []
    # tau: h -> 2h - e1 - e2 - e3, e_i -> h - e_j - e_k
    if w:
        base_cols = [[2, -1, -1, -1]] + [[1] + [0 if j == i else -1 for j in range(3)] for i in range(3)]
    else:
        base_cols = [[1, 0, 0, 0]] + [[0] + [1 if j == i else 0 for j in range(3)] for i in range(3)]
    for col in base_cols:
        new = [col[0], 0, 0, 0]
        for i in range(3):
            new[1 + p[i]] = col[1 + i]
        cols.append(new)
    return [[cols[j][i] for j in range(4)] for i in range(4)]


class HexGroup:
    """A finite group acting on the degree-6 del Pezzo surface."""

    def __init__(self, elements: Iterable[HexEl], gens: Sequence[HexEl] | None = None):
        self.elements: tuple[HexEl, ...] = tuple(sorted(set(elements)))
        self.element_set = frozenset(self.elements)
        self._gens = list(gens) if gens is not None else None
        self._fg: FiniteGroup | None = None

    @classmethod
    def generated(cls, gens: Sequence[HexEl], bound: int | None = None) -> "HexGroup":
        bound = max_order() if bound is None else bound
        gens = [g for g in gens if g != HEX_IDENTITY]
        seen = {HEX_IDENTITY}
        frontier = [HEX_IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = hex_mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > bound:
                            raise OrderBoundExceeded(f"hexagon-model group exceeds {bound} elements")
                        nxt.append(y)
            frontier = nxt
        return cls(seen, gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> list[HexEl]:
        if self._gens is None:
            gens: list[HexEl] = []
            cur = {HEX_IDENTITY}
            for x in self.elements:
                if x not in cur:
                    gens.append(x)
                    cur = set(HexGroup.generated(gens, bound=10**6).elements)
            self._gens = gens
        return self._gens

    def materialize(self) -> FiniteGroup:
        if self._fg is None:
            if self.order > max_order():
                raise OrderBoundExceeded(f"|G| = {self.order} exceeds materialization cap")
            els = [HEX_IDENTITY] + [x for x in self.elements if x != HEX_IDENTITY]
            idx = {x: i for i, x in enumerate(els)}
            table = [[idx[hex_mul(x, y)] for y in els] for x in els]
            fg = FiniteGroup(table, [idx[g] for g in self.generators], labels=els)
            fg.index = idx
            self._fg = fg
        return self._fg

    def subgroup_from_ids(self, ids: Iterable[int]) -> "HexGroup":
        fg = self.materialize()
        return HexGroup(fg.labels[i] for i in ids)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "generators": [{"torus": [f"{a}/{TORUS_DEN}" for a in t], "sigma": list(p), "swap": w} for t, p, w in self.generators],
        }


def hexagon_image(G: HexGroup) -> int:
    """Image in D6 as a bitmask over the ids of ``hexagon_group()``."""
    _, index = hexagon_group()
    m = 0
    for g in G.elements:
        m |= 1 << index[vertex_perm(g)]
    return m


def image_name(mask: int) -> str | None:
    for name, m in named_images().items():
        if m == mask:
            return name
    return None


def hex_minimal(G: HexGroup) -> bool:
    return hexagon_image(G) in {named_images()[k] for k in MINIMAL_IMAGE_NAMES}


def hex_invariant_rank(G: HexGroup) -> int:
    return invariant_rank(PicLattice(6), [pic_matrix(g) for g in G.generators])


def torus_part(G: HexGroup) -> list[HexEl]:
    return [g for g in G.elements if g[1] == (0, 1, 2) and not g[2]]


def torus_part_class(G: HexGroup) -> IsoClass:
    els = torus_part(G)
    return recognize(HexGroup(els).materialize())


# -- exact action on P^2 x P^2 ----------------------------------------------------


def _root(a: int) -> CycNum:
    f = Fraction(a, TORUS_DEN)
    return CycNum.zeta(f.denominator, f.numerator)


def x_matrix(g: HexEl, inverse_torus: bool = False) -> Mat:
    """Matrix acting on the x (or, with ``inverse_torus``, y) coordinates."""
    t, p, _ = g
    lam = [CycNum.rational(1), _root(t[0]), _root(t[1])]
    if inverse_torus:
        lam = [l.inverse() for l in lam]
    rows = [[CycNum.rational(0)] * 3 for _ in range(3)]
    for i in range(3):
        rows[p[i]][i] = lam[p[i]]
    return Mat(rows)


def hex_act(g: HexEl, pt: tuple[ProjPoint, ProjPoint]) -> tuple[ProjPoint, ProjPoint]:
    x, y = pt
    if g[2]:
        x, y = y, x
    return x_matrix(g).act(x), x_matrix(g, True).act(y)


def on_surface(pt: tuple[ProjPoint, ProjPoint]) -> bool:
    x, y = pt
    v = [a * b for a, b in zip(x, y)]
    return v[0] == v[1] == v[2]


WHOLE = "Whole"
BASEPOINT = (ProjPoint([1, 1, 1]), ProjPoint([1, 1, 1]))


def hex_fixed_points(G: HexGroup):
    """Exact fixed points of G on the surface (``WHOLE`` for the trivial group).

    An element whose hexagon image is a rotation by two steps acts on each
    factor with three distinct eigenlines, so the fixed points of G are
    among nine candidate pairs.
    """
    if G.order == 1:
        return WHOLE
    pivot = next((g for g in G.elements if not g[2] and _is_3cycle(g[1])), None)
    if pivot is None:
        raise NotMinimal("fixed points are computed for groups whose image contains a rotation of order 3")
    xs = [ProjPoint(v) for _, basis in eigenspaces(x_matrix(pivot)) for v in basis]
    ys = [ProjPoint(v) for _, basis in eigenspaces(x_matrix(pivot, True)) for v in basis]
    out = []
    for cand in itertools.product(xs, ys):
        if on_surface(cand) and all(hex_act(g, cand) == cand for g in G.generators):
            out.append(cand)
    return frozenset(out)


def _is_3cycle(p: Perm3) -> bool:
    return p in ((1, 2, 0), (2, 0, 1))


# -- enumeration -------------------------------------------------------------------


def image_generators(name: str) -> list[HexEl]:
    gens = {"<r>": [(1, 0)], "<r^2,s>": [(2, 0), (0, 1)], "<r,s>": [(1, 0), (0, 1)]}[name]
    return [d6_element(k, e) for k, e in gens]


def torus_elements(max_torsion: int) -> list[tuple[int, int]]:
    """Elements of the torus (mod diagonal) whose order is at most max_torsion."""
    out = set()
    for n in range(1, max_torsion + 1):
        step = TORUS_DEN // n
        for a in range(n):
            for b in range(n):
                out.add((a * step, b * step))
    return sorted(out, key=lambda t: (_torus_order(t), t))


def _torus_order(t: tuple[int, int]) -> int:
    return math.lcm(Fraction(t[0], TORUS_DEN).denominator, Fraction(t[1], TORUS_DEN).denominator)


def enumerate_hex_groups(max_torsion: int = 12, bound: int | None = None) -> list[HexGroup]:
    """Minimal groups generated by a torus element together with lifts of a minimal image.

    Two families per image: the standard lifts plus one torus generator, and
    the standard lifts with the first one multiplied by a torus element.
    Groups above the bound are skipped; duplicates are merged.
    """
    bound = max_order() if bound is None else bound
    seen: dict[frozenset, HexGroup] = {}
    for name in MINIMAL_IMAGE_NAMES:
        lifts = image_generators(name)
        for t in torus_elements(max_torsion):
            tel = (t, (0, 1, 2), 0)
            variants = [[tel] + lifts, [hex_mul(tel, lifts[0])] + lifts[1:]]
            for gens in variants:
                try:
                    G = HexGroup.generated(gens, bound)
                except OrderBoundExceeded:
                    continue
                seen.setdefault(G.element_set, G)
    return sorted(seen.values(), key=lambda G: (G.order, G.elements))
