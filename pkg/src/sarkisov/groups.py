"""Finite groups given by dense multiplication tables.

Elements are the integers 0..n-1 with 0 the identity.  Subsets are handled as
Python int bitmasks, which keeps subgroup lattices hashable and cheap.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 240


class OrderBoundExceeded(ValueError):
    pass


def max_order() -> int:
    """Materialization cap; SARKISOV_MAX_ORDER overrides the default."""
    env = os.environ.get("SARKISOV_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class FiniteGroup:
    """A finite group with an explicit multiplication table.

    ``labels`` optionally carries the concrete objects (matrices, tuples, ...)
    the ids stand for; ``index`` maps them back.
    """

    def __init__(self, table, generators: Sequence[int] | None = None, labels=None, descriptor=None):
        self.table = np.asarray(table, dtype=np.int32)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.n = n
        self.identity = 0
        if not np.array_equal(self.table[0], np.arange(n)) or not np.array_equal(self.table[:, 0], np.arange(n)):
            raise ValueError("element 0 must be the identity")
        self.generators = list(generators) if generators is not None else self._pick_generators()
        self.labels = labels
        self.descriptor = descriptor
        self.inv = np.argmax(self.table == 0, axis=1).astype(np.int32)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def generate(
        cls,
        gens: Sequence[Hashable],
        mul: Callable,
        identity: Hashable,
        key: Callable = lambda x: x,
        bound: int | None = None,
        descriptor=None,
    ) -> "FiniteGroup":
        """Close ``gens`` under ``mul`` and tabulate.  Ids follow BFS order."""
        bound = max_order() if bound is None else bound
        labels = [identity]
        index = {key(identity): 0}
        gen_ids = []
        for g in gens:
            k = key(g)
            if k not in index:
                index[k] = len(labels)
                labels.append(g)
            gen_ids.append(index[k])
        i = 0
        while i < len(labels):
            x = labels[i]
            for g in gens:
                y = mul(x, g)
                k = key(y)
                if k not in index:
                    if len(labels) >= bound:
                        raise OrderBoundExceeded(f"group order exceeds materialization cap {bound}")
                    index[k] = len(labels)
                    labels.append(y)
            i += 1
        n = len(labels)
        table = np.zeros((n, n), dtype=np.int32)
        # full table via right multiplication by generators is not enough; do it directly
        for a in range(n):
            for b in range(n):
                table[a, b] = index[key(mul(labels[a], labels[b]))]
        grp = cls(table, [gi for gi in gen_ids if gi != 0] or [], labels, descriptor)
        grp.index = index
        grp.key = key
        return grp

    def _pick_generators(self) -> list[int]:
        gens: list[int] = []
        cur = 1
        for x in range(1, self.n):
            if not (cur >> x) & 1:
                gens.append(x)
                cur = self.closure_mask(gens)
        return gens

    # -- basics ---------------------------------------------------------------

    def __len__(self):
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.n):
            k, x = 1, a
            while x != 0:
                x = int(self.table[x, a])
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def table_rows(self) -> list[list[int]]:
        return self.table.tolist()

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_axioms(self) -> bool:
        t = self.table
        n = self.n
        if sorted(set(t.flatten().tolist())) != list(range(n)):
            return False
        for row in t:
            if len(set(row.tolist())) != n:
                return False
        # associativity, exhaustive
        left = t[t, :]  # left[a, b, c] = (a*b)*c
        right = t[:, t]  # right[a, b, c] = a*(b*c)
        return bool(np.array_equal(left, right))

    # -- subsets --------------------------------------------------------------

    def closure_mask(self, gens: Iterable[int], start: Iterable[int] = (0,)) -> int:
        gens = [int(g) for g in gens]
        if not gens:
            return mask_of(start) | 1
        seen = np.zeros(self.n, dtype=bool)
        front = np.array(sorted(set(start) | {0}), dtype=np.int32)
        seen[front] = True
        g = np.array(gens, dtype=np.int32)
        while front.size:
            nxt = np.unique(self.table[front][:, g].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            front = nxt
        return mask_of(np.flatnonzero(seen).tolist())

    def subgroup(self, elements: Iterable[int] | int, generators: Sequence[int] | None = None) -> "Subgroup":
        if isinstance(elements, int):
            m = elements
        else:
            m = mask_of(elements)
        return Subgroup(self, m, tuple(generators) if generators is not None else None)

    def generated(self, gens: Sequence[int]) -> "Subgroup":
        return Subgroup(self, self.closure_mask(gens), tuple(gens))

    def is_subgroup_mask(self, mask: int) -> bool:
        els = elements_of(mask)
        if not els or els[0] != 0:
            return False
        for a in els:
            for b in els:
                if not (mask >> int(self.table[a, b])) & 1:
                    return False
        return True

    def conjugate_mask(self, mask: int, g: int) -> int:
        gi = int(self.inv[g])
        return mask_of(int(self.table[self.table[g, x], gi]) for x in elements_of(mask))

    def is_normal_mask(self, mask: int) -> bool:
        return all(self.conjugate_mask(mask, g) == mask for g in self.generators)

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for x in range(self.n):
            if x in seen:
                continue
            cls_ = sorted({int(self.table[self.table[g, x], self.inv[g]]) for g in range(self.n)})
            seen.update(cls_)
            out.append(tuple(cls_))
        return out

    @cached_property
    def derived_mask(self) -> int:
        comms = set()
        t, inv = self.table, self.inv
        for a in range(self.n):
            for b in range(self.n):
                comms.add(int(t[t[inv[a], inv[b]], t[a, b]]))
        # the commutator subgroup is generated by commutators and is normal
        return self.closure_mask(sorted(comms))

    # -- quotients --------------------------------------------------------------

    def quotient(self, normal_mask: int) -> tuple["FiniteGroup", list[int]]:
        """Quotient group and the projection (element id -> coset id)."""
        proj = [-1] * self.n
        reps = []
        nels = elements_of(normal_mask)
        for x in range(self.n):
            if proj[x] >= 0:
                continue
            cid = len(reps)
            reps.append(x)
            for k in nels:
                proj[int(self.table[x, k])] = cid
        m = len(reps)
        table = np.zeros((m, m), dtype=np.int32)
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                table[i, j] = proj[int(self.table[a, b])]
        return FiniteGroup(table), proj

    # -- invariants -------------------------------------------------------------

    @cached_property
    def abelian_invariants(self) -> tuple[int, ...]:
        """Invariant factors of G/[G,G], increasing, each dividing the next."""
        q, _ = self.quotient(self.derived_mask)
        return abelian_invariant_factors(q)

    @cached_property
    def fingerprint(self) -> tuple:
        hist = tuple(sorted(Counter(self.element_orders).items()))
        classes = tuple(sorted(len(c) for c in self.conjugacy_classes))
        return (self.n, self.abelian_invariants, hist, classes)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        if self.descriptor is not None:
            return self.descriptor
        return {"kind": "table", "mul": self.table.tolist()}

    def __repr__(self):
        return f"FiniteGroup(order={self.n})"


def abelian_invariant_factors(g: FiniteGroup) -> tuple[int, ...]:
    if g.n == 1:
        return ()
    orders = g.element_orders
    # p-primary parts from counts of elements killed by p^k
    primary: list[list[int]] = []
    n = g.n
    for p in _primes(n):
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        counts = [sum(1 for o in orders if (p**k) % o == 0) for k in range(e + 1)]
        # counts[k] = p^(sum_i min(a_i, k)); number of parts >= k is log_p(counts[k]/counts[k-1])
        ge = [round(math.log(counts[k] // counts[k - 1], p)) for k in range(1, e + 1)]
        parts = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            parts.extend([k + 1] * (ge[k] - nxt))
        primary.append([p**a for a in sorted(parts, reverse=True)])
    width = max((len(x) for x in primary), default=0)
    factors = []
    for i in range(width):
        f = 1
        for pp in primary:
            if i < len(pp):
                f *= pp[i]
        factors.append(f)
    return tuple(sorted(factors))


def _primes(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Subgroup:
    """A subgroup of a materialized parent, stored as an element bitmask."""

    __slots__ = ("parent", "mask", "_gens", "_els", "_group")

    def __init__(self, parent: FiniteGroup, mask: int, gens: tuple | None = None):
        self.parent = parent
        self.mask = mask
        self._gens = gens
        self._els = None
        self._group = None

    @property
    def elements(self) -> tuple[int, ...]:
        if self._els is None:
            self._els = elements_of(self.mask)
        return self._els

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.mask == other.mask and self.parent is other.parent

    def __hash__(self):
        return hash(self.mask)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            gens = []
            cur = 1
            for x in self.elements:
                if not (cur >> x) & 1:
                    gens.append(x)
                    cur = self.parent.closure_mask(gens)
            self._gens = tuple(gens)
        return self._gens

    def is_normal(self) -> bool:
        return self.parent.is_normal_mask(self.mask)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup; multiplication is restricted."""
        if self._group is None:
            els = self.elements
            pos = {e: i for i, e in enumerate(els)}
            t = self.parent.table[np.ix_(els, els)]
            table = np.vectorize(pos.__getitem__, otypes=[np.int32])(t) if len(els) > 1 else np.zeros((1, 1), np.int32)
            labels = [self.parent.labels[e] for e in els] if self.parent.labels is not None else None
            gens = [pos[g] for g in self.generators]
            g = FiniteGroup(table, gens, labels)
            g.embedding = els
            self._group = g
        return self._group

    def __repr__(self):
        return f"Subgroup(order={self.order})"


@dataclass
class SubgroupLattice:
    group: FiniteGroup
    subgroups: list[Subgroup]

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def contains(self, i: int, j: int) -> bool:
        """True when subgroups[i] is contained in subgroups[j]."""
        return self.subgroups[i] <= self.subgroups[j]

    @cached_property
    def normal_flags(self) -> list[bool]:
        return [h.is_normal() for h in self.subgroups]


# ---------------------------------------------------------------------------
# subgroup enumeration


def _is_prime_power(k: int) -> bool:
    return k > 1 and len(_primes(k)) == 1


def subgroups(g: FiniteGroup, bound: int | None = None) -> SubgroupLattice:
    """All subgroups (not up to conjugacy), sorted by (order, mask).

    Every subgroup strictly above H contains an element of prime-power order
    outside H, so joining with prime-power cyclic subgroups reaches them all.
    """
    bound = max_order() if bound is None else bound
    if g.n > bound:
        raise OrderBoundExceeded(f"|G| = {g.n} exceeds bound {bound}")
    cache = getattr(g, "_subgroup_cache", None)
    if cache is not None:
        return cache
    lat = SubgroupLattice(g, _join_closure(g, {1: ()}))
    g._subgroup_cache = lat
    return lat


def subgroups_meeting(g: FiniteGroup, seeds: Iterable[int]) -> list[Subgroup]:
    """Subgroups containing at least one of the seed elements.

    A subgroup containing a seed x contains a seed-generated cyclic group
    only if the caller passes seeds closed under the relevant powers; for
    the swap elements of a quadric group it suffices to pass those of
    2-power order.
    """
    start: dict[int, tuple[int, ...]] = {}
    for x in seeds:
        start.setdefault(g.closure_mask([x]), (int(x),))
    return _join_closure(g, start)


def _prime_power_cyclics(g: FiniteGroup) -> list[tuple[int, int]]:
    cache = getattr(g, "_pp_cyclics", None)
    if cache is None:
        cyc: dict[int, int] = {}
        for x in range(1, g.n):
            if _is_prime_power(g.element_orders[x]):
                cyc.setdefault(g.closure_mask([x]), x)
        cache = sorted(cyc.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0]))
        g._pp_cyclics = cache
    return cache


def _join_closure(g: FiniteGroup, found: dict[int, tuple[int, ...]]) -> list[Subgroup]:
    cyclics = _prime_power_cyclics(g)
    elems = {m: np.array(elements_of(m), dtype=np.int32) for m in found}
    queue = list(found)
    while queue:
        nxt = []
        for h in queue:
            gens = found[h]
            for cm, x in cyclics:
                if cm & h == cm:
                    continue
                j, els = _join(g, elems[h], gens + (x,))
                if j not in found:
                    found[j] = gens + (x,)
                    elems[j] = els
                    nxt.append(j)
        queue = nxt
    subs = [Subgroup(g, m, gens) for m, gens in found.items()]
    subs.sort(key=lambda s: (s.order, s.mask))
    return subs


def _join(g: FiniteGroup, h: np.ndarray, gens: Sequence[int]) -> tuple[int, np.ndarray]:
    """<H, gens> as a union of right cosets H r, closed under right multiplication by gens."""
    rows = g.table_rows
    seen = np.zeros(g.n, dtype=bool)
    seen[h] = True
    reps = [0]
    for r in reps:
        row = rows[r]
        for y in gens:
            z = row[y]
            if not seen[z]:
                seen[g.table[h, z]] = True
                reps.append(z)
    if len(reps) == 1:
        els = h
    else:
        els = np.flatnonzero(seen).astype(np.int32)
    return mask_of(els.tolist()), els


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return [h for h in subgroups(g) if h.is_normal()]


def index2_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Subgroups of index 2, via the elementary abelian quotient by squares."""
    squares = sorted({int(g.table[x, x]) for x in range(g.n)})
    sq = g.closure_mask(squares)
    q, proj = g.quotient(sq)
    # q is elementary abelian of order 2^r; hyperplanes = kernels of nonzero characters
    basis: list[int] = []
    cur = 1
    for x in range(1, q.n):
        if not (cur >> x) & 1:
            basis.append(x)
            cur = q.closure_mask(basis)
    r = len(basis)
    # coordinates of each quotient element in the basis
    words = {}
    for bits in itertools.product((0, 1), repeat=r):
        e = 0
        for b, gen in zip(bits, basis):
            if b:
                e = int(q.table[e, gen])
        words[e] = bits
    out = []
    for char in itertools.product((0, 1), repeat=r):
        if not any(char):
            continue
        kernel_q = {e for e, bits in words.items() if sum(c * b for c, b in zip(char, bits)) % 2 == 0}
        out.append(Subgroup(g, mask_of(x for x in range(g.n) if proj[x] in kernel_q)))
    out.sort(key=lambda s: s.mask)
    return out


# ---------------------------------------------------------------------------
# catalog constructors


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def perm_group(gens: Sequence[Sequence[int]], descriptor=None) -> FiniteGroup:
    gens = [tuple(p) for p in gens]
    n = len(gens[0]) if gens else 1
    return FiniteGroup.generate(gens, _perm_mul, tuple(range(n)), descriptor=descriptor)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, [1] if n > 1 else [], list(range(n)), {"kind": "catalog", "tag": "C", "n": n})


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n; element (k, e) = r^k s^e has id k + n*e."""
    if n < 1:
        raise ValueError("dihedral parameter must be positive")
    m = 2 * n
    table = np.zeros((m, m), dtype=np.int32)
    for a in range(m):
        k1, e1 = a % n, a // n
        for b in range(m):
            k2, e2 = b % n, b // n
            k = (k1 + (k2 if e1 == 0 else -k2)) % n
            table[a, b] = k + n * ((e1 + e2) % 2)
    gens = [1 % n, n] if n > 1 else [n]
    gens = [x for x in gens if x != 0]
    return FiniteGroup(table, gens, [(a % n, a // n) for a in range(m)], {"kind": "catalog", "tag": "D", "n": n})


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic(1)
    t = (1, 0) + tuple(range(2, n))
    c = tuple(range(1, n)) + (0,)
    g = perm_group([t, c] if n > 2 else [t])
    g.descriptor = {"kind": "catalog", "tag": "S", "n": n}
    return g


def alternating(n: int) -> FiniteGroup:
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(tuple(p))
    g = perm_group(gens or [tuple(range(n))])
    g.descriptor = {"kind": "catalog", "tag": "A", "n": n}
    return g


def ga1f5() -> FiniteGroup:
    """Affine maps x -> a x + b of F_5, i.e. C5 x| C4."""
    def mul(f, g):
        a1, b1 = f
        a2, b2 = g
        return ((a1 * a2) % 5, (a1 * b2 + b1) % 5)

    g = FiniteGroup.generate([(1, 1), (2, 0)], mul, (1, 0))
    g.descriptor = {"kind": "catalog", "tag": "GA1F5"}
    return g


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    g = direct_product([cyclic(p)] * k) if k > 0 else cyclic(1)
    g.descriptor = {"kind": "catalog", "tag": "E", "p": p, "k": k}
    return g


def direct_product(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    factors = list(factors)
    if not factors:
        return cyclic(1)
    sizes = [f.n for f in factors]
    els = list(itertools.product(*[range(s) for s in sizes]))
    idx = {e: i for i, e in enumerate(els)}
    n = len(els)
    table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            table[i, j] = idx[tuple(int(f.table[x, y]) for f, x, y in zip(factors, a, b))]
    desc = {"kind": "product", "factors": [f.to_json() for f in factors]}
    return FiniteGroup(table, None, els, desc)


def semidirect(normal: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]]) -> FiniteGroup:
    """N x| H where ``action[h]`` is the permutation of N's ids induced by h."""
    act = [list(a) for a in action]
    els = [(x, h) for h in range(acting.n) for x in range(normal.n)]
    idx = {e: i for i, e in enumerate(els)}
    n = len(els)
    table = np.zeros((n, n), dtype=np.int32)
    for i, (x1, h1) in enumerate(els):
        for j, (x2, h2) in enumerate(els):
            table[i, j] = idx[(int(normal.table[x1, act[h1][x2]]), int(acting.table[h1, h2]))]
    desc = {"kind": "semidirect", "normal": normal.to_json(), "acting": acting.to_json(), "action": act}
    return FiniteGroup(table, None, els, desc)


def from_json(obj: dict) -> FiniteGroup:
    kind = obj.get("kind")
    if kind == "table":
        return FiniteGroup(obj["mul"], descriptor=obj)
    if kind == "product":
        g = direct_product([from_json(f) for f in obj["factors"]])
        return g
    if kind == "semidirect":
        return semidirect(from_json(obj["normal"]), from_json(obj["acting"]), obj["action"])
    if kind == "catalog":
        return construct(obj["tag"], obj.get("n"), obj)
    if "pgl2" in obj:
        from .mobius import realize

        return realize(obj["pgl2"], obj.get("n")).group
    raise ValueError(f"unknown group descriptor: {obj!r}")


def construct(tag: str, n: int | None = None, extra: dict | None = None) -> FiniteGroup:
    if tag in ("C", "Cyclic"):
        return cyclic(n)
    if tag in ("D", "Dihedral"):
        return dihedral(n)
    if tag in ("V4", "Klein4"):
        g = dihedral(2)
        return g
    if tag in ("S", "Symmetric"):
        return symmetric(n)
    if tag in ("A", "Alternating"):
        return alternating(n)
    if tag == "A4":
        return alternating(4)
    if tag == "S4":
        return symmetric(4)
    if tag == "A5":
        return alternating(5)
    if tag == "S5":
        return symmetric(5)
    if tag == "GA1F5":
        return ga1f5()
    if tag in ("E", "ElemAbelian"):
        p = (extra or {}).get("p", 2)
        k = (extra or {}).get("k", n)
        return elementary_abelian(p, k)
    raise ValueError(f"unknown catalog tag {tag!r}")


# ---------------------------------------------------------------------------
# recognition


@dataclass(frozen=True)
class IsoClass:
    tag: str
    n: int | None
    fingerprint: tuple

    def __str__(self):
        if self.tag == "Cyclic":
            return f"C{self.n}"
        if self.tag == "Dihedral":
            return f"D{self.n}"
        if self.tag == "ElemAbelian":
            return f"C2^{self.n}"
        if self.tag == "Other":
            return f"Other(order={self.fingerprint[0]})"
        return self.tag

    @property
    def order(self) -> int:
        return self.fingerprint[0]

    def to_json(self) -> dict:
        d = {"tag": self.tag}
        if self.n is not None:
            d["n"] = self.n
        return d


def _catalog_candidates(order: int) -> list[tuple[str, int | None, Callable[[], FiniteGroup]]]:
    out: list = [("Cyclic", order, lambda: cyclic(order))]
    if order == 4:
        out.append(("Klein4", None, lambda: dihedral(2)))
    if order % 2 == 0 and order >= 6:
        out.append(("Dihedral", order // 2, lambda: dihedral(order // 2)))
    k = order.bit_length() - 1
    if order == 2**k and k >= 3:
        out.append(("ElemAbelian", k, lambda: elementary_abelian(2, k)))
    extra = {12: ("A4", alternating, 4), 24: ("S4", symmetric, 4), 60: ("A5", alternating, 5), 120: ("S5", symmetric, 5)}
    if order in extra:
        tag, fn, m = extra[order]
        out.append((tag, None, lambda: fn(m)))
    if order == 20:
        out.append(("GA1F5", None, ga1f5))
    return out


_CATALOG_FP: dict[int, list] = {}


def catalog_fingerprints(order: int) -> list[tuple[str, int | None, tuple]]:
    if order not in _CATALOG_FP:
        _CATALOG_FP[order] = [(t, n, fn().fingerprint) for t, n, fn in _catalog_candidates(order)]
    return _CATALOG_FP[order]


def _von_dyck(g: FiniteGroup, l: int, m: int, k: int) -> bool:
    # exists a, b with a^l = b^m = (ab)^k = 1 generating g
    ords = g.element_orders
    for a in range(g.n):
        if ords[a] != l:
            continue
        for b in range(g.n):
            if ords[b] == m and ords[int(g.table[a, b])] == k and g.closure_mask([a, b]) == (1 << g.n) - 1:
                return True
    return False


def _certify(g: FiniteGroup, tag: str, n: int | None) -> bool:
    """Presentation-level confirmation beyond the fingerprint match."""
    ords = g.element_orders
    if tag == "Cyclic":
        return max(ords) == g.n
    if tag in ("Klein4", "ElemAbelian"):
        return g.is_abelian and all(o <= 2 for o in ords)
    if tag == "Dihedral":
        for r in range(g.n):
            if ords[r] != n:
                continue
            rm = g.closure_mask([r])
            for s in range(g.n):
                if ords[s] == 2 and not (rm >> s) & 1:
                    if int(g.table[g.table[s, r], s]) == int(g.inv[r]):
                        return True
        return False
    if tag == "A4":
        return _von_dyck(g, 2, 3, 3)
    if tag == "S4":
        return _von_dyck(g, 2, 3, 4)
    if tag == "A5":
        return _von_dyck(g, 2, 3, 5)
    # S5 and GA1F5: fingerprints are unique among groups of their order
    return True


def recognize(g: FiniteGroup) -> IsoClass:
    fp = g.fingerprint
    if g.n == 1:
        return IsoClass("Cyclic", 1, fp)
    for tag, n, cfp in catalog_fingerprints(g.n):
        if cfp == fp and _certify(g, tag, n):
            return IsoClass(tag, n, fp)
    return IsoClass("Other", None, fp)


def iso_from_label(tag: str, n: int | None = None) -> IsoClass:
    """IsoClass of a catalog group named by tag (used when no table is at hand)."""
    norm = {"C": "Cyclic", "D": "Dihedral", "V4": "Klein4", "E": "ElemAbelian"}.get(tag, tag)
    if norm == "Dihedral" and n == 2:
        norm, n = "Klein4", None
    if norm == "Dihedral" and n == 1:
        norm, n = "Cyclic", 2
    g = construct(norm if norm not in ("Klein4",) else "V4", n)
    return recognize(g) if g.n <= max_order() else IsoClass(norm, n, (g.n,))


_FAITHFUL_DEGREE = {"A4": 3, "S4": 3, "A5": 3, "S5": 4, "GA1F5": 4, "Klein4": 2}


def min_faithful_linear_degree(cls: IsoClass) -> int | None:
    """Smallest faithful complex representation degree; None when unknown."""
    if cls.tag == "Cyclic":
        return 1
    if cls.tag == "Dihedral":
        return 2
    if cls.tag == "ElemAbelian":
        return cls.n
    if cls.tag in _FAITHFUL_DEGREE:
        return _FAITHFUL_DEGREE[cls.tag]
    fp = cls.fingerprint
    # abelian groups: one character per invariant factor
    if len(fp) >= 4 and fp[3] and all(c == 1 for c in fp[3]):
        return max(1, len(fp[1]))
    return None


# ---------------------------------------------------------------------------
# abelian subgroups of small index


def _cyclic_subgroups(g: FiniteGroup) -> list[tuple[int, int]]:
    seen: dict[int, int] = {}
    for x in range(g.n):
        m = g.closure_mask([x])
        seen.setdefault(m, x)
    return sorted(seen.items(), key=lambda kv: kv[0])


def index_le_k_fixing_subgroup_exists(g: FiniteGroup, k: int) -> bool:
    """Is there an abelian subgroup with at most two invariant factors of index <= k?

    A point stabilizer acting through its tangent representation is of this
    shape; abelian groups with at most two invariant factors are exactly the
    2-generated ones, so scanning commuting pairs of cyclic subgroups suffices.
    """
    if k < 1:
        raise ValueError("index bound must be positive")
    need = -(-g.n // k)
    cyc = _cyclic_subgroups(g)
    t = g.table
    for i, (ma, a) in enumerate(cyc):
        oa = bin(ma).count("1")
        if oa >= need:
            return True
        for mb, b in cyc[i + 1 :]:
            if t[a, b] != t[b, a]:
                continue
            ob = bin(mb).count("1")
            if oa * ob // bin(ma & mb).count("1") >= need:
                return True
    return False


def has_near_abelian_rank2_subgroup(g: FiniteGroup) -> bool:
    return index_le_k_fixing_subgroup_exists(g, 2)


# ---------------------------------------------------------------------------
# automorphisms


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms, as image tuples indexed by element id, in lexicographic order."""
    gens = g.generators
    if not gens:
        return [(0,)]
    ords = g.element_orders
    cands = [[y for y in range(g.n) if ords[y] == ords[x]] for x in gens]
    out = []
    full = (1 << g.n) - 1
    for imgs in itertools.product(*cands):
        if g.closure_mask(imgs) != full:
            continue
        f = _extend_hom(g, gens, imgs)
        if f is not None and len(set(f)) == g.n:
            out.append(f)
    out.sort()
    return out


def _extend_hom(g: FiniteGroup, gens, imgs) -> tuple[int, ...] | None:
    f = [-1] * g.n
    f[0] = 0
    order = [0]
    i = 0
    t = g.table
    while i < len(order):
        x = order[i]
        for gi, hi in zip(gens, imgs):
            y = int(t[x, gi])
            v = int(t[f[x], hi])
            if f[y] < 0:
                f[y] = v
                order.append(y)
            elif f[y] != v:
                return None
        i += 1
    return tuple(f)
