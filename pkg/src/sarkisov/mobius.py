"""Finite subgroups of PGL_2 realized by exact matrices.

One conjugacy representative per isomorphism type is enough, so each label
gets a fixed set of generators:

* C_n: the rotation x -> zeta_n x
* D_n: the rotation plus the involution x -> 1/x
* A4, S4: octahedral symmetries over Q(i)
* A5: Klein's icosahedral generators over Q(zeta_5)

All generators have root-of-unity determinant, which keeps every eigenvalue
computation inside a cyclotomic field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cyclotomic import ALL, CycNum, FixedSet1D, Mat, ProjPoint, eigen_fixed_points, sqrt5
from .groups import FiniteGroup, IsoClass, recognize

LABELS = ("C", "D", "A4", "S4", "A5")

_EXPECTED_ORDER = {"A4": 12, "S4": 24, "A5": 60}


class InvalidParameter(ValueError):
    pass


def _mat_mul(a: Mat, b: Mat) -> Mat:
    # labels keep a root-of-unity determinant; only keys are normalized
    return a @ b


def _key(m: Mat):
    return m.proj_key()


@dataclass
class KleinGroup:
    label: str
    n: int | None
    gens: list[Mat]
    group: FiniteGroup
    _fixed: dict = field(default_factory=dict, repr=False)

    @property
    def matrices(self) -> list[Mat]:
        return self.group.labels

    @property
    def order(self) -> int:
        return self.group.n

    def name(self) -> str:
        return f"{self.label}{self.n}" if self.n is not None else self.label

    def matrix(self, i: int) -> Mat:
        return self.group.labels[i]

    def fixed(self, i: int) -> FixedSet1D:
        """Fixed locus of element i on P^1 (cached)."""
        if i not in self._fixed:
            self._fixed[i] = eigen_fixed_points(self.group.labels[i])
        return self._fixed[i]

    def index_of(self, m: Mat) -> int:
        return self.group.index[_key(m)]

    def to_json(self) -> dict:
        d = {"pgl2": self.label}
        if self.n is not None:
            d["n"] = self.n
        return d

    def iso_class(self) -> IsoClass:
        return recognize(self.group)


def generators_for(label: str, n: int | None = None) -> list[Mat]:
    if label == "C":
        if n is None or n <= 0:
            raise InvalidParameter("cyclic label needs n >= 1")
        return [] if n == 1 else [Mat.diag(CycNum.zeta(n), 1)]
    if label == "D":
        if n is None or n <= 0:
            raise InvalidParameter("dihedral label needs n >= 1")
        s = Mat([[0, 1], [1, 0]])
        return [s] if n == 1 else [Mat.diag(CycNum.zeta(n), 1), s]
    i = CycNum.zeta(4)
    if label in ("A4", "S4"):
        # x -> -x and x -> (x + i)/(x - i), scaled to determinant 1
        half = Mat.diag(-1, 1)
        c = Mat([[1, i], [1, -i]]).scale((1 - i).inverse())
        if label == "A4":
            return [half, c]
        return [Mat.diag(i, 1), c]
    if label == "A5":
        e = CycNum.zeta(5)
        s = Mat.diag(e**3, e**2)
        t = Mat([[-(e - e**4), e**2 - e**3], [e**2 - e**3, e - e**4]]).scale(sqrt5().inverse())
        return [s, t]
    raise InvalidParameter(f"unknown PGL2 label {label!r}")


@lru_cache(maxsize=None)
def realize(label: str, n: int | None = None) -> KleinGroup:
    """Fixed matrix representative of a finite subgroup of PGL_2."""
    if label in ("Cyclic", "Dihedral"):
        label = label[0]
    if label in ("C", "D"):
        if n is None or n <= 0:
            raise InvalidParameter("n must be a positive integer")
    else:
        n = None
    gens = generators_for(label, n)
    grp = FiniteGroup.generate(gens, _mat_mul, Mat.identity(2), key=_key, bound=10**6)
    grp.descriptor = {"pgl2": label, **({"n": n} if n is not None else {})}
    kg = KleinGroup(label, n, gens, grp)
    expected = {"C": n, "D": 2 * n if n else None}.get(label, _EXPECTED_ORDER.get(label))
    if grp.n != expected:
        raise AssertionError(f"realization of {label}{n or ''} has order {grp.n}, expected {expected}")
    return kg


def fixed_locus_on_P1(m: Mat) -> FixedSet1D:
    return eigen_fixed_points(m)


def group_fixed_points(k: KleinGroup) -> FixedSet1D:
    """Common fixed points of all elements (ALL for the trivial group)."""
    acc = ALL
    for i in range(1, k.order):
        f = k.fixed(i)
        if f is ALL:
            continue
        acc = f if acc is ALL else acc & f
        if not acc:
            return frozenset()
    return acc


def orbit(k: KleinGroup, p: ProjPoint) -> frozenset:
    return frozenset(m.act(p) for m in k.matrices)
