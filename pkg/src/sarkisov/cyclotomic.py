"""Exact arithmetic in cyclotomic fields and small projective linear algebra.

Numbers live in Q(zeta_N) and are stored as integer coefficient vectors over
the power basis 1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial,
with one common positive denominator.  Binary operations lift both operands to
Q(zeta_lcm).  Equality is exact; hashing goes through the minimal-conductor
canonical form so that equal values hash equally whatever field they were
computed in.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class DegenerateInput(ValueError):
    pass


class EigenError(ArithmeticError):
    """Eigenvalues are not reachable by the root-of-unity trial search."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int, top: int) -> tuple[tuple[int, ...], ...]:
    """Reductions of x^k mod Phi_n for k < top, as length-phi(n) vectors."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for k in range(top):
        rows.append(tuple(cur))
        # multiply by x
        carry = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if carry:
            for j in range(deg):
                cur[j] -= carry * phi[j]
    return tuple(rows)


def _reduce(coeffs: Sequence[int], n: int) -> list[int]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        v = c[k]
        if v:
            c[k] = 0
            base = k - deg
            for j in range(deg):
                c[base + j] -= v * phi[j]
    c = c[:deg]
    c.extend([0] * (deg - len(c)))
    return c


def _lift(coeffs: Sequence[int], n: int, m: int) -> list[int]:
    """Re-express an element of Q(zeta_n) inside Q(zeta_m), n | m."""
    if n == m:
        return list(coeffs)
    step = m // n
    table = _power_table(m, step * len(coeffs) + 1)
    out = [0] * totient(m)
    for k, c in enumerate(coeffs):
        if c:
            row = table[k * step]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


# ---------------------------------------------------------------------------
# CycNum


class CycNum:
    """An exact element of the cyclotomic field Q(zeta_N)."""

    __slots__ = ("N", "num", "den", "_canon", "_hash")

    def __init__(self, N: int, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = list(num)
        if len(num) != totient(N):
            num = _reduce(num, N)
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.N = N
        self.num = tuple(num)
        self.den = den
        self._canon = None
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q: Rational) -> "CycNum":
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        """zeta_n ** k with zeta_n = exp(2 pi i / n)."""
        if n <= 0:
            raise ValueError("root of unity order must be positive")
        k %= n
        return cls(n, _power_table(n, n)[k])

    @staticmethod
    def coerce(x: "CycNum | Rational") -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return Fraction(self.num[0] if self.num else 0, self.den)

    # arithmetic -----------------------------------------------------------

    def _pair(self, other):
        other = CycNum.coerce(other)
        if self.N == other.N:
            return self.N, list(self.num), list(other.num), other
        m = self.N * other.N // math.gcd(self.N, other.N)
        return m, _lift(self.num, self.N, m), _lift(other.num, other.N, m), other

    def __add__(self, other):
        try:
            m, a, b, o = self._pair(other)
        except TypeError:
            return NotImplemented
        return CycNum(m, [x * o.den + y * self.den for x, y in zip(a, b)], self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.N, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            return self + (-CycNum.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        try:
            m, a, b, o = self._pair(other)
        except TypeError:
            return NotImplemented
        if o.is_rational():
            s = b[0] if b else 0
            return CycNum(m, [x * s for x in a], self.den * o.den)
        if self.is_rational() and self.N == 1:
            s = a[0] if a else 0
            return CycNum(m, [y * s for y in b], self.den * o.den)
        prod = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycNum(m, _reduce(prod, m), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, a: int) -> "CycNum":
        """Image under zeta -> zeta^a, gcd(a, N) = 1."""
        n = self.N
        if math.gcd(a, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        table = _power_table(n, n)
        out = [0] * totient(n)
        for k, c in enumerate(self.num):
            if c:
                for j, r in enumerate(table[(k * a) % n]):
                    if r:
                        out[j] += c * r
        return CycNum(n, out, self.den)

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum.rational(1 / self.to_fraction())
        # x^-1 = prod of the other conjugates / norm
        n = self.N
        rest = CycNum.rational(1)
        for a in range(2, n):
            if math.gcd(a, n) == 1:
                rest = rest * self.galois(a)
        norm = self * rest
        return rest * CycNum.rational(1 / norm.to_fraction())

    def __truediv__(self, other):
        try:
            return self * CycNum.coerce(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycNum":
        return self.galois(-1 % self.N) if self.N > 2 else self

    # equality / canonical form ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        m, a, b, o = self._pair(other)
        return self.den == o.den and a == b

    def canonical(self) -> "CycNum":
        """Same value written over its true conductor."""
        if self._canon is None:
            self._canon = self._find_canonical()
        return self._canon

    def _find_canonical(self) -> "CycNum":
        if self.is_rational():
            return CycNum(1, [self.num[0] if self.num else 0], self.den)
        n = self.N
        target = [Fraction(c, self.den) for c in self.num]
        for m in _divisors(n):
            if m == n:
                break
            if m % 4 == 2 or m == 1:
                continue
            sol = _solve_in_subfield(target, m, n)
            if sol is not None:
                lcm_den = 1
                for s in sol:
                    lcm_den = lcm_den * s.denominator // math.gcd(lcm_den, s.denominator)
                return CycNum(m, [int(s * lcm_den) for s in sol], lcm_den)
        return self

    @property
    def conductor(self) -> int:
        return self.canonical().N

    def __hash__(self):
        if self._hash is None:
            c = self.canonical()
            self._hash = hash((c.N, c.num, c.den))
        return self._hash

    # misc -------------------------------------------------------------------

    def __complex__(self):
        z = complex(math.cos(2 * math.pi / self.N), math.sin(2 * math.pi / self.N))
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def to_json(self) -> dict | str:
        """Rationals become strings like "-1/2"; others {"N": n, "coeffs": [...]} over zeta_n."""
        if self.is_rational():
            return str(self.to_fraction())
        c = self.canonical()
        return {"N": c.N, "coeffs": [str(Fraction(x, c.den)) for x in c.num]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "CycNum":
        if isinstance(obj, (str, int)):
            return cls.rational(Fraction(str(obj)))
        fr = [Fraction(s) for s in obj["coeffs"]]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return cls(int(obj["N"]), [int(f * den) for f in fr], den)

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.to_fraction()})"
        c = self.canonical()
        terms = [f"{Fraction(x, c.den)}*z{c.N}^{k}" for k, x in enumerate(c.num) if x]
        return "CycNum(" + " + ".join(terms) + ")"

    def root_of_unity_order(self) -> int | None:
        """Multiplicative order if this is a root of unity, else None."""
        if self.is_zero():
            return None
        bound = self.N if self.N % 2 == 0 else 2 * self.N
        for d in _divisors(bound):
            if self**d == 1:
                return d
        return None


def _solve_in_subfield(target: list[Fraction], m: int, n: int) -> list[Fraction] | None:
    """Coordinates of target (in Q(zeta_n)) over the power basis of Q(zeta_m)."""
    dm = totient(m)
    step = n // m
    table = _power_table(n, step * dm + 1)
    cols = [table[k * step] for k in range(dm)]
    rows = len(target)
    aug = [[Fraction(cols[j][i]) for j in range(dm)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(dm):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][dm] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * dm
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][dm]
    return sol


def cyc(x) -> CycNum:
    return CycNum.coerce(x)


ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


def sqrt5() -> CycNum:
    z = CycNum.zeta(5)
    return 2 * (z + z**4) + 1


# ---------------------------------------------------------------------------
# projective points and matrices


class InfinityMarker:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinity"


INFINITY = InfinityMarker()


class ProjPoint(tuple):
    """Point of P^1 or P^2, scaled so the first nonzero coordinate is 1."""

    def __new__(cls, coords: Iterable):
        cs = [cyc(c) for c in coords]
        lead = next((c for c in cs if not c.is_zero()), None)
        if lead is None:
            raise DegenerateInput("projective point with all coordinates zero")
        if lead != 1:
            inv = lead.inverse()
            cs = [c * inv for c in cs]
        return super().__new__(cls, cs)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def to_json(self) -> list:
        return [c.to_json() for c in self]

    def __repr__(self):
        def short(c: CycNum):
            return str(c.to_fraction()) if c.is_rational() else repr(c)

        return "[" + ":".join(short(c) for c in self) + "]"


class Mat:
    """Square matrix (size 2 or 3) over cyclotomic numbers."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        self.rows = tuple(tuple(cyc(x) for x in r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *entries) -> "Mat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Mat") -> "Mat":
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(out)

    def scale(self, s) -> "Mat":
        s = cyc(s)
        return Mat([[s * x for x in r] for r in self.rows])

    def apply(self, v: Sequence) -> list[CycNum]:
        return [sum((a * cyc(b) for a, b in zip(r, v)), ZERO) for r in self.rows]

    def act(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.apply(p))

    def det(self) -> CycNum:
        m = self.rows
        if self.n == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if self.n == 3:
            return (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
        raise ValueError("only dimensions 2 and 3 are supported")

    def trace(self) -> CycNum:
        return sum((self.rows[i][i] for i in range(self.n)), ZERO)

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def adjugate(self) -> "Mat":
        m = self.rows
        if self.n == 2:
            return Mat([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
        cof = []
        for i in range(3):
            row = []
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                row.append(minor if (i + j) % 2 == 0 else -minor)
            cof.append(row)
        return Mat(cof).transpose()

    def inverse(self) -> "Mat":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        return self.adjugate().scale(d.inverse())

    def is_scalar(self) -> bool:
        m = self.rows
        return all(
            (m[i][j].is_zero() if i != j else m[i][i] == m[0][0])
            for i in range(self.n)
            for j in range(self.n)
        )

    def proj_normalize(self) -> "Mat":
        lead = next(x for r in self.rows for x in r if not x.is_zero())
        if lead == 1:
            return self
        return self.scale(lead.inverse())

    def proj_equal(self, other: "Mat") -> bool:
        return self.proj_normalize() == other.proj_normalize()

    def proj_key(self) -> tuple:
        return self.proj_normalize().rows

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        out = Mat.identity(self.n)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def proj_order(self, bound: int = 1000) -> int:
        cur = self
        for k in range(1, bound + 1):
            if cur.is_scalar():
                return k
            cur = cur @ self
        raise ArithmeticError("projective order exceeds bound")

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]

    def __repr__(self):
        return f"Mat({[list(r) for r in self.rows]!r})"


# ---------------------------------------------------------------------------
# linear algebra helpers


def nullspace(rows: Sequence[Sequence[CycNum]], ncols: int) -> list[list[CycNum]]:
    """Basis of the right kernel, in reduced echelon normal form."""
    a = [[cyc(x) for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for i, pc in enumerate(piv):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


def rank(vectors: Sequence[Sequence[CycNum]]) -> int:
    if not vectors:
        return 0
    n = len(vectors[0])
    return n - len(nullspace(vectors, n))


def eigenvalues(m: Mat) -> list[CycNum]:
    """Distinct eigenvalues of a finite-order matrix by root-of-unity trial.

    Requires the determinant to be a root of unity, which holds for every
    realization this package builds.  Order of the output is deterministic.
    """
    k = m.proj_order()
    mu = (m**k)[0, 0]
    t = mu.root_of_unity_order()
    if t is None:
        raise EigenError("scalar power is not a root of unity; rescale the matrix")
    order = k * t
    n = m.n
    found = []
    for j in range(order):
        lam = CycNum.zeta(order, j)
        shifted = [[m[i, c] - (lam if i == c else ZERO) for c in range(n)] for i in range(n)]
        if Mat(shifted).det().is_zero():
            found.append(lam)
            if len(found) == n:
                break
    return found


def eigenspaces(m: Mat) -> list[tuple[CycNum, list[list[CycNum]]]]:
    out = []
    for lam in eigenvalues(m):
        shifted = [[m[i, c] - (lam if i == c else ZERO) for c in range(m.n)] for i in range(m.n)]
        out.append((lam, nullspace(shifted, m.n)))
    return out


# ---------------------------------------------------------------------------
# fixed points on P^1, invariant subspaces in dimension 3, cross-ratio


class _All:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "All"


ALL = _All()
FixedSet1D = Union[_All, frozenset]


def eigen_fixed_points(m: Mat) -> FixedSet1D:
    """Fixed points of a Mobius transformation: ALL, or a frozenset of 1-2 points."""
    if m.n != 2:
        raise ValueError("eigen_fixed_points expects a 2x2 matrix")
    if m.det().is_zero():
        raise ZeroDivisionError("singular matrix")
    if m.is_scalar():
        return ALL
    pts = set()
    for _, basis in eigenspaces(m):
        for v in basis:
            pts.add(ProjPoint(v))
    return frozenset(pts)


def _common_eigenvector(gens: Sequence[Mat]) -> list[CycNum] | None:
    n = gens[0].n
    spaces = [[[ONE if i == j else ZERO for i in range(n)] for j in range(n)]]
    for g in gens:
        lams = eigenvalues(g)
        refined = []
        for basis in spaces:
            # vectors B c with (g - lam) B c = 0
            images = [g.apply(b) for b in basis]
            for lam in lams:
                cols = [[im[i] - lam * b[i] for i in range(n)] for im, b in zip(images, basis)]
                rows = [[col[i] for col in cols] for i in range(n)]
                sol = nullspace(rows, len(basis))
                if sol:
                    refined.append(
                        [[sum((c[j] * basis[j][i] for j in range(len(basis))), ZERO) for i in range(n)] for c in sol]
                    )
        spaces = refined
        if not spaces:
            return None
    for basis in spaces:
        if basis:
            return _canonical_vector(basis)
    return None


def _canonical_vector(basis):
    # smallest-index standard direction inside the span if possible
    n = len(basis[0])
    for i in range(n):
        e = [ONE if k == i else ZERO for k in range(n)]
        if rank(list(basis) + [e]) == len(basis):
            return e
    return basis[0]


class Dim1(tuple):
    """Invariant line, stored as the projective point it spans."""

    def __new__(cls, point):
        return super().__new__(cls, (point,))

    @property
    def point(self) -> ProjPoint:
        return self[0]


class Dim2(tuple):
    """Invariant plane, stored as its normal covector (a dual point)."""

    def __new__(cls, covector):
        return super().__new__(cls, (covector,))

    @property
    def covector(self) -> ProjPoint:
        return self[0]


def common_invariant_subspace(gens: Sequence[Mat]):
    """None, Dim1(point) or Dim2(dual point) for a family of invertible 3x3 matrices."""
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens:
        if g.det().is_zero():
            raise ZeroDivisionError("singular generator")
    v = _common_eigenvector(gens)
    if v is not None:
        return Dim1(ProjPoint(v))
    duals = [g.inverse().transpose() for g in gens]
    w = _common_eigenvector(duals)
    if w is not None:
        return Dim2(ProjPoint(w))
    return None


def cross_ratio(p: ProjPoint, q: ProjPoint, r: ProjPoint, s: ProjPoint):
    """Cross-ratio normalized so that ([0:1],[1:1],[1:0],[l:1]) gives l."""
    pts = [p, q, r, s]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise DegenerateInput("cross-ratio needs four distinct points")

    def br(a, b):
        return a[0] * b[1] - a[1] * b[0]

    num = br(s, p) * br(q, r)
    den = br(s, r) * br(q, p)
    if den.is_zero():
        return INFINITY
    return num / den
