"""Finite-index subgroups with decidable membership.

Each family has one structural pattern type.  Patterns know their index,
an explicit generating set, and a ``coset_key`` that names the left coset
``gH`` canonically, which lets coset enumeration hash instead of comparing
representatives pairwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Hashable

from . import hnf
from .errors import FamilyMismatch, InvalidSubgroup, NotStructural
from .groups import (
    FreeAbelian,
    GroupElement,
    GroupFamily,
    Heisenberg,
    KleinBottle,
    SemidirectZnF,
    _matvec,
)


class Subgroup:
    family: GroupFamily
    structural = True

    def contains(self, g: GroupElement) -> bool:
        raise NotImplementedError

    def generators(self) -> list[GroupElement]:
        raise NotStructural(f"{self.describe()} has no explicit generating set")

    @property
    def index(self) -> int:
        raise NotImplementedError

    def coset_key(self, g: GroupElement) -> Hashable | None:
        """Canonical label of ``g H``; ``None`` means no fast path is available."""
        return None

    def core_candidate(self) -> Subgroup | None:
        """Structural guess for the normal core in the full ambient group, if the family has a formula."""
        return None

    def describe(self) -> str:
        return repr(self)


@dataclass(frozen=True)
class Lattice(Subgroup):
    family: FreeAbelian
    basis: hnf.Basis

    @classmethod
    def from_vectors(cls, family: FreeAbelian, vectors) -> Lattice:
        return cls(family, hnf.hnf(vectors, family.rank))

    @classmethod
    def scalar(cls, family: FreeAbelian, m: int) -> Lattice:
        return cls(family, hnf.scalar(m, family.rank))

    def contains(self, g):
        return hnf.contains(self.basis, g.payload)

    def generators(self):
        return [GroupElement(self.family, row) for row in self.basis]

    @property
    def index(self):
        return hnf.index(self.basis)

    def coset_key(self, g):
        return hnf.reduce(g.payload, self.basis)

    def core_candidate(self):
        return self

    def describe(self):
        if self.family.rank == 1:
            m = self.basis[0][0]
            return "Z" if m == 1 else f"{m}Z"
        return "span" + str([list(c) for c in hnf.columns(self.basis)])


@dataclass(frozen=True)
class HeisenbergPattern(Subgroup):
    """``{(d_a a, d_b b, d_c c)}``; a subgroup exactly when ``d_c | d_a d_b``."""

    da: int
    db: int
    dc: int
    family: Heisenberg = field(default=Heisenberg(), compare=False)

    def __post_init__(self):
        if min(self.da, self.db, self.dc) < 1:
            raise InvalidSubgroup("pattern divisors must be positive")
        if (self.da * self.db) % self.dc:
            raise InvalidSubgroup(
                f"pattern ({self.da},{self.db},{self.dc}) is not closed: "
                f"cross term {self.da * self.db} is not a multiple of {self.dc}")

    def contains(self, g):
        a, b, c = g.payload
        return a % self.da == 0 and b % self.db == 0 and c % self.dc == 0

    def generators(self):
        f = self.family
        return [GroupElement(f, (self.da, 0, 0)), GroupElement(f, (0, self.db, 0)),
                GroupElement(f, (0, 0, self.dc))]

    @property
    def index(self):
        return self.da * self.db * self.dc

    def coset_key(self, g):
        x, y, z = g.payload
        x0 = x % self.da
        y0 = y % self.db
        # right-multiply by (0, y0 - y, 0), which adds x0 * (y0 - y) to the centre
        z1 = z + x0 * (y0 - y)
        return (x0, y0, z1 % self.dc)

    def core_candidate(self):
        # conjugation sends (a,b,c) to (a, b, c + xb - ya)
        return HeisenbergPattern(lcm(self.da, self.dc), lcm(self.db, self.dc), self.dc)

    def describe(self):
        def term(d, s):
            return s if d == 1 else f"{d}{s}"
        return f"({term(self.da, 'a')},{term(self.db, 'b')},{term(self.dc, 'c')})"


@dataclass(frozen=True)
class KleinPattern(Subgroup):
    """``{a^m b^n : d | m}``, with ``n`` restricted to even values when ``even``."""

    d: int
    even: bool = False
    family: KleinBottle = field(default=KleinBottle(), compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise InvalidSubgroup("d must be positive")

    def contains(self, g):
        m, n = g.payload
        return m % self.d == 0 and (not self.even or n % 2 == 0)

    def generators(self):
        f = self.family
        return [GroupElement(f, (self.d, 0)), GroupElement(f, (0, 2 if self.even else 1))]

    @property
    def index(self):
        return self.d * (2 if self.even else 1)

    def coset_key(self, g):
        m, n = g.payload
        return (m % self.d, n % 2 if self.even else 0)

    def core_candidate(self):
        # a^k (a^m b^n) a^-k = a^(m+2k) b^n for odd n
        if self.even or self.d <= 2:
            return self
        return KleinPattern(self.d, True)

    def describe(self):
        apow = "a" if self.d == 1 else f"a^{self.d}"
        return f"<{apow}, {'b^2' if self.even else 'b'}>"


@dataclass(frozen=True)
class SemidirectPattern(Subgroup):
    """``{(v, f) : v in L, f in F'}``; F' must be a subgroup of F preserving L."""

    family: SemidirectZnF
    basis: hnf.Basis
    fsub: frozenset

    def __post_init__(self):
        fam = self.family
        fsub = frozenset(int(f) for f in self.fsub)
        object.__setattr__(self, "fsub", fsub)
        if fam.f_identity not in fsub:
            raise InvalidSubgroup("F' must contain the identity")
        for f in fsub:
            if fam.f_inverse(f) not in fsub or any(fam.table[f][h] not in fsub for h in fsub):
                raise InvalidSubgroup("F' is not a subgroup of F")
            for row in self.basis:
                if not hnf.contains(self.basis, _matvec(fam.matrix(f), row)):
                    raise InvalidSubgroup(f"element {f} of F' does not preserve the lattice")
        object.__setattr__(self, "_images", {})

    def contains(self, g):
        v, f = g.payload
        return f in self.fsub and hnf.contains(self.basis, v)

    def generators(self):
        fam = self.family
        zero = (0,) * fam.n
        gens = [GroupElement(fam, (row, fam.f_identity)) for row in self.basis]
        gens += [GroupElement(fam, (zero, f)) for f in sorted(self.fsub) if f != fam.f_identity]
        return gens

    @property
    def index(self):
        return hnf.index(self.basis) * self.family.order // len(self.fsub)

    def _image(self, f):
        if f not in self._images:
            self._images[f] = hnf.image(self.family.matrix(f), self.basis)
        return self._images[f]

    def coset_key(self, g):
        v, f = g.payload
        table = self.family.table
        return (min(table[f][h] for h in self.fsub), hnf.reduce(v, self._image(f)))

    def core_candidate(self):
        fam = self.family
        invariant = all(hnf.contains(self.basis, _matvec(fam.matrix(f), row))
                        for f in range(fam.order) for row in self.basis)
        if not invariant:
            return None
        n = fam.n
        ident = [tuple(int(i == j) for j in range(n)) for i in range(n)]

        def good(h):
            if h not in self.fsub:
                return False
            m = fam.matrix(h)
            return all(hnf.contains(self.basis, tuple(e[i] - m[i][k] for i in range(n)))
                       for k, e in enumerate(ident))

        keep = frozenset(
            g for g in range(fam.order)
            if all(good(fam.table[fam.table[f][g]][fam.f_inverse(f)]) for f in range(fam.order)))
        return SemidirectPattern(fam, self.basis, keep)

    def describe(self):
        return f"(L={[list(c) for c in hnf.columns(self.basis)]}, F'={sorted(self.fsub)})"


@dataclass(frozen=True)
class Conjugate(Subgroup):
    """``g H g^-1``."""

    base: Subgroup
    g: GroupElement

    @property
    def family(self):
        return self.base.family

    @property
    def structural(self):
        return self.base.structural

    def contains(self, x):
        g = self.g
        return self.base.contains(g.inverse() * x * g)

    def generators(self):
        g, gi = self.g, self.g.inverse()
        return [g * h * gi for h in self.base.generators()]

    @property
    def index(self):
        return self.base.index

    def coset_key(self, x):
        return self.base.coset_key(x * self.g)

    def describe(self):
        return f"{self.g.payload}·{self.base.describe()}·{self.g.payload}^-1"


class ActionKernel(Subgroup):
    """Kernel of the left action of a table's base group on its cosets."""

    structural = False

    def __init__(self, table, closed_form: Subgroup | None = None, label: str = ""):
        self.table = table
        self.closed_form = closed_form
        self.label = label
        self._index = None

    @property
    def family(self):
        return self.table.subgroup.family

    def contains(self, g):
        t = self.table
        if not t.base.contains(g):
            return False
        return all(t.act_element(g, i) == i for i in range(t.index))

    def permutation(self, g) -> tuple[int, ...]:
        return tuple(self.table.act_element(g, i) for i in range(self.table.index))

    def coset_key(self, g):
        return self.permutation(g)

    @property
    def index(self):
        if self._index is None:
            self._index = self.table.base.index * self.table.image_order()
        return self._index

    def describe(self):
        if self.closed_form is not None:
            return self.closed_form.describe()
        return f"action-kernel of {self.label or 'table'}"

    def __repr__(self):
        return f"ActionKernel({self.describe()})"


def full_group(family: GroupFamily) -> Subgroup:
    if isinstance(family, FreeAbelian):
        return Lattice.scalar(family, 1)
    if isinstance(family, Heisenberg):
        return HeisenbergPattern(1, 1, 1)
    if isinstance(family, KleinBottle):
        return KleinPattern(1)
    if isinstance(family, SemidirectZnF):
        return SemidirectPattern(family, hnf.scalar(1, family.n), frozenset(range(family.order)))
    raise TypeError(f"unsupported family {family!r}")


def is_full(H: Subgroup) -> bool:
    return H.index == 1


def contains(H: Subgroup, g: GroupElement) -> bool:
    if g.family != H.family:
        raise FamilyMismatch("element and subgroup live in different groups")
    return H.contains(g)


def subgroup_generators(H: Subgroup) -> list[GroupElement]:
    if isinstance(H, Lattice) and H.index == 1:
        return H.family.generators()
    return H.generators()


def is_subgroup_of(H: Subgroup, K: Subgroup) -> bool:
    if H.family != K.family:
        raise FamilyMismatch("subgroups live in different groups")
    if H is K:
        return True
    return all(K.contains(g) for g in H.generators())


def same_subgroup(H: Subgroup, K: Subgroup) -> bool:
    return is_subgroup_of(H, K) and is_subgroup_of(K, H)


def lattice_gcd(H: Lattice) -> int:
    """For rank 1 the lattice is mZ; returns m."""
    g = 0
    for row in H.basis:
        for x in row:
            g = gcd(g, x)
    return g
