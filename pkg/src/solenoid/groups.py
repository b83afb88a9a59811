"""Exact element arithmetic for the four supported group families.

Every element is stored in a unique normal form, so equality of
:class:`GroupElement` objects is equality of payloads.

Families and their standard generators (in order):

* ``FreeAbelian(k)``: ``e1 .. ek``.
* ``Heisenberg()``: ``x = (1,0,0)``, ``y = (0,1,0)``, ``z = (0,0,1)`` with
  ``(a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b')``.
* ``KleinBottle()``: ``a``, ``b`` with ``b a b^-1 = a^-1``; payload ``(m, n)``
  means ``a^m b^n``.
* ``SemidirectZnF(n, table, matrices)``: lattice basis ``e1 .. en`` followed by
  the chosen generators of the finite group F; payload ``(vector, f)`` with
  ``(v1, f1)(v2, f2) = (v1 + M(f1) v2, f1 f2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadGeneratorIndex, FamilyMismatch, InvalidFamily

Word = Sequence[tuple[int, int]]

MAX_FINITE_ORDER = 1024


def _matmul(m1, m2):
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(len(m2))) for j in range(len(m2[0])))
        for i in range(len(m1))
    )


def _matvec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _det(m) -> int:
    # Bareiss fraction-free elimination; exact for integer matrices.
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


class GroupFamily:
    """Base class; concrete families implement payload-level arithmetic."""

    name: str = "group"

    def identity_payload(self):
        raise NotImplementedError

    def mul(self, p, q):
        raise NotImplementedError

    def inv(self, p):
        raise NotImplementedError

    def generator_payloads(self) -> list:
        raise NotImplementedError

    def generator_names(self) -> list[str]:
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        return False

    # element-level conveniences
    def identity(self) -> GroupElement:
        return GroupElement(self, self.identity_payload())

    def generators(self) -> list[GroupElement]:
        return [GroupElement(self, p) for p in self.generator_payloads()]

    def element(self, *payload) -> GroupElement:
        return GroupElement(self, self.normalize(payload[0] if len(payload) == 1 else payload))

    def normalize(self, payload):
        return tuple(payload)


@dataclass(frozen=True)
class FreeAbelian(GroupFamily):
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidFamily("rank must be positive")

    @property
    def name(self):
        return f"FreeAbelian({self.rank})"

    @property
    def is_abelian(self) -> bool:
        return True

    def identity_payload(self):
        return (0,) * self.rank

    def mul(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def inv(self, p):
        return tuple(-a for a in p)

    def generator_payloads(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def generator_names(self):
        return [f"e{i + 1}" for i in range(self.rank)]

    def normalize(self, payload):
        if isinstance(payload, int):
            payload = (payload,)
        payload = tuple(int(a) for a in payload)
        if len(payload) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        return payload


@dataclass(frozen=True)
class Heisenberg(GroupFamily):
    @property
    def name(self):
        return "Heisenberg"

    def identity_payload(self):
        return (0, 0, 0)

    def mul(self, p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1])

    def inv(self, p):
        return (-p[0], -p[1], -p[2] + p[0] * p[1])

    def generator_payloads(self):
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def generator_names(self):
        return ["x", "y", "z"]

    def normalize(self, payload):
        payload = tuple(int(a) for a in payload)
        if len(payload) != 3:
            raise ValueError("Heisenberg elements are triples")
        return payload


@dataclass(frozen=True)
class KleinBottle(GroupFamily):
    @property
    def name(self):
        return "KleinBottle"

    def identity_payload(self):
        return (0, 0)

    def mul(self, p, q):
        # b^n a^m = a^{(-1)^n m} b^n
        sign = -1 if p[1] % 2 else 1
        return (p[0] + sign * q[0], p[1] + q[1])

    def inv(self, p):
        sign = -1 if p[1] % 2 else 1
        return (-sign * p[0], -p[1])

    def generator_payloads(self):
        return [(1, 0), (0, 1)]

    def generator_names(self):
        return ["a", "b"]

    def normalize(self, payload):
        payload = tuple(int(a) for a in payload)
        if len(payload) != 2:
            raise ValueError("Klein bottle elements are pairs (m, n) meaning a^m b^n")
        return payload


@dataclass(frozen=True)
class SemidirectZnF(GroupFamily):
    """Z^n twisted by a finite group F given by a multiplication table.

    ``matrices[i]`` is the integer matrix of table element ``i``; ``fgens``
    picks the F-generators used in the standard generating set (default: every
    non-identity element).
    """

    n: int
    table: tuple
    matrices: tuple
    fgens: tuple = field(default=None)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.matrices)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "matrices", mats)
        order = len(table)
        if self.n < 1:
            raise InvalidFamily("lattice rank must be positive")
        if not 1 <= order <= MAX_FINITE_ORDER:
            raise InvalidFamily(f"finite group order must be in 1..{MAX_FINITE_ORDER}")
        if any(len(row) != order or not all(0 <= x < order for x in row) for row in table):
            raise InvalidFamily("multiplication table is not square over its elements")
        if len(mats) != order:
            raise InvalidFamily("need one matrix per group element")
        for m in mats:
            if len(m) != self.n or any(len(row) != self.n for row in m):
                raise InvalidFamily("matrices must be n x n")
            if abs(_det(m)) != 1:
                raise InvalidFamily("representation matrices must have determinant +-1")
        for i in range(order):
            for j in range(order):
                if _matmul(mats[i], mats[j]) != mats[table[i][j]]:
                    raise InvalidFamily(f"matrices violate the table at ({i}, {j})")
        if len(set(mats)) != order:
            raise InvalidFamily("representation is not faithful")
        e = self._find_identity()
        if e is None:
            raise InvalidFamily("table has no identity")
        object.__setattr__(self, "_e", e)
        object.__setattr__(self, "_inverse", tuple(
            next(j for j in range(order) if table[i][j] == e) for i in range(order)))
        if self.fgens is None:
            object.__setattr__(self, "fgens", tuple(i for i in range(order) if i != e))
        else:
            object.__setattr__(self, "fgens", tuple(int(g) for g in self.fgens))

    def _find_identity(self):
        order = len(self.table)
        for e in range(order):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(order)):
                return e
        return None

    @property
    def name(self):
        return f"SemidirectZnF(n={self.n}, |F|={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def f_identity(self) -> int:
        return self._e

    def f_inverse(self, f: int) -> int:
        return self._inverse[f]

    def matrix(self, f: int):
        return self.matrices[f]

    @property
    def is_abelian(self) -> bool:
        return all(m == tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))
                   for m in self.matrices) and all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.order) for j in range(self.order))

    def identity_payload(self):
        return ((0,) * self.n, self._e)

    def mul(self, p, q):
        v = _matvec(self.matrices[p[1]], q[0])
        return (tuple(a + b for a, b in zip(p[0], v)), self.table[p[1]][q[1]])

    def inv(self, p):
        fi = self._inverse[p[1]]
        v = _matvec(self.matrices[fi], p[0])
        return (tuple(-a for a in v), fi)

    def generator_payloads(self):
        basis = [(tuple(int(i == j) for j in range(self.n)), self._e) for i in range(self.n)]
        return basis + [((0,) * self.n, f) for f in self.fgens]

    def generator_names(self):
        return [f"e{i + 1}" for i in range(self.n)] + [f"f{i + 1}" for i in range(len(self.fgens))]

    def normalize(self, payload):
        vec, f = payload
        vec = tuple(int(a) for a in vec)
        if len(vec) != self.n or not 0 <= int(f) < self.order:
            raise ValueError("bad semidirect payload")
        return (vec, int(f))


@dataclass(frozen=True)
class GroupElement:
    family: GroupFamily
    payload: tuple

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def inverse(self) -> GroupElement:
        return inverse(self)

    def __pow__(self, k: int) -> GroupElement:
        return power(self, k)

    def is_identity(self) -> bool:
        return self.payload == self.family.identity_payload()

    def __repr__(self):
        return f"{type(self.family).__name__}{self.payload}"


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.family != h.family:
        raise FamilyMismatch(f"cannot multiply {g.family.name} by {h.family.name}")
    return GroupElement(g.family, g.family.mul(g.payload, h.payload))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.family, g.family.inv(g.payload))


def power(g: GroupElement, k: int) -> GroupElement:
    fam = g.family
    base = g.payload if k >= 0 else fam.inv(g.payload)
    k = abs(k)
    result = fam.identity_payload()
    # square-and-multiply keeps long exponents cheap
    while k:
        if k & 1:
            result = fam.mul(result, base)
        base = fam.mul(base, base)
        k >>= 1
    return GroupElement(fam, result)


def conjugate(g: GroupElement, h: GroupElement) -> GroupElement:
    """Return ``g h g^-1``."""
    return g * h * g.inverse()


def product(elements: Iterable[GroupElement], family: GroupFamily) -> GroupElement:
    result = family.identity()
    for e in elements:
        result = result * e
    return result


def evaluate_word(family: GroupFamily, word: Word) -> GroupElement:
    """Multiply out ``[(generator_index, exponent), ...]`` left to right."""
    gens = family.generator_payloads()
    result = family.identity()
    for idx, exp in word:
        if not 0 <= idx < len(gens):
            raise BadGeneratorIndex(f"generator {idx} out of range for {family.name}")
        result = result * power(GroupElement(family, gens[idx]), exp)
    return result
