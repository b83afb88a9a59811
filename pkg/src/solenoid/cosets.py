"""Finite levels of the fiber: coset tables, the left action, bonding maps.

Convention: a word ``[(s1, e1), ..., (sk, ek)]`` is the element
``s1^e1 ... sk^ek``; acting on a coset ``r G_l`` it sends it to
``s1^e1 ... sk^ek r G_l``, so the rightmost letter acts first.
"""

from __future__ import annotations

import os
from collections import deque
from math import lcm
from dataclasses import dataclass, field

from .errors import BadIndex, EnumerationBudgetExceeded, OrbitBudgetExceeded
from .groups import GroupElement, Word
from .subgroups import Subgroup, full_group, is_full

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    env = os.environ.get("SOLENOID_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class CosetTable:
    """Left cosets ``base / subgroup`` with the permutation action of the base generators.

    ``representatives[0]`` is the identity; representatives are the BFS-first
    elements under the fixed generator order ``s1, s1^-1, s2, s2^-1, ...``.
    """

    def __init__(self, subgroup, base, generators, representatives, perms, keys, label=""):
        self.subgroup = subgroup
        self.base = base
        self.generators = generators
        self.representatives = representatives
        self.perms = perms
        self.inverse_perms = [_invert(p) for p in perms]
        self._keys = keys
        self.label = label
        self._orders = {}

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset_of(self, g: GroupElement) -> int:
        """Index of the coset containing ``g`` (``g`` must lie in the base group)."""
        H = self.subgroup
        if self._keys is not None:
            try:
                return self._keys[H.coset_key(g)]
            except KeyError:
                raise BadIndex(f"{g!r} is not in the base group of this table") from None
        gi = g.inverse()
        for j, r in enumerate(self.representatives):
            if H.contains(gi * r):
                return j
        raise BadIndex(f"{g!r} is not in the base group of this table")

    def act_element(self, g: GroupElement, i: int) -> int:
        self._check(i)
        return self.coset_of(g * self.representatives[i])

    def act(self, word: Word, i: int) -> int:
        self._check(i)
        for s, e in reversed(list(word)):
            if not 0 <= s < len(self.perms):
                raise BadIndex(f"generator {s} out of range")
            p = self.perms[s] if e >= 0 else self.inverse_perms[s]
            for _ in range(abs(e) % self.order_of_generator(s)):
                i = p[i]
        return i

    def order_of_generator(self, s: int) -> int:
        # exponents only matter modulo the order of the permutation
        if s in self._orders:
            return self._orders[s]
        p = self.perms[s]
        seen, order = [False] * len(p), 1
        for start in range(len(p)):
            if seen[start]:
                continue
            n, j = 0, start
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            order = lcm(order, n)
        self._orders[s] = order
        return order

    def image_order(self, budget: int | None = None) -> int:
        """Order of the permutation group induced by the base generators."""
        budget = budget or default_budget()
        ident = tuple(range(self.index))
        seen = {ident}
        queue = deque([ident])
        while queue:
            q = queue.popleft()
            for p in self.perms:
                r = tuple(map(q.__getitem__, p))
                if r not in seen:
                    seen.add(r)
                    if len(seen) > budget:
                        raise EnumerationBudgetExceeded(
                            f"permutation image exceeds budget {budget}")
                    queue.append(r)
        return len(seen)

    def is_transitive(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for p in self.perms + self.inverse_perms:
                if p[i] not in seen:
                    seen.add(p[i])
                    queue.append(p[i])
        return len(seen) == self.index

    def _check(self, i):
        if not 0 <= i < self.index:
            raise BadIndex(f"coset index {i} out of range 0..{self.index - 1}")

    def __repr__(self):
        return f"CosetTable({self.subgroup.describe()}, index={self.index})"


def _invert(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def base_generators(base: Subgroup) -> list[GroupElement]:
    if is_full(base):
        return base.family.generators()
    return base.generators()


def enumerate_cosets(H: Subgroup, budget: int | None = None, base: Subgroup | None = None,
                     use_keys: bool = True, label: str = "") -> CosetTable:
    """Breadth-first enumeration of ``base / H`` (``base`` defaults to the whole group).

    Coset equality uses ``H.coset_key`` when available, otherwise the
    membership test ``rep_j^-1 g in H``.
    """
    budget = budget or default_budget()
    fam = H.family
    base = base if base is not None else full_group(fam)
    if H.structural and base.structural and H.index // max(base.index, 1) > budget:
        raise EnumerationBudgetExceeded(f"index {H.index // base.index} exceeds budget {budget}")
    gens = base_generators(base)
    moves = []
    for s in gens:
        moves += [s, s.inverse()]
    e = fam.identity()
    reps = [e]
    keyed = use_keys and H.coset_key(e) is not None
    keys = {H.coset_key(e): 0} if keyed else None
    actions = [[] for _ in moves]

    def find(g):
        if keyed:
            return keys.get(H.coset_key(g))
        gi = g.inverse()
        for j, r in enumerate(reps):
            if H.contains(gi * r):
                return j
        return None

    i = 0
    while i < len(reps):
        r = reps[i]
        for m, s in enumerate(moves):
            g = s * r
            j = find(g)
            if j is None:
                j = len(reps)
                if j >= budget:
                    raise EnumerationBudgetExceeded(f"more than {budget} cosets")
                reps.append(g)
                if keyed:
                    keys[H.coset_key(g)] = j
            actions[m].append(j)
        i += 1
    perms = [tuple(actions[2 * k]) for k in range(len(gens))]
    return CosetTable(H, base, gens, reps, perms, keys, label)


def act(T: CosetTable, w: Word, i: int) -> int:
    return T.act(w, i)


def bonding_map(C, level: int, budget: int | None = None) -> tuple[int, ...]:
    """Map level-``level`` cosets onto level-``level-1`` cosets: ``g G_l -> g G_{l-1}``."""
    if level < 1:
        raise BadIndex("bonding maps start at level 1")
    upper = C.table(level, budget)
    lower = C.table(level - 1, budget)
    return tuple(lower.coset_of(r) for r in upper.representatives)


@dataclass(frozen=True)
class TruncatedFiberPoint:
    depth: int
    coords: tuple[int, ...]
    chain: object = field(default=None, compare=False, hash=False, repr=False)

    def is_compatible(self) -> bool:
        C = self.chain
        if self.coords[0] != 0 or len(self.coords) != self.depth + 1:
            return False
        return all(bonding_map(C, l)[self.coords[l]] == self.coords[l - 1]
                   for l in range(1, self.depth + 1))


def basepoint(C, depth: int) -> TruncatedFiberPoint:
    return TruncatedFiberPoint(depth, (0,) * (depth + 1), C)


def point_from_element(C, depth: int, g: GroupElement) -> TruncatedFiberPoint:
    """The truncated fiber point ``(g G_0, g G_1, ..., g G_depth)``."""
    return TruncatedFiberPoint(depth, tuple(C.table(l).coset_of(g) for l in range(depth + 1)), C)


def act_on_point(C, w: Word, x: TruncatedFiberPoint) -> TruncatedFiberPoint:
    coords = tuple(C.table(l).act(w, c) for l, c in enumerate(x.coords))
    return TruncatedFiberPoint(x.depth, coords, C)


def fiber_orbit(C, depth: int, words: list[Word], start: TruncatedFiberPoint | None = None,
                max_orbit: int = 10**5) -> set[TruncatedFiberPoint]:
    """Close ``start`` under the given words acting coordinatewise."""
    start = start if start is not None else basepoint(C, depth)
    if start.depth != depth:
        raise BadIndex("start point has the wrong depth")
    orbit = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for w in words:
            y = act_on_point(C, w, x)
            if y not in orbit:
                orbit.add(y)
                if len(orbit) > max_orbit:
                    raise OrbitBudgetExceeded(f"orbit exceeds {max_orbit} points")
                queue.append(y)
    return orbit


def relation_acts_trivially(C, level: int, w: Word, budget: int | None = None) -> bool:
    T = C.table(level, budget)
    return all(T.act(w, i) == i for i in range(T.index))
