"""Descending group chains: verification, truncation, kernels, normal cores."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

from .cosets import CosetTable, enumerate_cosets
from .errors import BadIndex, NotDescending
from .groups import GroupElement, GroupFamily
from .subgroups import ActionKernel, Subgroup, is_full, is_subgroup_of


class GroupChain:
    """``G_0 ⊃ G_1 ⊃ ...`` given by a level function, evaluated lazily and memoized.

    All levels are described in coordinates of the ambient family, including
    for truncated chains whose level 0 is a proper subgroup.
    """

    def __init__(self, family: GroupFamily, level_fn: Callable[[int], Subgroup],
                 metadata: dict | None = None, name: str = "", max_depth: int | None = None):
        self.family = family
        self._level_fn = level_fn
        self.metadata = dict(metadata or {})
        self.name = name
        self.max_depth = max_depth
        self.verified_depth = 0
        self._levels: dict[int, Subgroup] = {}
        self._tables: dict[int, CosetTable] = {}
        self._cores: dict[int, ActionKernel] = {}
        self._lock = threading.RLock()

    def level(self, l: int) -> Subgroup:
        if l < 0 or (self.max_depth is not None and l > self.max_depth):
            raise BadIndex(f"level {l} is outside this chain")
        with self._lock:
            if l not in self._levels:
                H = self._level_fn(l)
                if H.family != self.family:
                    raise ValueError("level lives in a different family")
                self._levels[l] = H
            return self._levels[l]

    def index(self, l: int) -> int:
        return self.level(l).index // self.level(0).index

    def table(self, l: int, budget: int | None = None) -> CosetTable:
        with self._lock:
            if l not in self._tables:
                self._tables[l] = enumerate_cosets(
                    self.level(l), budget, base=self.level(0), label=f"level {l}")
            return self._tables[l]

    @property
    def ambient_is_full(self) -> bool:
        return is_full(self.level(0))

    def __repr__(self):
        return f"GroupChain({self.name or self.family.name})"


@dataclass
class ChainReport:
    depth: int
    indices: list[int]
    degenerate: list[int] = field(default_factory=list)


def verify_chain(C: GroupChain, depth: int) -> ChainReport:
    """Check ``G_{l+1} ⊆ G_l`` for ``l < depth`` and record the indices ``[G_0 : G_l]``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    indices = [C.index(0)]
    degenerate = []
    for l in range(depth):
        if not is_subgroup_of(C.level(l + 1), C.level(l)):
            raise NotDescending(l)
        indices.append(C.index(l + 1))
        if indices[-1] == indices[-2]:
            degenerate.append(l + 1)
    C.verified_depth = max(C.verified_depth, depth)
    return ChainReport(depth, indices, degenerate)


def truncate_chain(C: GroupChain, k: int) -> GroupChain:
    """The chain ``l -> G_{l+k}``; closed-form kernel metadata carries over."""
    if k < 0:
        raise ValueError("truncation offset must be non-negative")
    if k == 0:
        return C
    meta = {key: C.metadata[key] for key in ("kernel_generators",) if key in C.metadata}
    max_depth = None if C.max_depth is None else C.max_depth - k
    T = GroupChain(C.family, lambda l: C.level(l + k), meta,
                   name=f"{C.name}^({k})" if C.name else "", max_depth=max_depth)
    T.verified_depth = max(0, C.verified_depth - k)
    T.truncation = (C, k)
    return T


@dataclass
class KernelReport:
    """Candidates lying in every level up to ``depth``; evidence, not proof, of kernel membership."""

    depth: int
    surviving_generators: list[GroupElement]
    closed_form: list[GroupElement] | None = None

    @property
    def label(self) -> str:
        return f"up to depth {self.depth}"


def kernel_report(C: GroupChain, depth: int, candidates: list[GroupElement]) -> KernelReport:
    survivors = [g for g in candidates
                 if all(C.level(l).contains(g) for l in range(depth + 1))]
    return KernelReport(depth, survivors, C.metadata.get("kernel_generators"))


# closed-form confirmation stores one permutation per core coset
RECOGNITION_LIMIT = 2 * 10**7


def normal_core(C: GroupChain, l: int, budget: int | None = None) -> ActionKernel:
    """Kernel of the action of ``G_0`` on ``G_0 / G_l``.

    When level 0 is the whole group and the family's closed-form guess is
    confirmed (contained in the kernel, with equal index), it is attached as
    ``closed_form``.
    """
    with C._lock:
        if l in C._cores:
            return C._cores[l]
    T = C.table(l, budget)
    core = ActionKernel(T, label=f"level {l}")
    if C.ambient_is_full:
        candidate = C.level(l).core_candidate()
        if (candidate is not None and candidate.index * T.index <= RECOGNITION_LIMIT
                and _confirm(candidate, core, budget)):
            core.closed_form = candidate
    with C._lock:
        C._cores[l] = core
    return core


def _confirm(candidate: Subgroup, core: ActionKernel, budget) -> bool:
    if not all(core.contains(g) for g in candidate.generators()):
        return False
    core._index = core.table.base.index * core.table.image_order(budget)
    return candidate.index == core.index
