"""Bounded-depth semi-deciders for equivalence of group chains.

Every check returns a three-valued :class:`Verdict`.  ``Fails`` is only
emitted with an invariant-based certificate (different base groups, or
different supernatural degrees); running out of depth gives
``UnknownAtDepth``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .chains import GroupChain, normal_core, truncate_chain
from .errors import (
    DepthExceedsVerified,
    FamilyMismatch,
    SearchBudgetExceeded,
    WitnessInvalid,
)
from .groups import GroupElement
from .steinitz import Equivalence, chain_steinitz, equal, tail_equivalent
from .subgroups import Conjugate, is_subgroup_of, same_subgroup


class Status(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "UnknownAtDepth"


@dataclass
class Verdict:
    status: Status
    witness: object = None
    certificate: str = ""
    depth: int | None = None

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __str__(self):
        if self.unknown:
            return f"UnknownAtDepth({self.depth})"
        return self.status.value


@dataclass(frozen=True)
class InterleavingWitness:
    """Pairs ``(l_k, j_k)`` with ``G_{l_k} ⊇ H_{j_k} ⊇ G_{l_{k+1}}``."""

    pairs: tuple[tuple[int, int], ...]
    depth: int
    source: GroupChain = field(compare=False, repr=False, default=None)
    target: GroupChain = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class ConjugacyWitness:
    elements: tuple[GroupElement, ...]
    interleaving: InterleavingWitness
    source: GroupChain = field(compare=False, repr=False, default=None)
    target: GroupChain = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class NormalityCertificate:
    """Pairs ``(l, m(l))`` with ``G_{m(l)}`` inside the normal core of ``G_l``."""

    pairs: tuple[tuple[int, int], ...]
    depth: int


@dataclass(frozen=True)
class ReturnWitness:
    offsets: tuple[int, int]
    inner: object


def _require(A: GroupChain, B: GroupChain, depth: int):
    if A.family != B.family:
        raise FamilyMismatch("chains live in different groups")
    for C in (A, B):
        if C.verified_depth < depth:
            raise DepthExceedsVerified(
                f"{C!r} is verified to depth {C.verified_depth}, not {depth}")


def _degree_certificate(A, B, depth, tail: bool) -> str | None:
    sa, sb = chain_steinitz(A), chain_steinitz(B)
    v = tail_equivalent(sa, sb, depth) if tail else equal(sa, sb, depth)
    if v.value is Equivalence.NOT_EQUIVALENT:
        kind = "tail-inequivalent" if tail else "different"
        return f"Steinitz degrees are {kind}: {v.certificate}"
    return None


def _interleave(A: GroupChain, B: GroupChain, D: int):
    """Least-containment alternating greedy; returns (pairs, exhausted, note)."""
    memo: dict = {}

    def inside(kind, x, y):
        key = (kind, x, y)
        if key not in memo:
            if kind == "A<B":
                memo[key] = is_subgroup_of(A.level(x), B.level(y))
            else:
                memo[key] = is_subgroup_of(B.level(x), A.level(y))
        return memo[key]

    l, j = 0, 0
    pairs = [(0, 0)]
    while True:
        nl = next((x for x in range(l + 1, D + 1) if inside("A<B", x, j)), None)
        if nl is None:
            note = "" if l == D else f"no level G_l with {l} < l <= {D} lies in H_{j}"
            return pairs, l == D, note, inside
        nj = next((y for y in range(j + 1, D + 1) if inside("B<A", y, nl)), None)
        if nj is None:
            note = "" if j == D else f"no level H_j with {j} < j <= {D} lies in G_{nl}"
            return pairs, j == D, note, inside
        pairs.append((nl, nj))
        l, j = nl, nj


def _tighten(pairs, D, inside):
    # move each l_k as deep as H_{j_k} allows; this keeps every containment
    out = []
    for l, j in pairs:
        deepest = max(x for x in range(l, D + 1) if inside("B<A", j, x))
        if out and out[-1][0] == deepest:
            continue
        out.append((deepest, j))
    return tuple(out)


def check_equivalent(A: GroupChain, B: GroupChain, depth: int) -> Verdict:
    """Interleaving of the two chains within ``depth`` levels of each."""
    _require(A, B, depth)
    if not same_subgroup(A.level(0), B.level(0)):
        return Verdict(Status.FAILS, certificate="base groups differ: G_0 ≠ H_0", depth=depth)
    pairs, exhausted, note, inside = _interleave(A, B, depth)
    if exhausted:
        w = InterleavingWitness(_tighten(pairs, depth, inside), depth, A, B)
        return Verdict(Status.HOLDS, w, "interleaving found", depth)
    cert = _degree_certificate(A, B, depth, tail=False)
    if cert:
        return Verdict(Status.FAILS, certificate=cert, depth=depth)
    return Verdict(Status.UNKNOWN, certificate=f"greedy interleaving stopped: {note}; "
                   "no interleaving exists within this depth", depth=depth)


def verify_interleaving(A: GroupChain, B: GroupChain, w: InterleavingWitness) -> bool:
    """Re-check a witness from scratch."""
    p = w.pairs
    if not p or not same_subgroup(A.level(0), B.level(0)):
        return False
    for k, (l, j) in enumerate(p):
        if k and not (l > p[k - 1][0] and j > p[k - 1][1]):
            return False
        if not all(A.level(l).contains(h) for h in B.level(j).generators()):
            return False
        if k + 1 < len(p):
            nxt = A.level(p[k + 1][0])
            if not all(B.level(j).contains(g) for g in nxt.generators()):
                return False
    return True


def conjugated_chain(A: GroupChain, elements) -> GroupChain:
    """``l -> g_l G_l g_l^-1`` over the given finite range."""
    elements = tuple(elements)
    C = GroupChain(A.family, lambda l: Conjugate(A.level(l), elements[l]),
                   name=f"{A.name}^g", max_depth=len(elements) - 1)
    C.verified_depth = min(A.verified_depth, len(elements) - 1)
    return C


def verify_conjugacy(A: GroupChain, B: GroupChain, w: ConjugacyWitness) -> bool:
    g = w.elements
    for l in range(len(g) - 1):
        if not A.level(l).contains(g[l].inverse() * g[l + 1]):
            return False
    return verify_interleaving(conjugated_chain(A, g), B, w.interleaving)


def check_conjugate_equivalent(A: GroupChain, B: GroupChain, depth: int,
                               rep_budget: int = 10**5) -> Verdict:
    """Search compatible conjugating sequences among coset representatives.

    A compatible sequence is a point of the truncated fiber, so the search is
    a depth-first walk down the tree of bonding-map preimages, identity
    coset first.
    """
    _require(A, B, depth)
    if A.family.is_abelian:
        v = check_equivalent(A, B, depth)
        if v.holds:
            elems = tuple(A.family.identity() for _ in range(depth + 1))
            v = Verdict(Status.HOLDS, ConjugacyWitness(elems, v.witness, A, B),
                        "abelian: conjugation is trivial", depth)
        return v
    if not same_subgroup(A.level(0), B.level(0)):
        return Verdict(Status.FAILS, certificate="base groups differ: G_0 ≠ H_0", depth=depth)
    cert = _degree_certificate(A, B, depth, tail=False)
    if cert:
        return Verdict(Status.FAILS, certificate=cert, depth=depth)

    tables = [A.table(l) for l in range(depth + 1)]
    children = [None]
    for l in range(1, depth + 1):
        lower = tables[l - 1]
        kids: dict[int, list[int]] = {}
        for i, r in enumerate(tables[l].representatives):
            kids.setdefault(lower.coset_of(r), []).append(i)
        children.append(kids)

    B_levels = [B.level(j) for j in range(depth + 1)]

    def viable(H):
        return any(is_subgroup_of(Bj, H) for Bj in B_levels)

    visited = 0
    path = [0]

    def dfs(l):
        nonlocal visited
        visited += 1
        if visited > rep_budget:
            raise SearchBudgetExceeded(f"explored more than {rep_budget} partial sequences")
        if l == depth:
            elems = [tables[k].representatives[c] for k, c in enumerate(path)]
            if depth >= 1:
                elems[0] = elems[1]
            conj = conjugated_chain(A, elems)
            v = check_equivalent(conj, B, depth)
            if v.holds:
                return ConjugacyWitness(tuple(elems), v.witness, A, B)
            return None
        for c in children[l + 1].get(path[-1], []):
            g = tables[l + 1].representatives[c]
            if not viable(Conjugate(A.level(l + 1), g)):
                continue
            path.append(c)
            found = dfs(l + 1)
            if found:
                return found
            path.pop()
        return None

    w = dfs(0)
    if w is not None:
        return Verdict(Status.HOLDS, w, "compatible conjugating sequence found", depth)
    return Verdict(Status.UNKNOWN, certificate=f"no conjugating sequence of coset representatives "
                   f"works within depth {depth}", depth=depth)


def check_return_equivalent(A: GroupChain, B: GroupChain, depth: int, conjugate: bool = False,
                            rep_budget: int = 10**5) -> Verdict:
    """Try truncation offsets ``(k, m)`` in order of ``k + m``; first success wins."""
    _require(A, B, depth)
    cert = _degree_certificate(A, B, depth, tail=True)
    if cert:
        return Verdict(Status.FAILS, certificate=cert, depth=depth)
    for s in range(2 * depth + 1):
        for k in range(s + 1):
            m = s - k
            d = depth - max(k, m)
            if d < 1:
                continue
            Ak, Bm = truncate_chain(A, k), truncate_chain(B, m)
            if not same_subgroup(Ak.level(0), Bm.level(0)):
                continue
            if conjugate:
                v = check_conjugate_equivalent(Ak, Bm, d, rep_budget)
            else:
                v = check_equivalent(Ak, Bm, d)
            if v.holds:
                return Verdict(Status.HOLDS, ReturnWitness((k, m), v.witness),
                               f"truncations at offsets (k, m) = ({k}, {m}) are equivalent", depth)
    return Verdict(Status.UNKNOWN, certificate=f"no truncation offsets up to {depth} give an "
                   "equivalence within the remaining depth", depth=depth)


def normality_certificate(A: GroupChain, depth: int, budget: int | None = None) -> Verdict:
    """For each ``l <= depth // 2`` find the least ``m <= depth`` with ``G_m`` inside the core of ``G_l``."""
    pairs = []
    for l in range(depth // 2 + 1):
        core = normal_core(A, l, budget)
        m = next((m for m in range(depth + 1) if is_subgroup_of(A.level(m), core)), None)
        if m is None:
            return Verdict(Status.UNKNOWN, NormalityCertificate(tuple(pairs), depth),
                           f"no level G_m with m <= {depth} lies in the normal core of G_{l}",
                           depth)
        pairs.append((l, m))
    return Verdict(Status.HOLDS, NormalityCertificate(tuple(pairs), depth),
                   "every tested level has a deeper level inside its normal core", depth)


@dataclass(frozen=True)
class LevelMap:
    """``g X_src -> g X_dst`` between finite levels of the two chains."""

    source: str
    source_level: int
    target: str
    target_level: int
    mapping: tuple[int, ...]


def equivariant_maps_from_witness(w: InterleavingWitness, depth: int | None = None) -> list[LevelMap]:
    """Coset-inclusion maps ``X(B)_{j_k} -> X(A)_{l_k}`` and ``X(A)_{l_{k+1}} -> X(B)_{j_k}``.

    Every map is checked on every coset: basepoint to basepoint, surjective,
    equivariant for the generators of ``G_0``, and composing consecutive maps
    gives the chain's own bonding map.
    """
    A, B = w.source, w.target
    if not verify_interleaving(A, B, w):
        raise WitnessInvalid("witness containments do not hold")
    depth = w.depth if depth is None else depth
    pairs = [(l, j) for l, j in w.pairs if l <= depth and j <= depth]
    maps: list[LevelMap] = []
    for k, (l, j) in enumerate(pairs):
        maps.append(_inclusion_map(B, "B", j, A, "A", l))
        if k + 1 < len(pairs):
            maps.append(_inclusion_map(A, "A", pairs[k + 1][0], B, "B", j))
    gens = A.table(0).generators
    chains = {"A": A, "B": B}
    for f in maps:
        src, dst = chains[f.source].table(f.source_level), chains[f.target].table(f.target_level)
        if f.mapping[0] != 0:
            raise WitnessInvalid(f"{f} moves the basepoint")
        if set(f.mapping) != set(range(dst.index)):
            raise WitnessInvalid(f"{f} is not surjective")
        for s in gens:
            for i in range(src.index):
                if dst.act_element(s, f.mapping[i]) != f.mapping[src.act_element(s, i)]:
                    raise WitnessInvalid(f"{f} is not equivariant at coset {i}")
    # maps alternate direction, so each map is followed by the one feeding into it
    for outer, inner in zip(maps, maps[1:]):
        C = chains[inner.source]
        lo, hi = C.table(outer.target_level), C.table(inner.source_level)
        for i in range(hi.index):
            if outer.mapping[inner.mapping[i]] != lo.coset_of(hi.representatives[i]):
                raise WitnessInvalid("maps are not compatible with the bonding maps")
    return maps


def _inclusion_map(S: GroupChain, sname: str, sl: int, T: GroupChain, tname: str, tl: int) -> LevelMap:
    src, dst = S.table(sl), T.table(tl)
    return LevelMap(sname, sl, tname, tl, tuple(dst.coset_of(r) for r in src.representatives))
