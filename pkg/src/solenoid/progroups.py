"""Pro-groups over ℕ with inclusion bonds, and bounded-depth mono/epi/iso checks.

A pro-group here is a descending sequence of subgroups of one ambient
group, bonded by inclusions.  Morphisms ``(φ, f_γ)`` send source level
``φ(γ)`` into target level ``γ`` by an inclusion or by an ambient
conjugation; these are the only map kinds the chain constructions need, and
both are injective, which makes the kernel conditions exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .chains import GroupChain
from .equivalence import (
    ConjugacyWitness,
    InterleavingWitness,
    ReturnWitness,
    Status,
    Verdict,
    verify_conjugacy,
    verify_interleaving,
)
from .errors import BadIndices, InvalidMorphism, WitnessInvalid
from .groups import GroupElement, GroupFamily
from .subgroups import Conjugate, Subgroup, is_subgroup_of

DEFAULT_CHECK_DEPTH = 6


class ProGroup:
    """Levels ``ℓ -> P_ℓ`` inside one ambient family; ``size`` bounds a finite subsequence."""

    def __init__(self, family: GroupFamily, level_fn: Callable[[int], Subgroup],
                 size: int | None = None, name: str = ""):
        self.family = family
        self._level_fn = level_fn
        self.size = size
        self.name = name
        self._levels: dict[int, Subgroup] = {}

    def level(self, l: int) -> Subgroup:
        if l < 0 or (self.size is not None and l >= self.size):
            raise BadIndices(f"level {l} is outside pro-group {self.name!r}")
        if l not in self._levels:
            self._levels[l] = self._level_fn(l)
        return self._levels[l]

    def last(self, depth: int) -> int:
        return depth if self.size is None else min(depth, self.size - 1)

    def check_bonds(self, depth: int) -> bool:
        """Levels descend, so every bond is an inclusion and bonds compose."""
        return all(is_subgroup_of(self.level(l + 1), self.level(l)) for l in range(self.last(depth)))


def progroup_from_chain(C: GroupChain) -> ProGroup:
    size = None if C.max_depth is None else C.max_depth + 1
    return ProGroup(C.family, C.level, size, C.name)


def progroup_from_levels(family: GroupFamily, levels: Sequence[Subgroup], name: str = "") -> ProGroup:
    levels = tuple(levels)
    return ProGroup(family, lambda l: levels[l], len(levels), name)


class LevelHom:
    """A homomorphism from a source level into a target level, restricted from the ambient group."""

    injective = False

    def apply(self, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def image(self, S: Subgroup) -> Subgroup | None:
        return None


@dataclass(frozen=True)
class Inclusion(LevelHom):
    injective = True

    def apply(self, g):
        return g

    def image(self, S):
        return S


@dataclass(frozen=True)
class ConjugationBy(LevelHom):
    """``x -> g x g^-1``."""

    g: GroupElement
    injective = True

    def apply(self, x):
        return self.g * x * self.g.inverse()

    def image(self, S):
        return Conjugate(S, self.g)


@dataclass(frozen=True)
class AdmissiblePair:
    lam: int
    gamma: int

    def check(self, m: ProMorphism):
        if self.lam < m.phi(self.gamma):
            raise BadIndices(f"pair ({self.lam}, {self.gamma}) has λ < φ(γ) = {m.phi(self.gamma)}")


class ProMorphism:
    """``f_γ : source_{φ(γ)} -> target_γ`` for ``γ`` in range.

    Construction verifies, up to ``depth`` (or the finite range), that φ is
    strictly increasing, every map is a :class:`LevelHom`, and generators of
    each source level land in the corresponding target level.
    """

    def __init__(self, source: ProGroup, target: ProGroup, index_map: Callable[[int], int],
                 maps: Callable[[int], LevelHom] | Sequence[LevelHom], size: int | None = None,
                 depth: int | None = None, name: str = ""):
        if source.family != target.family:
            raise InvalidMorphism("source and target live in different groups")
        self.source, self.target = source, target
        self.phi = index_map
        if callable(maps):
            self._map_fn = maps
        else:
            seq = tuple(maps)
            size = len(seq) if size is None else min(size, len(seq))
            self._map_fn = seq.__getitem__
        self.size = size
        self.name = name
        self.verified_depth = self._verify(DEFAULT_CHECK_DEPTH if depth is None else depth)

    def gammas(self, depth: int) -> range:
        top = depth if self.size is None else min(depth, self.size - 1)
        if self.target.size is not None:
            top = min(top, self.target.size - 1)
        return range(top + 1)

    def map(self, gamma: int) -> LevelHom:
        if gamma < 0 or (self.size is not None and gamma >= self.size):
            raise BadIndices(f"no map at index {gamma}")
        return self._map_fn(gamma)

    def _verify(self, depth: int) -> int:
        last = -1
        good = -1
        for gamma in self.gammas(depth):
            lam = self.phi(gamma)
            if lam <= last:
                raise InvalidMorphism(f"index map is not strictly increasing at {gamma}")
            last = lam
            f = self.map(gamma)
            if not isinstance(f, LevelHom):
                raise InvalidMorphism(f"map {f!r} is neither an inclusion nor a conjugation")
            try:
                src = self.source.level(lam)
            except BadIndices:
                break
            tgt = self.target.level(gamma)
            bad = next((x for x in src.generators() if not tgt.contains(f.apply(x))), None)
            if bad is not None:
                raise InvalidMorphism(
                    f"f_{gamma} sends generator {bad.payload} of source level {lam} "
                    f"outside target level {gamma}")
            good = gamma
        return good

    def admissible_pairs(self, depth: int):
        for gamma in self.gammas(depth):
            for lam in range(self.phi(gamma), self.source.last(depth) + 1):
                yield AdmissiblePair(lam, gamma)


def identity_morphism(P: ProGroup, depth: int | None = None) -> ProMorphism:
    return ProMorphism(P, P, lambda g: g, lambda g: Inclusion(), size=P.size, depth=depth,
                       name=f"id({P.name})")


def verify_equalizer(m: ProMorphism, gamma: int, gamma2: int, lam: int) -> bool:
    """Does ``f_γ`` agree with ``q ∘ f_γ'`` on the generators of source level ``λ``?

    Bonds are inclusions, so the two composites are ``f_γ`` and ``f_γ'``
    restricted to ``source_λ``.  Two conjugations ``c_g`` and ``c_g'`` also
    count as agreeing when ``t = g' g^-1`` lies in target level ``γ``: then
    they differ by the inner automorphism ``c_t`` of that level.
    """
    if not gamma < gamma2 or lam < m.phi(gamma) or lam < m.phi(gamma2):
        raise BadIndices(f"need γ < γ' and λ >= φ(γ), φ(γ'); got ({gamma}, {gamma2}, {lam})")
    f1, f2 = m.map(gamma), m.map(gamma2)
    gens = m.source.level(lam).generators()
    if all(f1.apply(x) == f2.apply(x) for x in gens):
        return True
    if isinstance(f1, ConjugationBy) and isinstance(f2, ConjugationBy):
        t = f2.g * f1.g.inverse()
        if m.target.level(gamma).contains(t):
            return all(f2.apply(x) == t * f1.apply(x) * t.inverse() for x in gens)
    return False


def _kernel_witness(f: LevelHom, S: Subgroup):
    return next((x for x in S.generators() if not x.is_identity() and f.apply(x).is_identity()),
                None)


def is_promonomorphism(m: ProMorphism, depth: int) -> Verdict:
    """Kernel condition: bonds are injective, so some deeper ``f`` must be injective."""
    pairs = list(m.admissible_pairs(depth))
    found = []
    for pr in pairs:
        proof = []
        ok = None
        for gamma in m.gammas(depth):
            if gamma < pr.gamma:
                continue
            for lam in range(max(pr.lam, m.phi(gamma)), m.source.last(depth) + 1):
                f = m.map(gamma)
                if f.injective:
                    ok = (lam, gamma)
                    break
                x = _kernel_witness(f, m.source.level(lam))
                if x is not None:
                    proof.append((lam, gamma, x))
            if ok:
                break
        if ok is None:
            if proof:
                lam, gamma, x = proof[0]
                return Verdict(Status.FAILS, certificate=(
                    f"f_{gamma} kills {x.payload} in source level {lam}; "
                    "every candidate map within depth has a nontrivial kernel"), depth=depth)
            return Verdict(Status.UNKNOWN, certificate=f"no injective map found for pair "
                           f"({pr.lam}, {pr.gamma})", depth=depth)
        found.append(((pr.lam, pr.gamma), ok))
    return Verdict(Status.HOLDS, tuple(found), "all maps injective on the checked range", depth)


def is_proepimorphism(m: ProMorphism, depth: int) -> Verdict:
    """Image condition: some target level ``γ' >= γ`` lies in ``f_γ(source_λ)``."""
    pairing = []
    for pr in m.admissible_pairs(depth):
        f = m.map(pr.gamma)
        img = f.image(m.source.level(pr.lam))
        if img is None:
            return Verdict(Status.UNKNOWN, certificate=f"image of {f!r} has no structural form",
                           depth=depth)
        g2 = next((g for g in range(pr.gamma, m.target.last(depth) + 1)
                   if is_subgroup_of(m.target.level(g), img)), None)
        if g2 is None:
            return Verdict(Status.UNKNOWN, certificate=(
                f"no target level γ' <= {m.target.last(depth)} lies in the image of "
                f"source level {pr.lam} under f_{pr.gamma}"), depth=depth)
        pairing.append(((pr.lam, pr.gamma), g2))
    return Verdict(Status.HOLDS, tuple(pairing), "every admissible pair has a returning level",
                   depth)


def is_proisomorphism(m: ProMorphism, depth: int) -> Verdict:
    mono, epi = is_promonomorphism(m, depth), is_proepimorphism(m, depth)
    if mono.holds and epi.holds:
        return Verdict(Status.HOLDS, (mono.witness, epi.witness), "mono and epi", depth)
    for v, what in ((mono, "mono"), (epi, "epi")):
        if v.fails:
            return Verdict(Status.FAILS, certificate=f"{what}: {v.certificate}", depth=depth)
    bad = mono if not mono.holds else epi
    return Verdict(Status.UNKNOWN, certificate=bad.certificate, depth=depth)


def promorphism_from_equivalence(W) -> ProMorphism:
    """Pro-morphism from an interleaving ``A_k = G_{ℓ_k}``, ``B_k = H_{j_k}``, ``φ(k) = k + 1``.

    ``f_k`` includes ``A_{k+1}`` into ``B_k``; for a conjugacy witness it is
    conjugation by ``g_{ℓ_{k+1}}``.
    """
    if isinstance(W, ReturnWitness):
        W = W.inner
    if isinstance(W, ConjugacyWitness):
        A, B, inter = W.source, W.target, W.interleaving
        if not verify_conjugacy(A, B, W):
            raise WitnessInvalid("conjugacy witness does not re-verify")
        conj = W.elements
    elif isinstance(W, InterleavingWitness):
        A, B, inter = W.source, W.target, W
        if not verify_interleaving(A, B, W):
            raise WitnessInvalid("interleaving witness does not re-verify")
        conj = None
    else:
        raise WitnessInvalid(f"unsupported witness {type(W).__name__}")
    pairs = inter.pairs
    src = progroup_from_levels(A.family, [A.level(l) for l, _ in pairs], f"{A.name} subsequence")
    tgt = progroup_from_levels(B.family, [B.level(j) for _, j in pairs], f"{B.name} subsequence")
    if conj is None:
        maps = [Inclusion() for _ in pairs[:-1]]
    else:
        maps = [ConjugationBy(conj[pairs[k + 1][0]]) for k in range(len(pairs) - 1)]
    return ProMorphism(src, tgt, lambda k: k + 1, maps, depth=len(pairs),
                       name="from equivalence")
