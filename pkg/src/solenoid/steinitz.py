"""Supernatural (Steinitz) numbers and tail equivalence of rank-one chains.

A chain ``m_1 Z ⊃ m_1 m_2 Z ⊃ ...`` in ``Z`` determines the formal product
of its step indices.  Two such chains are return equivalent exactly when
their products agree up to finitely many primes with finite exponents on
both sides.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .errors import WrongFamily
from .groups import FreeAbelian

INF = math.inf
TRIAL_DIVISION_BOUND = 10**6
MAX_STEP = TRIAL_DIVISION_BOUND**2


@dataclass(frozen=True)
class AtLeast:
    n: int

    def __str__(self):
        return f">={self.n}"


def factorize(m: int) -> dict[int, int]:
    """Trial division; every factor of ``m <= 10^12`` is found below the bound."""
    if m < 1:
        raise ValueError("can only factor positive integers")
    if m > MAX_STEP:
        raise ValueError(f"step index {m} exceeds the factoring bound {MAX_STEP}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


def nth_prime(k: int) -> int:
    """1-indexed: nth_prime(1) == 2."""
    count, p = 0, 1
    while count < k:
        p += 1
        if all(p % q for q in range(2, math.isqrt(p) + 1)):
            count += 1
    return p


class SteinitzNumber:
    def render(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class FiniteSupport(SteinitzNumber):
    """Explicit prime -> exponent map (exponents positive ints or ``INF``)."""

    exponents: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        items = tuple(sorted((int(p), e if e == INF else int(e)) for p, e in self.exponents))
        for p, e in items:
            if e == 0:
                raise ValueError("zero exponents are not stored")
            if e < 0:
                raise ValueError("exponents are non-negative")
        object.__setattr__(self, "exponents", items)

    @classmethod
    def from_dict(cls, exps: dict) -> FiniteSupport:
        return cls(tuple((p, e) for p, e in exps.items() if e != 0))

    @classmethod
    def infinite_powers(cls, m: int) -> FiniteSupport:
        """``m^∞``: every prime divisor of ``m`` with infinite exponent."""
        return cls(tuple((p, INF) for p in factorize(m)))

    @classmethod
    def from_steps(cls, steps) -> FiniteSupport:
        total: dict[int, int] = {}
        for m in steps:
            for p, e in factorize(m).items():
                total[p] = total.get(p, 0) + e
        return cls.from_dict(total)

    def as_dict(self) -> dict:
        return dict(self.exponents)

    def __mul__(self, other: FiniteSupport) -> FiniteSupport:
        out = self.as_dict()
        for p, e in other.exponents:
            out[p] = out.get(p, 0) + e
        return FiniteSupport.from_dict(out)

    def infinite_primes(self) -> set[int]:
        return {p for p, e in self.exponents if e == INF}

    def render(self):
        if not self.exponents:
            return "1"
        parts = []
        for p, e in self.exponents:
            parts.append(f"{p}^∞" if e == INF else (str(p) if e == 1 else f"{p}^{e}"))
        return " · ".join(parts)


class IndexSequence(SteinitzNumber):
    """Lazy product of step indices ``m_0, m_1, ...``.

    ``bound``: every prime occurs with total exponent at most ``bound``.
    ``eventual_primes``: from some step on, every step index is supported on this set.
    Both are trusted facts supplied by the constructor.
    """

    def __init__(self, step: Callable[[int], int], bound: int | None = None,
                 eventual_primes: frozenset | None = None, name: str = "",
                 allow_degenerate: bool = False):
        self._step = step
        self.bound = bound
        self.eventual_primes = frozenset(eventual_primes) if eventual_primes is not None else None
        self.name = name
        self.allow_degenerate = allow_degenerate
        self._cache: list[int] = []
        self._lock = threading.Lock()

    def step(self, l: int) -> int:
        with self._lock:
            while len(self._cache) <= l:
                m = int(self._step(len(self._cache)))
                lowest = 1 if self.allow_degenerate else 2
                if m < lowest:
                    raise ValueError(f"step index {m} at position {len(self._cache)} is below {lowest}")
                if m > MAX_STEP:
                    raise ValueError(f"step index {m} exceeds the factoring bound")
                self._cache.append(m)
            return self._cache[l]

    def prefix(self, depth: int) -> list[int]:
        return [self.step(l) for l in range(depth)]

    def render(self, shown: int = 5) -> str:
        body = ", ".join(str(m) for m in self.prefix(shown))
        notes = []
        if self.bound is not None:
            notes.append(f"each prime exponent <= {self.bound}")
        if self.eventual_primes is not None:
            notes.append(f"eventually supported on {sorted(self.eventual_primes)}")
        return f"∏({body}, …)" + (f" [{'; '.join(notes)}]" if notes else "")


def exponent_of(s: SteinitzNumber, p: int, depth: int):
    """Exponent of ``p`` in ``s``: an int, ``INF``, or ``AtLeast(n)`` when only a lower bound is known."""
    if isinstance(s, FiniteSupport):
        return s.as_dict().get(p, 0)
    n = sum(valuation(m, p) for m in s.prefix(depth))
    if s.bound is not None and n >= s.bound:
        return n
    return AtLeast(n)


class Equivalence(Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "UnknownAtDepth"


@dataclass(frozen=True)
class EquivalenceVerdict:
    value: Equivalence
    certificate: str = ""
    depth: int | None = None

    def __str__(self):
        if self.value is Equivalence.UNKNOWN:
            return f"UnknownAtDepth({self.depth})"
        return self.value.value


@dataclass
class _Profile:
    inf_lower: set[int]
    inf_upper: set[int] | None  # None: any prime may be infinite
    finite_part: bool | None  # True: finitely many finite-exponent primes; False: infinitely many
    why: Callable[[int], str] = field(repr=False, default=lambda p: "")


def _profile(s: SteinitzNumber) -> _Profile:
    if isinstance(s, FiniteSupport):
        exps = s.as_dict()
        return _Profile(s.infinite_primes(), s.infinite_primes(), True,
                        lambda p: f"exponent {_fmt_exp(exps.get(p, 0))}")
    if s.bound is not None:
        # infinitely many steps >= 2 with bounded exponents use infinitely many primes
        return _Profile(set(), set(), False if not s.allow_degenerate else None,
                        lambda p: f"exponent <= {s.bound} by annotation")
    if s.eventual_primes is not None:
        return _Profile(set(), set(s.eventual_primes), None,
                        lambda p: "finite exponent (not among the eventual primes)")
    return _Profile(set(), None, None)


def _fmt_exp(e) -> str:
    return "∞" if e == INF else str(e)


def _fmt_set(primes) -> str:
    return "{" + ", ".join(str(p) for p in sorted(primes)) + "}"


def tail_equivalent(s1: SteinitzNumber, s2: SteinitzNumber, depth: int = 0) -> EquivalenceVerdict:
    """Decide agreement up to finitely many finite exponents, where the descriptions allow it."""
    if s1 is s2 or (isinstance(s1, FiniteSupport) and s1 == s2):
        return EquivalenceVerdict(Equivalence.EQUIVALENT, "identical descriptions")
    a, b = _profile(s1), _profile(s2)
    for x, y, sx, sy in ((a, b, s1, s2), (b, a, s2, s1)):
        if y.inf_upper is None:
            continue
        extra = sorted(x.inf_lower - y.inf_upper)
        if extra:
            p = extra[0]
            sets = ""
            if all(q.inf_upper is not None and q.inf_lower == q.inf_upper for q in (a, b)):
                sets = f" {_fmt_set(a.inf_lower)} ≠ {_fmt_set(b.inf_lower)}"
            return EquivalenceVerdict(
                Equivalence.NOT_EQUIVALENT,
                f"∞-prime sets{sets or ' differ'}: {p} has exponent ∞ in {sx.render()} "
                f"but {y.why(p)} in {sy.render()}")
    exact = all(p.inf_upper is not None and p.inf_lower == p.inf_upper for p in (a, b))
    if exact and a.inf_lower == b.inf_lower:
        if a.finite_part and b.finite_part:
            return EquivalenceVerdict(
                Equivalence.EQUIVALENT,
                f"same ∞-primes {sorted(a.inf_lower)}; finite parts differ at finitely many primes")
        if {a.finite_part, b.finite_part} == {True, False}:
            fin, inf_side = (s1, s2) if a.finite_part else (s2, s1)
            return EquivalenceVerdict(
                Equivalence.NOT_EQUIVALENT,
                f"{inf_side.render()} has infinitely many primes of bounded exponent "
                f"while {fin.render()} has finitely many finite exponents")
    return EquivalenceVerdict(Equivalence.UNKNOWN, "descriptions do not settle the comparison",
                              depth)


def equal(s1: SteinitzNumber, s2: SteinitzNumber, depth: int = 0) -> EquivalenceVerdict:
    """Exact equality, decided for two finite-support numbers; otherwise via tail inequivalence."""
    if isinstance(s1, FiniteSupport) and isinstance(s2, FiniteSupport):
        if s1 == s2:
            return EquivalenceVerdict(Equivalence.EQUIVALENT, "identical supernatural numbers")
        d1, d2 = s1.as_dict(), s2.as_dict()
        p = min(q for q in set(d1) | set(d2) if d1.get(q, 0) != d2.get(q, 0))
        return EquivalenceVerdict(
            Equivalence.NOT_EQUIVALENT,
            f"exponent of {p} differs: {_fmt_exp(d1.get(p, 0))} in {s1.render()} "
            f"vs {_fmt_exp(d2.get(p, 0))} in {s2.render()}")
    tail = tail_equivalent(s1, s2, depth)
    if tail.value is Equivalence.NOT_EQUIVALENT:
        return tail
    if s1 is s2:
        return EquivalenceVerdict(Equivalence.EQUIVALENT, "identical descriptions")
    return EquivalenceVerdict(Equivalence.UNKNOWN, "descriptions do not settle the comparison", depth)


def chain_steinitz(C) -> SteinitzNumber:
    """Supernatural degree of any chain: the closed form if known, else the lazy index ratios."""
    if "steinitz" in C.metadata:
        return C.metadata["steinitz"]
    return IndexSequence(lambda l: C.index(l + 1) // C.index(l), name=C.name, allow_degenerate=True)


def steinitz_from_chain(C) -> SteinitzNumber:
    if not (isinstance(C.family, FreeAbelian) and C.family.rank == 1):
        raise WrongFamily("Steinitz classification needs a chain in Z")
    return chain_steinitz(C)


def render(s: SteinitzNumber) -> str:
    return s.render()
