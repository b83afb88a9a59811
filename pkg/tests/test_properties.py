"""Randomized property suites, 1000 cases each under a fixed seed."""

import random
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import chain
from oracles import brute_core_contains
from solenoid.chains import GroupChain, normal_core, truncate_chain, verify_chain
from solenoid.cosets import bonding_map, relation_acts_trivially
from solenoid.equivalence import (
    ReturnWitness,
    Status,
    check_conjugate_equivalent,
    check_equivalent,
    check_return_equivalent,
    verify_conjugacy,
    verify_interleaving,
)
from solenoid.gallery import GallerySpec
from solenoid.groups import FreeAbelian, Heisenberg, KleinBottle, SemidirectZnF, evaluate_word
from solenoid.steinitz import INF, Equivalence, FiniteSupport, tail_equivalent
from solenoid.subgroups import Conjugate

CASES = 1000
SEED = 20240607
PROPS = settings(max_examples=CASES, derandomize=True, deadline=None,
                 suppress_health_check=[HealthCheck.too_slow])

# Z^2 twisted by the swap of coordinates
SWAP = SemidirectZnF(2, [[0, 1], [1, 0]], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
FAMILIES = [FreeAbelian(1), FreeAbelian(3), Heisenberg(), KleinBottle(), SWAP]
ints = st.integers(-10**6, 10**6)


def payloads(family):
    if isinstance(family, FreeAbelian):
        return st.tuples(*[ints] * family.rank)
    if isinstance(family, Heisenberg):
        return st.tuples(ints, ints, ints)
    if isinstance(family, KleinBottle):
        return st.tuples(ints, ints)
    return st.tuples(st.tuples(ints, ints), st.integers(0, family.order - 1))


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.name)
def test_group_axioms(family):
    element = payloads(family).map(lambda p: family.element(*p))

    @PROPS
    @given(element, element, element)
    def check(g, h, k):
        e = family.identity()
        assert (g * h) * k == g * (h * k)
        assert (g * g.inverse()).is_identity() and (g.inverse() * g).is_identity()
        assert e * g == g == g * e

    check()


@PROPS
@given(st.integers(-10**9, 10**9))
def test_klein_conjugation_inverts_a(m):
    K = KleinBottle()
    a, b = K.generators()
    assert b * a ** m * b.inverse() == a ** (-m)


@lru_cache(maxsize=None)
def pool():
    """Verified chains covering every family, with the depth each is used to."""
    return (
        (chain(GallerySpec.vietoris(2), 6), 6),
        (chain(GallerySpec.vietoris(steps=[2, 3, 2, 5, 3, 2]), 6), 6),
        (chain(GallerySpec.lattice([[2, 1], [0, 3]]), 3), 3),
        (chain(GallerySpec.klein(2), 4), 4),
        (chain(GallerySpec.klein(3), 3), 3),
        (chain(GallerySpec.heisenberg_phi(), 3), 3),
        (chain(GallerySpec.heisenberg_dyer(2, 3), 3), 3),
        (chain(GallerySpec.semidirect_scale(2, [[0, 1], [1, 0]],
                                            [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], 2), 3), 3),
    )


def random_word(rng, ngens, length=6):
    return [(rng.randrange(ngens), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randrange(length + 1))]


def test_coset_actions_are_transitive_permutations():
    rng = random.Random(SEED)
    for _ in range(CASES):
        C, depth = rng.choice(pool())
        T = C.table(rng.randrange(depth + 1))
        s = rng.randrange(len(T.perms))
        assert sorted(T.perms[s]) == list(range(T.index))
        i = rng.randrange(T.index)
        # walking a random word from i lands in range, and some word reaches every coset
        j = T.act(random_word(rng, len(T.perms)), i)
        assert 0 <= j < T.index
        assert T.is_transitive()


def test_bonding_equivariance():
    rng = random.Random(SEED + 1)
    for _ in range(CASES):
        C, depth = rng.choice(pool())
        l = rng.randrange(1, depth + 1)
        up, down, bond = C.table(l), C.table(l - 1), bonding_map(C, l)
        w = random_word(rng, len(up.perms), 3)
        i = rng.randrange(up.index)
        assert bond[up.act(w, i)] == down.act(w, bond[i])


def test_left_action_is_consistent_with_products():
    rng = random.Random(SEED + 2)
    for _ in range(CASES):
        C, depth = rng.choice(pool())
        T = C.table(rng.randrange(depth + 1))
        w1, w2 = random_word(rng, len(T.perms)), random_word(rng, len(T.perms))
        i = rng.randrange(T.index)
        assert T.act(w1 + w2, i) == T.act(w1, T.act(w2, i))
        g = evaluate_word(C.family, w1 + w2)
        assert T.act(w1 + w2, i) == T.coset_of(g * T.representatives[i])


@lru_cache(maxsize=None)
def step_chain(steps):
    return chain(GallerySpec.vietoris(steps=list(steps)), len(steps))


def test_witness_reverification():
    rng = random.Random(SEED + 3)
    verdicts = set()
    for _ in range(CASES):
        A = step_chain(tuple(rng.choice([2, 3, 4, 6]) for _ in range(6)))
        B = step_chain(tuple(rng.choice([2, 3, 4, 6]) for _ in range(6)))
        v = check_equivalent(A, B, 6)
        verdicts.add(v.status)
        if v.holds:
            assert verify_interleaving(A, B, v.witness)
            # equivalence implies the weaker relations
            assert check_return_equivalent(A, B, 6).holds
        else:
            assert v.witness is None and v.certificate
    assert Status.HOLDS in verdicts


def test_conjugacy_witness_reverification():
    rng = random.Random(SEED + 4)
    klein, _ = pool()[3]
    dyer, _ = pool()[6]
    for C, depth in ((klein, 3), (dyer, 2)):
        reps = C.table(depth).representatives
        for _ in range(CASES // 100):
            g = rng.choice(reps)
            B = chain_conjugate(C, g, depth)
            v = check_conjugate_equivalent(C, B, depth)
            assert v.holds and verify_conjugacy(C, B, v.witness)


def chain_conjugate(C, g, depth):
    B = GroupChain(C.family, lambda l: Conjugate(C.level(l), g), name=f"{C.name}^g")
    verify_chain(B, depth)
    return B


def test_truncation_is_return_equivalent():
    rng = random.Random(SEED + 5)
    for _ in range(CASES):
        C, depth = rng.choice(pool())
        # the truncation is verified to depth - k, and offset k must leave a level to compare
        k = rng.randrange(1, (depth - 1) // 2 + 1)
        v = check_return_equivalent(C, truncate_chain(C, k), depth - k)
        assert v.holds and isinstance(v.witness, ReturnWitness)
        assert v.witness.offsets == (k, 0)
        assert verify_interleaving(truncate_chain(C, k), truncate_chain(C, k), v.witness.inner)


def test_normal_core_agrees_with_trivial_action():
    rng = random.Random(SEED + 6)
    for C, depth in pool():
        for l in range(depth + 1):
            core = normal_core(C, l)
            reps = C.table(l).representatives
            for _ in range(100):
                w = random_word(rng, len(C.family.generators()), 8)
                g = evaluate_word(C.family, w)
                trivial = relation_acts_trivially(C, l, w)
                assert core.contains(g) == trivial == brute_core_contains(C.level(l), reps, g)


exponent = st.sampled_from([0, 1, 2, 3, INF])
supports = st.dictionaries(st.sampled_from([2, 3, 5, 7]), exponent).map(FiniteSupport.from_dict)


@PROPS
@given(supports, supports, supports)
def test_tail_equivalence_is_an_equivalence(s, t, u):
    eq = Equivalence.EQUIVALENT
    assert tail_equivalent(s, s).value is eq
    st_, ts = tail_equivalent(s, t), tail_equivalent(t, s)
    assert st_.value is ts.value and st_.value is not Equivalence.UNKNOWN
    if st_.value is eq and tail_equivalent(t, u).value is eq:
        assert tail_equivalent(s, u).value is eq


@lru_cache(maxsize=None)
def adic_chain(m):
    return chain(GallerySpec.vietoris(m), 6)


@settings(max_examples=60, derandomize=True, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_tail_equivalence_matches_return_equivalence(m, n):
    A, B = adic_chain(m), adic_chain(n)
    tail = tail_equivalent(A.metadata["steinitz"], B.metadata["steinitz"]).value
    ret = check_return_equivalent(A, B, 6).status
    if tail is not Equivalence.UNKNOWN and ret is not Status.UNKNOWN:
        assert (tail is Equivalence.EQUIVALENT) == (ret is Status.HOLDS)
