import pytest

from solenoid.errors import WrongFamily
from solenoid.gallery import GallerySpec, build
from solenoid.steinitz import (
    INF,
    AtLeast,
    Equivalence,
    FiniteSupport,
    IndexSequence,
    exponent_of,
    factorize,
    nth_prime,
    steinitz_from_chain,
    tail_equivalent,
)

TWO, THREE, SIX = (FiniteSupport.infinite_powers(m) for m in (2, 3, 6))
PRIMES = IndexSequence(lambda i: nth_prime(i + 1), bound=1)


def test_render_grammar():
    s = FiniteSupport.from_dict({5: 1, 2: INF, 3: 2})
    assert s.render() == "2^∞ · 3^2 · 5"
    assert FiniteSupport().render() == "1"


def test_from_chain(klein):
    assert steinitz_from_chain(build(GallerySpec.vietoris(2))) == TWO
    s = steinitz_from_chain(build(GallerySpec.vietoris(distinct_primes=True)))
    assert s.bound == 1 and s.prefix(4) == [2, 3, 5, 7]
    assert steinitz_from_chain(build(GallerySpec.lattice([[1]]))).render() == "1"
    with pytest.raises(WrongFamily):
        steinitz_from_chain(klein)


def test_exponent_of():
    assert exponent_of(TWO, 2, 3) == INF
    assert exponent_of(TWO, 3, 3) == 0
    assert exponent_of(PRIMES, 2, 5) == 1
    assert exponent_of(IndexSequence(lambda i: 4), 2, 3) == AtLeast(6)


def test_classification_examples():
    v = tail_equivalent(TWO, THREE, 5)
    assert v.value is Equivalence.NOT_EQUIVALENT
    assert "{2} ≠ {3}" in v.certificate
    v = tail_equivalent(PRIMES, SIX, 5)
    assert v.value is Equivalence.NOT_EQUIVALENT
    assert "2" in v.certificate and "annotation" in v.certificate
    mixed = TWO * FiniteSupport.from_dict({3: 1})
    assert tail_equivalent(TWO, mixed, 5).value is Equivalence.EQUIVALENT


def test_unannotated_sequences_stay_unknown():
    s = IndexSequence(lambda i: 2)
    assert tail_equivalent(s, TWO, 10).value is Equivalence.UNKNOWN


def test_factor_bound():
    assert factorize(2**39) == {2: 39}
    with pytest.raises(ValueError):
        factorize(10**13)
    with pytest.raises(ValueError):
        IndexSequence(lambda i: 1).step(0)


def test_regrouping_steps():
    steps = [2, 3, 4, 6, 9]
    paired = [steps[0] * steps[1], steps[2] * steps[3], steps[4]]
    a, b = FiniteSupport.from_steps(steps), FiniteSupport.from_steps(paired)
    assert a == b
