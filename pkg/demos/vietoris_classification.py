"""
Classifying circle-like solenoids by Steinitz numbers
=====================================================

Chains in Z are classified up to return equivalence by their Steinitz
numbers: two of them agree when the same primes occur infinitely often
and the finite exponents differ at finitely many primes.
"""

from solenoid import FiniteSupport, GallerySpec, build, check_return_equivalent, steinitz_from_chain
from solenoid import tail_equivalent, truncate_chain, verify_chain

chains = {m: build(GallerySpec.vietoris(m)) for m in (2, 3, 4, 6)}
for C in chains.values():
    verify_chain(C, 6)
    print(C.name, "has Steinitz number", steinitz_from_chain(C))

print("2-adic vs 4-adic:", check_return_equivalent(chains[2], chains[4], 6).status.value)
v = check_return_equivalent(chains[2], chains[3], 6)
print("2-adic vs 3-adic:", v.status.value, "-", v.certificate)

# dropping the first two levels does not change the solenoid
v = check_return_equivalent(chains[6], truncate_chain(chains[6], 2), 4)
print("6-adic vs its truncation:", v.status.value, "offsets", v.witness.offsets)

primes = steinitz_from_chain(build(GallerySpec.vietoris(distinct_primes=True)))
print(primes, "vs 6^∞:", tail_equivalent(primes, FiniteSupport.infinite_powers(6)))
