"""
The Klein bottle chain and its dihedral action
==============================================

Level l of the chain is generated by a^(2^l) and b.  The action of the
fundamental group on the coset spaces has kernel generated by b, so what
acts effectively is the infinite dihedral group.
"""

from solenoid import GallerySpec, build, kernel_report, relation_acts_trivially, verify_chain
from solenoid.cosets import fiber_orbit

C = build(GallerySpec.klein(2))
report = verify_chain(C, 5)
print("indices:", report.indices)

# a and b are generators 0 and 1; words are lists of (generator, exponent)
a, b = C.family.generators()
survivors = kernel_report(C, 5, [a, b, b * b, a * b]).surviving_generators
print("in every level up to 5:", [g.payload for g in survivors])

# b squared acts trivially on every coset space, b itself does not
for name, word in [("b", [(1, 1)]), ("b^2", [(1, 2)]), ("b a b^-1 a", [(1, 1), (0, 1), (1, -1), (0, 1)])]:
    print(f"{name:>11} trivial at levels 0..5:",
          [relation_acts_trivially(C, l, word) for l in range(6)])

# the orbit of the basepoint under a fills the truncated fiber
orbit = fiber_orbit(C, 4, [[(0, 1)]])
print("orbit of the basepoint under a at depth 4:", len(orbit), "points")
