"""
From an interleaving to a pro-isomorphism
=========================================

An interleaving of two chains gives maps between their coset spaces that
commute with the group action, and a morphism of the pro-groups formed by
the levels.  Both are rebuilt here from one witness and checked.
"""

from solenoid import (
    GallerySpec,
    build,
    check_equivalent,
    equivariant_maps_from_witness,
    is_proisomorphism,
    promorphism_from_equivalence,
    verify_chain,
)

A, B = build(GallerySpec.vietoris(2)), build(GallerySpec.vietoris(4))
verify_chain(A, 6), verify_chain(B, 6)

v = check_equivalent(A, B, 6)
print("verdict:", v.status.value, "pairs:", v.witness.pairs)

for f in equivariant_maps_from_witness(v.witness, depth=4):
    print(f"X({f.source})_{f.source_level} -> X({f.target})_{f.target_level}:", f.mapping)

m = promorphism_from_equivalence(v.witness)
print("pro-isomorphism:", is_proisomorphism(m, 6).status.value)
