"""
Normal cores in the Heisenberg group
====================================

Two chains in the discrete Heisenberg group.  The first, built from the
self-map (x, y, z) -> (2x, 2y, 4z), is equivalent to a normal chain: level
2l sits inside the normal core of level l.  The second, Dyer's chain with
distinct primes on the two generators, produces no such certificate at the
depths we can reach.
"""

from solenoid import GallerySpec, build, normal_core, normality_certificate, verify_chain

phi = build(GallerySpec.heisenberg_phi())
verify_chain(phi, 4)
for l in (1, 2):
    core = normal_core(phi, l)
    print(f"core of level {l}: index {core.index}, closed form {core.closed_form}")

v = normality_certificate(phi, 4)
print("phi chain:", v.status.value, "pairs (l, m):", v.witness.pairs)

dyer = build(GallerySpec.heisenberg_dyer(2, 3))
print("Dyer indices:", verify_chain(dyer, 4).indices)
v = normality_certificate(dyer, 4)
print("Dyer chain:", v.status.value, "-", v.certificate)
