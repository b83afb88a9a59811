import pytest

from solenoid.chains import verify_chain
from solenoid.errors import InvalidSpec, OracleMismatch
from solenoid.gallery import GallerySpec, build, metadata_oracle_check
from solenoid.groups import KleinBottle
from solenoid.subgroups import HeisenbergPattern, KleinPattern, Lattice

SWAP = {"n": 2, "table": [[0, 1], [1, 0]], "matrices": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}

ALL = [
    (GallerySpec.vietoris(2), 6),
    (GallerySpec.vietoris(steps=[2, 3, 5]), 6),
    (GallerySpec.vietoris(distinct_primes=True), 6),
    (GallerySpec.lattice([[2]]), 6),
    (GallerySpec.lattice([[2, 1], [0, 3]]), 4),
    (GallerySpec.klein(2), 4),
    (GallerySpec.klein(3), 4),
    (GallerySpec.heisenberg_phi(), 4),
    (GallerySpec.heisenberg_dyer(2, 3), 4),
    (GallerySpec.semidirect_scale(p=2, **SWAP), 4),
]


@pytest.mark.parametrize("spec,depth", ALL, ids=lambda x: getattr(x, "kind", str(x)))
def test_every_gallery_chain_verifies(spec, depth):
    verify_chain(build(spec), depth)


def test_level_examples():
    C = build(GallerySpec.klein(2))
    assert C.level(1) == KleinPattern(2) and C.index(1) == 2
    P = build(GallerySpec.heisenberg_phi())
    assert P.level(1) == HeisenbergPattern(2, 2, 4) and P.table(1).index == 16
    L, V = build(GallerySpec.lattice([[2]])), build(GallerySpec.vietoris(2))
    assert all(L.level(l) == V.level(l) for l in range(6))


def test_lattice_levels_are_matrix_powers():
    C = build(GallerySpec.lattice([[2, 1], [0, 3]]))
    # phi^2 = [[4, 5], [0, 9]]
    assert C.level(2) == Lattice.from_vectors(C.family, [(4, 0), (5, 9)])


def test_semidirect_trivial_f_matches_vietoris():
    S = build(GallerySpec.semidirect_scale(1, [[0]], [[[1]]], 5))
    V = build(GallerySpec.vietoris(5))
    assert all(S.level(l).basis == V.level(l).basis for l in range(6))


def test_dyer_levels_are_subgroups():
    C = build(GallerySpec.heisenberg_dyer(3, 2))
    for l in range(4):
        H = C.level(l)
        gens = H.generators()
        assert all(H.contains(g * h) and H.contains(g.inverse()) for g in gens for h in gens)


@pytest.mark.parametrize("bad", [
    GallerySpec.lattice([[1, 2], [2, 4]]),
    GallerySpec.heisenberg_dyer(3, 3),
    GallerySpec.klein(1),
    GallerySpec("vietoris", {"multiplier": 2, "steps": [2]}),
    GallerySpec("semidirect_scale", {"n": 1, "table": [[0, 1], [1, 0]], "matrices": [[[1]], [[2]]], "p": 2}),
    GallerySpec("nonsense", {}),
])
def test_invalid_specs(bad):
    with pytest.raises(InvalidSpec):
        build(bad)


def test_oracle_examples():
    rep = metadata_oracle_check(build(GallerySpec.klein(2)), 4)
    assert set(rep) == {"kernel_generators", "relations", "core", "steinitz"}
    assert "core" in metadata_oracle_check(build(GallerySpec.heisenberg_phi()), 2)
    assert "steinitz" in metadata_oracle_check(build(GallerySpec.vietoris(2)), 6)


def test_oracle_detects_wrong_claim():
    C = build(GallerySpec.klein(2))
    C.metadata["kernel_generators"] = [KleinBottle().element(1, 0)]
    with pytest.raises(OracleMismatch):
        metadata_oracle_check(C, 3)


def test_json_round_trip():
    spec = GallerySpec.heisenberg_dyer(2, 5)
    again = GallerySpec.from_json(spec.to_json())
    assert again.kind == spec.kind and again.parameters == spec.parameters
    with pytest.raises(InvalidSpec):
        GallerySpec.from_json({"kind": "klein", "family": "heisenberg", "parameters": {"d": 2}})
