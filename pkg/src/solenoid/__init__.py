"""Finite-level computations for weak solenoids presented by group chains."""

from .chains import GroupChain, kernel_report, normal_core, truncate_chain, verify_chain
from .cosets import (
    CosetTable,
    act_on_point,
    basepoint,
    bonding_map,
    enumerate_cosets,
    fiber_orbit,
    point_from_element,
    relation_acts_trivially,
)
from .equivalence import (
    ConjugacyWitness,
    InterleavingWitness,
    NormalityCertificate,
    Status,
    Verdict,
    check_conjugate_equivalent,
    check_equivalent,
    check_return_equivalent,
    equivariant_maps_from_witness,
    normality_certificate,
    verify_conjugacy,
    verify_interleaving,
)
from .gallery import GallerySpec, build, metadata_oracle_check
from .groups import (
    FreeAbelian,
    GroupElement,
    Heisenberg,
    KleinBottle,
    SemidirectZnF,
    evaluate_word,
)
from .progroups import (
    ConjugationBy,
    Inclusion,
    ProGroup,
    ProMorphism,
    identity_morphism,
    is_proepimorphism,
    is_proisomorphism,
    is_promonomorphism,
    progroup_from_chain,
    promorphism_from_equivalence,
    verify_equalizer,
)
from .steinitz import FiniteSupport, IndexSequence, steinitz_from_chain, tail_equivalent
from .subgroups import (
    Conjugate,
    HeisenbergPattern,
    KleinPattern,
    Lattice,
    SemidirectPattern,
    is_subgroup_of,
)
