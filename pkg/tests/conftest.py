import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from solenoid.chains import verify_chain  # noqa: E402
from solenoid.gallery import GallerySpec, build  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "specs"


def chain(spec, depth):
    C = build(spec)
    verify_chain(C, depth)
    return C


@pytest.fixture
def adic():
    return lambda m, depth=8: chain(GallerySpec.vietoris(m), depth)


@pytest.fixture
def klein():
    return chain(GallerySpec.klein(2), 6)


@pytest.fixture
def heis_phi():
    return chain(GallerySpec.heisenberg_phi(), 4)


@pytest.fixture
def dyer():
    return chain(GallerySpec.heisenberg_dyer(2, 3), 4)
