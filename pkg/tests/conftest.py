import pytest

from enriq import presets

WITNESS = (12, 111, 13)


@pytest.fixture(scope="session")
def k_tower_witness():
    """The full 18-step splitting tower at the witness triplet (~2 s to
    build, shared across the whole run)."""
    return presets.k_tower(*WITNESS)


@pytest.fixture(scope="session")
def k1_tower_witness():
    return presets.k1_tower(*WITNESS)


@pytest.fixture(scope="session")
def k0_tower():
    return presets.k0_tower()
