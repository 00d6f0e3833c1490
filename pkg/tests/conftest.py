import pytest

from bosonic_mac import ChannelParams, PhotonBudget


@pytest.fixture
def surface_channel():
    """Strongly thermal channel used for the squeezing-surface checks."""
    return ChannelParams(eta1=0.2, eta2=0.9, n_thermal=4.0)


@pytest.fixture
def surface_budget():
    return PhotonBudget(4.0, 8.0)


@pytest.fixture
def region_channel():
    """Asymmetric channel used for the rate-region checks."""
    return ChannelParams(eta1=0.25, eta2=0.9, n_thermal=1.0)


@pytest.fixture
def region_budget():
    return PhotonBudget(1.0, 1000.0)
