"""Gaussian-input rates, capacity regions and outer bounds for the
two-user lossy bosonic multiple access channel with thermal noise.

The scalar rate kernels live in a compiled extension with a pure-Python
fallback selected at import time; see :mod:`bosonic_mac._kernels`.
"""

from ._kernels import BACKEND
from .asymptotics import (
    CaseThreeConfig,
    LimitProbe,
    high_power_heterodyne_probe,
    high_power_heterodyne_ratio,
    homodyne_asymptotic_ratio,
    homodyne_half_probe,
    low_power_alice_first_probe,
    low_power_bob_first_probe,
    low_power_simultaneous_probes,
    max_bob_scale_branch1,
    receiver_gap_probes,
)
from .gaussian_core import (
    ChannelParams,
    CovMatrix2,
    PhotonBudget,
    SqueezeFractions,
    g_entropy,
    input_covariances,
    received_photons,
    receiver_covariance,
    squeezing_cost,
)
from .network import (
    Beamsplitter,
    BeamsplitterNetwork,
    ModeEnsemble,
    canonical_network,
    mac_input_ensemble,
    mac_network,
    mc_heterodyne_rate,
    mode_transform,
    propagate,
)
from .rates import (
    Branch,
    RateBundle,
    Receiver,
    User,
    big_g11,
    big_g12,
    big_g2,
    heterodyne_sum_rate,
    homodyne_sum_rate,
    individual_rate,
    outer_bound,
    point_to_point,
    rate_bundle,
    receiver_individual_rates,
    sum_rate,
    sum_rate_capacity_coherent,
)
from .region import (
    Objective,
    Pentagon,
    RatePoint,
    RateRegion,
    SqueezeSurface,
    build_region,
    global_constraint_scan,
    optimize_squeezing,
    pentagon_at,
    squeeze_surface,
)

__version__ = "0.1.0"
