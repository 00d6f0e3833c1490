"""Single-mode Gaussian primitives: channel parameters, photon budgets,
covariance matrices and the closed-form receiver covariance.

All covariances use the vacuum = 1/4 normalization and quadratures are
never entangled (the cross covariance is identically zero for every state
this package produces).
"""

import math
from dataclasses import dataclass

from . import _kernels as kernels

VACUUM_VARIANCE = 0.25


@dataclass(frozen=True)
class ChannelParams:
    """Physical channel: two coupling transmissivities and the thermal occupation.

    ``eta1`` splits the two transmitters, ``eta2`` couples their combination
    to the environment mode, whose mean photon number is ``n_thermal``.
    """

    eta1: float
    eta2: float
    n_thermal: float

    def __post_init__(self):
        if not 0.0 <= self.eta1 <= 1.0:
            raise ValueError(f"eta1 must be in [0, 1], got {self.eta1}")
        if not 0.0 <= self.eta2 <= 1.0:
            raise ValueError(f"eta2 must be in [0, 1], got {self.eta2}")
        if not self.n_thermal >= 0.0:
            raise ValueError(f"n_thermal must be >= 0, got {self.n_thermal}")


@dataclass(frozen=True)
class PhotonBudget:
    """Per-transmitter mean photon constraints and squeezing allocations.

    Squeezing consumes sinh(r)^2 photons out of the corresponding budget;
    whatever remains is available for displacement (the derived
    ``n_alpha`` / ``n_beta``).
    """

    n_a: float
    n_b: float
    r_a: float = 0.0
    r_b: float = 0.0

    def __post_init__(self):
        if not self.n_a >= 0.0:
            raise ValueError(f"n_a must be >= 0, got {self.n_a}")
        if not self.n_b >= 0.0:
            raise ValueError(f"n_b must be >= 0, got {self.n_b}")
        if not (math.isfinite(self.r_a) and math.isfinite(self.r_b)):
            raise ValueError("squeezing parameters must be finite")
        # Raises when the squeezing cost exceeds the budget.
        kernels.displacement_photons(self.n_a, self.r_a)
        kernels.displacement_photons(self.n_b, self.r_b)

    @property
    def n_alpha(self) -> float:
        """Alice's displacement photons."""
        return kernels.displacement_photons(self.n_a, self.r_a)

    @property
    def n_beta(self) -> float:
        """Bob's displacement photons."""
        return kernels.displacement_photons(self.n_b, self.r_b)

    @property
    def is_coherent(self) -> bool:
        return self.r_a == 0.0 and self.r_b == 0.0


@dataclass(frozen=True)
class CovMatrix2:
    """2x2 quadrature covariance matrix of a single mode."""

    v11: float
    v22: float
    v12: float = 0.0

    def __post_init__(self):
        if not self.v11 > 0.0:
            raise ValueError(f"v11 must be > 0, got {self.v11}")
        if not self.v22 > 0.0:
            raise ValueError(f"v22 must be > 0, got {self.v22}")
        det = self.det
        floor = 0.0625
        if det < floor * (1.0 - 1e-9) - 1e-15:
            raise ValueError(
                f"unphysical covariance: det {det} below the uncertainty floor {floor}"
            )

    @property
    def det(self) -> float:
        return self.v11 * self.v22 - self.v12 * self.v12


@dataclass(frozen=True)
class SqueezeFractions:
    """Fractions of each budget spent on squeezing, with quadrature orientation.

    ``p`` is the squeezed share of the photon number, so the squeezing
    parameter reproducing it is sign * asinh(sqrt(p * n)).
    """

    p_a: float
    p_b: float
    sign_a: int = 1
    sign_b: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p_a <= 1.0:
            raise ValueError(f"p_a must be in [0, 1], got {self.p_a}")
        if not 0.0 <= self.p_b <= 1.0:
            raise ValueError(f"p_b must be in [0, 1], got {self.p_b}")
        if self.sign_a not in (-1, 1) or self.sign_b not in (-1, 1):
            raise ValueError("signs must be +1 or -1")

    def budget_for(self, n_a: float, n_b: float) -> PhotonBudget:
        """Photon budget realizing these fractions for the given totals."""
        r_a = self.sign_a * math.asinh(math.sqrt(self.p_a * n_a))
        r_b = self.sign_b * math.asinh(math.sqrt(self.p_b * n_b))
        return PhotonBudget(n_a, n_b, r_a, r_b)


def g_entropy(x: float) -> float:
    """Entropy in bits of a thermal state with mean photon number ``x``."""
    return kernels.g_entropy(x)


def squeezing_cost(r: float) -> float:
    """Mean photon number consumed by squeezing parameter ``r``."""
    return kernels.squeezing_cost(r)


def input_covariances(budget: PhotonBudget, params: ChannelParams):
    """Covariance matrices (X, Y, Z) of the two transmitter modes and the
    environment mode."""
    x = CovMatrix2(0.25 * math.exp(2.0 * budget.r_a), 0.25 * math.exp(-2.0 * budget.r_a))
    y = CovMatrix2(0.25 * math.exp(2.0 * budget.r_b), 0.25 * math.exp(-2.0 * budget.r_b))
    t = 0.25 * (2.0 * params.n_thermal + 1.0)
    z = CovMatrix2(t, t)
    return x, y, z


def receiver_covariance(budget: PhotonBudget, params: ChannelParams) -> CovMatrix2:
    """Covariance of the receiver mode: the transmissivity-weighted sum of
    the input covariances."""
    v1, v2 = kernels.receiver_variances(
        params.eta1, params.eta2, params.n_thermal, budget.r_a, budget.r_b
    )
    return CovMatrix2(v1, v2)


def received_photons(budget: PhotonBudget, params: ChannelParams):
    """Signal mean photon numbers (from Alice, from Bob) at the receiver."""
    return kernels.received_photon_pair(
        params.eta1, params.eta2, budget.n_a, budget.n_b, budget.r_a, budget.r_b
    )
