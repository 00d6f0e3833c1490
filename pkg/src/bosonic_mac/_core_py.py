"""Pure-Python scalar kernels for the rate formulas.

This module is the fallback twin of the compiled extension
``bosonic_mac._core``; ``bosonic_mac._kernels`` picks one of the two at
import time.  Both implementations must stay in lockstep function for
function (``tests/test_backends.py`` enforces agreement on random inputs).

Conventions used throughout:

* vacuum quadrature variance is 1/4,
* all rates are in bits,
* squeezing parameters are signed, positive r inflates the first
  quadrature variance by exp(2r).
"""

import math

BACKEND = "python"

_LN2 = math.log(2.0)
_NEG_TOL = 1e-12


def g_entropy(x):
    """Entropy in bits of a thermal state with mean photon number ``x``.

    g(x) = (1+x) log2(1+x) - x log2(x), evaluated in the rearranged form
    log2(1+x) + x log2(1+1/x) which stays accurate for both tiny and very
    large arguments.
    """
    if x < -_NEG_TOL:
        raise ValueError(f"mean photon number must be >= 0, got {x}")
    if x < 1e-300:
        return 0.0
    return (math.log1p(x) + x * math.log1p(1.0 / x)) / _LN2


def squeezing_cost(r):
    """Photons consumed by squeezing parameter ``r``: cosh(2r)/2 - 1/2 = sinh(r)^2."""
    s = math.sinh(r)
    return s * s


def displacement_photons(n, r):
    """Photons left for displacement out of a budget ``n`` after squeezing by ``r``."""
    cost = squeezing_cost(r)
    if cost > n * (1.0 + 1e-9) + 1e-12:
        raise ValueError(
            f"squeezing cost {cost} exceeds the photon budget {n}"
        )
    rest = n - cost
    return rest if rest > 0.0 else 0.0


def receiver_variances(eta1, eta2, n_thermal, r_a, r_b):
    """Quadrature variances (V1, V2) of the mode arriving at the receiver."""
    t = (1.0 - eta2) * (2.0 * n_thermal + 1.0)
    wa = eta1 * eta2
    wb = (1.0 - eta1) * eta2
    v1 = 0.25 * (wa * math.exp(2.0 * r_a) + wb * math.exp(2.0 * r_b) + t)
    v2 = 0.25 * (wa * math.exp(-2.0 * r_a) + wb * math.exp(-2.0 * r_b) + t)
    return v1, v2


def received_photon_pair(eta1, eta2, n_a, n_b, r_a, r_b):
    """Signal mean photon numbers reaching the receiver from each transmitter."""
    nca = eta1 * eta2 * displacement_photons(n_a, r_a)
    ncb = (1.0 - eta1) * eta2 * displacement_photons(n_b, r_b)
    return nca, ncb


def big_g11_raw(n, v1, v2):
    return g_entropy(v1 + v2 + n - 0.5)


def _g12_arg(n, v1, v2, v12):
    # Difference of squares factored exactly; avoids cancellation when n
    # dwarfs the variances.  Both factors are positive because
    # (v1+v2)/2 exceeds sqrt(((v1-v2)/2)^2 + v12^2) whenever det > 0.
    half_sum = 0.5 * (v1 + v2)
    s = math.hypot(0.5 * (v1 - v2), v12)
    inner = (half_sum + n - s) * (half_sum + s)
    return 2.0 * math.sqrt(inner) - 0.5


def big_g12_raw(n, v1, v2, v12):
    return g_entropy(_g12_arg(n, v1, v2, v12))


def big_g2_raw(v1, v2, v12):
    det = v1 * v2 - v12 * v12
    return g_entropy(2.0 * math.sqrt(det) - 0.5)


def _piecewise(n, v1, v2, v12, g2):
    # Ties go to the full-signal branch; the two branches agree there.
    if n >= math.hypot(v1 - v2, 2.0 * v12):
        rate = big_g11_raw(n, v1, v2) - g2
        branch = 1
    else:
        rate = big_g12_raw(n, v1, v2, v12) - g2
        branch = 2
    return (rate if rate > 0.0 else 0.0), branch


def piecewise_rate(n, v1, v2, v12):
    """Holevo-limit rate for ``n`` received signal photons on a Gaussian mode.

    Returns ``(bits, branch)`` where branch 1 means the received signal
    dominated the variance asymmetry and branch 2 the opposite.
    """
    return _piecewise(n, v1, v2, v12, big_g2_raw(v1, v2, v12))


def rate_triple(eta1, eta2, n_thermal, n_a, n_b, r_a, r_b):
    """Individual and sum rates in one pass.

    Returns ``(r_a_max, branch_a, r_b_max, branch_b, r_ab_max, branch_ab)``.
    """
    v1, v2 = receiver_variances(eta1, eta2, n_thermal, r_a, r_b)
    nca, ncb = received_photon_pair(eta1, eta2, n_a, n_b, r_a, r_b)
    g2 = big_g2_raw(v1, v2, 0.0)
    ra, br_a = _piecewise(nca, v1, v2, 0.0, g2)
    rb, br_b = _piecewise(ncb, v1, v2, 0.0, g2)
    rab, br_ab = _piecewise(nca + ncb, v1, v2, 0.0, g2)
    return ra, br_a, rb, br_b, rab, br_ab


def point_to_point_raw(x, y):
    """Capacity g(x+y) - g(y) of a one-way channel with thermal floor ``y``."""
    rate = g_entropy(x + y) - g_entropy(y)
    return rate if rate > 0.0 else 0.0


def homodyne_rate_raw(eta1, eta2, n_thermal, n_alpha, n_beta, r_a, r_b):
    """Single-quadrature detection rate for displacement photons (n_alpha, n_beta)."""
    wb = (1.0 - eta1) / eta1
    num = 4.0 * (n_alpha + wb * n_beta)
    den = (
        math.exp(2.0 * r_a)
        + wb * math.exp(2.0 * r_b)
        + (1.0 - eta2) * (1.0 + 2.0 * n_thermal) / (eta1 * eta2)
    )
    return 0.5 * math.log1p(num / den) / _LN2


def heterodyne_rate_raw(eta1, eta2, n_thermal, n_a, n_b):
    """Dual-quadrature detection rate for coherent inputs."""
    noise = 1.0 + (1.0 - eta2) * (1.0 + 2.0 * n_thermal) / eta2
    return math.log1p((eta1 * n_a + (1.0 - eta1) * n_b) / noise) / _LN2
