# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled scalar kernels; twin of ``bosonic_mac._core_py``.

Keep both implementations in lockstep function for function.
"""

from libc.math cimport exp, fabs, hypot, log1p, sinh, sqrt

BACKEND = "cython"

cdef double _LN2 = 0.69314718055994530942
cdef double _NEG_TOL = 1e-12


cdef inline double _g(double x) except -1.0:
    if x < -_NEG_TOL:
        raise ValueError(f"mean photon number must be >= 0, got {x}")
    if x < 1e-300:
        return 0.0
    return (log1p(x) + x * log1p(1.0 / x)) / _LN2


cdef inline double _displacement(double n, double r) except -1.0:
    cdef double s = sinh(r)
    cdef double cost = s * s
    if cost > n * (1.0 + 1e-9) + 1e-12:
        raise ValueError(f"squeezing cost {cost} exceeds the photon budget {n}")
    cdef double rest = n - cost
    return rest if rest > 0.0 else 0.0


cdef inline double _g12_arg(double n, double v1, double v2, double v12):
    # Difference of squares factored exactly to avoid cancellation at large n.
    cdef double half_sum = 0.5 * (v1 + v2)
    cdef double s = hypot(0.5 * (v1 - v2), v12)
    cdef double inner = (half_sum + n - s) * (half_sum + s)
    return 2.0 * sqrt(inner) - 0.5


cdef inline double _g2(double v1, double v2, double v12) except -1.0:
    cdef double det = v1 * v2 - v12 * v12
    return _g(2.0 * sqrt(det) - 0.5)


def g_entropy(double x):
    """Entropy in bits of a thermal state with mean photon number ``x``."""
    return _g(x)


def squeezing_cost(double r):
    cdef double s = sinh(r)
    return s * s


def displacement_photons(double n, double r):
    return _displacement(n, r)


def receiver_variances(double eta1, double eta2, double n_thermal,
                       double r_a, double r_b):
    cdef double t = (1.0 - eta2) * (2.0 * n_thermal + 1.0)
    cdef double wa = eta1 * eta2
    cdef double wb = (1.0 - eta1) * eta2
    cdef double v1 = 0.25 * (wa * exp(2.0 * r_a) + wb * exp(2.0 * r_b) + t)
    cdef double v2 = 0.25 * (wa * exp(-2.0 * r_a) + wb * exp(-2.0 * r_b) + t)
    return v1, v2


def received_photon_pair(double eta1, double eta2, double n_a, double n_b,
                         double r_a, double r_b):
    cdef double nca = eta1 * eta2 * _displacement(n_a, r_a)
    cdef double ncb = (1.0 - eta1) * eta2 * _displacement(n_b, r_b)
    return nca, ncb


def big_g11_raw(double n, double v1, double v2):
    return _g(v1 + v2 + n - 0.5)


def big_g12_raw(double n, double v1, double v2, double v12):
    return _g(_g12_arg(n, v1, v2, v12))


def big_g2_raw(double v1, double v2, double v12):
    return _g2(v1, v2, v12)


cdef inline (double, int) _piecewise(double n, double v1, double v2,
                                     double v12, double g2) except *:
    cdef double rate
    cdef int branch
    if n >= hypot(v1 - v2, 2.0 * v12):
        rate = _g(v1 + v2 + n - 0.5) - g2
        branch = 1
    else:
        rate = _g(_g12_arg(n, v1, v2, v12)) - g2
        branch = 2
    return (rate if rate > 0.0 else 0.0), branch


def piecewise_rate(double n, double v1, double v2, double v12):
    cdef double rate
    cdef int branch
    rate, branch = _piecewise(n, v1, v2, v12, _g2(v1, v2, v12))
    return rate, branch


def rate_triple(double eta1, double eta2, double n_thermal, double n_a,
                double n_b, double r_a, double r_b):
    cdef double v1, v2, nca, ncb, g2, ra, rb, rab
    cdef int br_a, br_b, br_ab
    v1, v2 = receiver_variances(eta1, eta2, n_thermal, r_a, r_b)
    nca = eta1 * eta2 * _displacement(n_a, r_a)
    ncb = (1.0 - eta1) * eta2 * _displacement(n_b, r_b)
    g2 = _g2(v1, v2, 0.0)
    ra, br_a = _piecewise(nca, v1, v2, 0.0, g2)
    rb, br_b = _piecewise(ncb, v1, v2, 0.0, g2)
    rab, br_ab = _piecewise(nca + ncb, v1, v2, 0.0, g2)
    return ra, br_a, rb, br_b, rab, br_ab


def point_to_point_raw(double x, double y):
    cdef double rate = _g(x + y) - _g(y)
    return rate if rate > 0.0 else 0.0


def homodyne_rate_raw(double eta1, double eta2, double n_thermal,
                      double n_alpha, double n_beta, double r_a, double r_b):
    cdef double wb = (1.0 - eta1) / eta1
    cdef double num = 4.0 * (n_alpha + wb * n_beta)
    cdef double den = (
        exp(2.0 * r_a)
        + wb * exp(2.0 * r_b)
        + (1.0 - eta2) * (1.0 + 2.0 * n_thermal) / (eta1 * eta2)
    )
    return 0.5 * log1p(num / den) / _LN2


def heterodyne_rate_raw(double eta1, double eta2, double n_thermal,
                        double n_a, double n_b):
    cdef double noise = 1.0 + (1.0 - eta2) * (1.0 + 2.0 * n_thermal) / eta2
    return log1p((eta1 * n_a + (1.0 - eta1) * n_b) / noise) / _LN2
