# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; keep in lockstep with _kernels_py.py.

Same functions, same signatures, same numerics -- only faster.  The Python
twin is the reference; any change lands there first.
"""

import cython

from libc.math cimport exp, floor, log, log1p, sqrt, INFINITY

cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double complex clog(double complex) nogil
    double complex csin(double complex) nogil
    double complex conj(double complex) nogil
    double cabs(double complex) nogil
    double cimag(double complex) nogil
    double creal(double complex) nogil

DEF EPS_C = 2.220446049250313e-16
DEF LOG_2PI_HALF = 0.9189385332046727417803297
DEF LOG_PI = 1.1447298858494001741434273
DEF PI = 3.14159265358979323846264338
DEF SHIFT_RADIUS = 13.0

EPS = EPS_C

cdef double[10] _STIRLING
_STIRLING[0] = 1.0 / 12.0
_STIRLING[1] = -1.0 / 360.0
_STIRLING[2] = 1.0 / 1260.0
_STIRLING[3] = -1.0 / 1680.0
_STIRLING[4] = 1.0 / 1188.0
_STIRLING[5] = -691.0 / 360360.0
_STIRLING[6] = 1.0 / 156.0
_STIRLING[7] = -3617.0 / 122400.0
_STIRLING[8] = 43867.0 / 244188.0
_STIRLING[9] = -174611.0 / 125400.0


cdef double complex _log_sin_pi(double complex z) nogil:
    cdef double m = floor(creal(z) + 0.5)
    cdef double complex w = z - m
    cdef double complex res, small
    if cimag(z) > 40.0:
        small = cexp(2j * PI * w)
        res = -1j * PI * w - clog(2j + 0.0) + 1j * PI + small
    else:
        res = clog(csin(PI * w))
    if (<long long> m) & 1:
        res = res + 1j * PI
    return res


cdef double complex _log_gamma_c(double complex z) nogil:
    cdef double complex shift, w, res, winv, w2
    cdef int i
    if cimag(z) < 0.0:
        return conj(_log_gamma_c(conj(z)))
    if creal(z) < 0.5:
        return LOG_PI - _log_sin_pi(z) - _log_gamma_c(1.0 - z)
    shift = 0.0
    w = z
    while cabs(w) < SHIFT_RADIUS:
        shift = shift + clog(w)
        w = w + 1.0
    res = (w - 0.5) * clog(w) - w + LOG_2PI_HALF
    w2 = w * w
    winv = 1.0 / w
    for i in range(10):
        res = res + _STIRLING[i] * winv
        winv = winv / w2
    return res - shift


def log_gamma(z):
    """Principal-branch log Gamma (see the Python twin for branch caveats)."""
    return _log_gamma_c(z)


def kummer_series(a, b, double z, double tol=1e-16, long max_terms=100000):
    """1F1 Taylor series: (value, terms_used, cancel); terms_used<0 = budget hit."""
    cdef double complex ac = a
    cdef double complex bc = b
    cdef double complex term = 1.0
    cdef double complex s = 1.0
    cdef double max_mag = 1.0
    cdef double mag
    cdef int small_run = 0
    cdef long k = 0
    while k < max_terms:
        term = term * ((ac + k) * z) / ((bc + k) * (k + 1.0))
        s = s + term
        k += 1
        mag = cabs(s)
        if mag > max_mag:
            max_mag = mag
        if cabs(term) <= tol * mag:
            small_run += 1
            if small_run >= 2:
                return s, k + 1, (max_mag / mag if mag > 0.0 else INFINITY)
        else:
            small_run = 0
    mag = cabs(s)
    return s, -(k + 1), (max_mag / mag if mag > 0.0 else INFINITY)


def laguerre(long n, double alpha, double x):
    """Generalized Laguerre polynomial L_n^alpha(x), three-term recurrence."""
    cdef double lkm1, lk, lkp1
    cdef long k
    if n == 0:
        return 1.0
    lkm1 = 1.0
    lk = 1.0 + alpha - x
    for k in range(1, n):
        lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0)
        lkm1 = lk
        lk = lkp1
    return lk


def w_asymptotic(double kappa, mu, double z):
    """Large-z W expansion truncated at the globally smallest term
    (terms may grow before shrinking when |mu|^2 > z): (value, est, terms)."""
    cdef double complex muc = mu
    cdef double complex mu2 = muc * muc
    cdef double complex term = 1.0
    cdef double complex s = 1.0
    cdef double complex best_s = 1.0
    cdef double max_mag = 1.0
    cdef double prev = 1.0
    cdef double best_t = 1.0
    cdef double t, mag, est
    cdef int best_terms = 1
    cdef int grow = 0
    cdef int j
    for j in range(1, 400):
        term = term * (-((j - 0.5 - kappa) * (j - 0.5 - kappa) - mu2) / (j * z))
        t = cabs(term)
        s = s + term
        mag = cabs(s)
        if mag > max_mag:
            max_mag = mag
        if t < best_t:
            best_t = t
            best_s = s
            best_terms = j + 1
        if t <= 1e-18 * mag:
            break
        grow = grow + 1 if t >= prev else 0
        if grow >= 2 and t > 100.0 * best_t:
            break
        prev = t
    mag = cabs(best_s)
    if mag == 0.0:
        return 0.0 + 0.0j, 1.0, best_terms
    est = best_t / mag + EPS_C * max_mag / mag
    return cexp(-0.5 * z + kappa * log(z)) * best_s, est, best_terms


def u_integral(s, c, double z, nodes, weights):
    """I(s,c,z) = int_0^inf e^{-t} t^{s-1} (1+t/z)^c dt: (value, est, evals)."""
    cdef double complex sc = s
    cdef double complex cc = c
    cdef int nser = 30
    cdef double[30] e_coef
    cdef double complex[30] b_coef
    cdef double complex part_a = 0.0, dj, contrib, total, panel, f
    cdef double tail_a = 0.0, est, bound, t_lo, t_hi, phase, width, a0, t
    cdef double mag_acc = 0.0, mag
    cdef int i, j, m, isub, nsub, evals = 0
    cdef int nq = len(nodes)
    cdef double[64] xs
    cdef double[64] ws
    if nq > 64:
        raise ValueError("base rule limited to 64 nodes")
    for i in range(nq):
        xs[i] = nodes[i]
        ws[i] = weights[i]
    e_coef[0] = 1.0
    for i in range(1, nser):
        e_coef[i] = -e_coef[i - 1] / i
    b_coef[0] = 1.0
    for m in range(1, nser):
        b_coef[m] = b_coef[m - 1] * (cc - (m - 1.0)) / (m * z)
    for j in range(nser):
        dj = 0.0
        for m in range(j + 1):
            dj = dj + e_coef[j - m] * b_coef[m]
        contrib = dj / (sc + j)
        part_a = part_a + contrib
        mag_acc += cabs(contrib)
        if j == nser - 1:
            tail_a = cabs(contrib)
    total = part_a
    est = tail_a
    t_lo = 1.0
    cdef double im_s = abs(cimag(sc))
    cdef double im_c = abs(cimag(cc))
    cdef double re_s = creal(sc)
    cdef double re_c = creal(cc)
    for j in range(60):
        t_hi = 2.0 * t_lo
        phase = im_s * log(t_hi / t_lo) + im_c * (log1p(t_hi / z) - log1p(t_lo / z))
        nsub = 1 + <int> (phase / 20.0)
        width = (t_hi - t_lo) / nsub
        panel = 0.0
        for isub in range(nsub):
            a0 = t_lo + isub * width
            for i in range(nq):
                t = a0 + width * xs[i]
                f = cexp(-t + (sc - 1.0) * log(t) + cc * log1p(t / z))
                panel = panel + (ws[i] * width) * f
                mag_acc += cabs((ws[i] * width) * f)
                evals += 1
        total = total + panel
        bound = exp(-t_hi + (re_s - 1.0) * log(t_hi))
        if re_c > 0.0:
            bound *= (1.0 + t_hi / z) ** re_c
        t_lo = t_hi
        if bound < 1e-18 * cabs(total) + 1e-300:
            est += bound
            break
    mag = max(cabs(total), 1e-300)
    return total, est / mag + EPS_C * (mag_acc / mag + 4.0), evals
