"""Pure-Python scalar kernels (fallback twin of the compiled extension).

Every function here has an identical signature in ``_kernels_c``; the active
backend is chosen once in ``_backend``.  Keep the two files in lockstep.

Conventions:
  * complex in, complex out; no numpy in the hot path
  * functions return raw values plus cheap diagnostics (term counts,
    cancellation ratios); policy (routing, error types) lives one layer up
"""

import cmath
import math

EPS = 2.220446049250313e-16

_LOG_2PI_HALF = 0.9189385332046727417803297  # ln(2*pi)/2
_LOG_PI = 1.1447298858494001741434273

# Bernoulli-number coefficients B_{2n}/(2n*(2n-1)) for the Stirling series.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

_SHIFT_RADIUS = 13.0


def _log_sin_pi(z):
    # ln sin(pi z) for Im z >= 0, with the real part reduced so that large
    # |Re z| does not destroy precision.  The imaginary branch is chosen so
    # that exp() of the result is exact; callers never rely on the branch.
    m = math.floor(z.real + 0.5)
    w = z - m
    if z.imag > 40.0:
        # sin(pi w) ~ -e^{-i pi w} (e^{2 i pi w} - 1) / (2i), |e^{2 i pi w}| tiny
        small = cmath.exp(2j * cmath.pi * w)
        res = -1j * cmath.pi * w - cmath.log(2j) + 1j * cmath.pi + small
    else:
        res = cmath.log(cmath.sin(cmath.pi * w))
    if m & 1:
        res += 1j * cmath.pi
    return res


def log_gamma(z):
    """Principal-branch log Gamma via Stirling with recurrence shift.

    Right half-plane (Re z >= 0.5) is genuinely principal; for Re z < 0.5 the
    reflection formula is used and exp(result) equals Gamma(z) exactly while
    the imaginary part may differ from the canonical continuation by 2*pi*k.
    """
    z = complex(z)
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    if z.real < 0.5:
        return _LOG_PI - _log_sin_pi(z) - log_gamma(1.0 - z)
    shift = 0.0 + 0.0j
    w = z
    while abs(w) < _SHIFT_RADIUS:
        shift += cmath.log(w)
        w += 1.0
    res = (w - 0.5) * cmath.log(w) - w + _LOG_2PI_HALF
    w2 = w * w
    winv = 1.0 / w
    for c in _STIRLING:
        res += c * winv
        winv /= w2
    return res - shift


def kummer_series(a, b, z, tol=1e-16, max_terms=100000):
    """Taylor series of 1F1(a; b; z) for real z, complex a, b.

    Returns (value, terms_used, cancel) where cancel = max |partial sum|
    divided by |final sum| -- the observable for catastrophic cancellation.
    terms_used < 0 signals that max_terms was exhausted (caller raises).
    """
    a = complex(a)
    b = complex(b)
    term = 1.0 + 0.0j
    s = term
    max_mag = 1.0
    small_run = 0
    k = 0
    while k < max_terms:
        term *= (a + k) * z / ((b + k) * (k + 1))
        s += term
        k += 1
        mag = abs(s)
        if mag > max_mag:
            max_mag = mag
        if abs(term) <= tol * mag:
            small_run += 1
            if small_run >= 2:
                cancel = max_mag / mag if mag > 0.0 else math.inf
                return s, k + 1, cancel
        else:
            small_run = 0
    return s, -(k + 1), max_mag / abs(s) if abs(s) > 0.0 else math.inf


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x), three-term recurrence."""
    if n == 0:
        return 1.0
    lkm1 = 1.0
    lk = 1.0 + alpha - x
    for k in range(1, n):
        lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0)
        lkm1 = lk
        lk = lkp1
    return lk


def w_asymptotic(kappa, mu, z):
    """Large-z expansion W ~ e^{-z/2} z^kappa * sum_s t_s, truncated at the
    globally smallest term (terms may grow before shrinking when |mu|^2 > z).

    Returns (value, est_rel_error, terms).  est is the smallest term relative
    to the truncated sum, plus the cancellation floor of the alternating sum.
    """
    mu = complex(mu)
    mu2 = mu * mu
    term = 1.0 + 0.0j
    s = term
    max_mag = 1.0
    prev = 1.0
    best_s = s
    best_t = 1.0
    best_terms = 1
    grow = 0
    for j in range(1, 400):
        term *= -((j - 0.5 - kappa) * (j - 0.5 - kappa) - mu2) / (j * z)
        t = abs(term)
        s += term
        mag = abs(s)
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
    mag = abs(best_s)
    if mag == 0.0:
        return 0.0 + 0.0j, 1.0, best_terms
    est = best_t / mag + EPS * max_mag / mag
    pref = cmath.exp(-0.5 * z + kappa * math.log(z))
    return pref * best_s, est, best_terms


def u_integral(s, c, z, nodes, weights):
    """I(s,c,z) = int_0^inf e^{-t} t^{s-1} (1+t/z)^c dt, Re s > 0, z > 0.

    [0,1]: power-series coefficients integrated exactly against t^{s-1}.
    [1,T]: geometric panels, Gauss-Legendre with phase-driven subdivision.
    nodes/weights: base GL rule on [0,1].  Returns (value, est, evals).
    """
    s = complex(s)
    c = complex(c)
    # series part on [0,1]: e^{-t} (1+t/z)^c = sum d_j t^j
    nser = 30
    e_coef = [0.0] * nser
    e_coef[0] = 1.0
    for i in range(1, nser):
        e_coef[i] = -e_coef[i - 1] / i
    b_coef = [0.0 + 0.0j] * nser
    b_coef[0] = 1.0 + 0.0j
    for m in range(1, nser):
        b_coef[m] = b_coef[m - 1] * (c - (m - 1)) / (m * z)
    part_a = 0.0 + 0.0j
    tail_a = 0.0
    mag_acc = 0.0  # sum of |contributions|: oscillatory-cancellation observable
    for j in range(nser):
        dj = 0.0 + 0.0j
        for m in range(j + 1):
            dj += e_coef[j - m] * b_coef[m]
        contrib = dj / (s + j)
        part_a += contrib
        mag_acc += abs(contrib)
        if j == nser - 1:
            tail_a = abs(contrib)
    total = part_a
    evals = 0
    est = tail_a
    # panel part on [1, T]
    t_lo = 1.0
    im_s = abs(s.imag)
    im_c = abs(c.imag)
    for _ in range(60):
        t_hi = 2.0 * t_lo
        # phase swing of t^{s-1} (1+t/z)^c across the panel
        phase = im_s * math.log(t_hi / t_lo) + im_c * (
            math.log1p(t_hi / z) - math.log1p(t_lo / z)
        )
        nsub = 1 + int(phase / 20.0)
        width = (t_hi - t_lo) / nsub
        panel = 0.0 + 0.0j
        for isub in range(nsub):
            a0 = t_lo + isub * width
            for x, w in zip(nodes, weights):
                t = a0 + width * x
                f = cmath.exp(-t + (s - 1.0) * math.log(t) + c * math.log1p(t / z))
                panel += (w * width) * f
                mag_acc += abs(w * width * f)
                evals += 1
        total += panel
        # tail bound: integrand decays at least like e^{-t} t^{Re s - 1} out here
        bound = math.exp(-t_hi + (s.real - 1.0) * math.log(t_hi)) * max(
            1.0, (1.0 + t_hi / z) ** c.real
        )
        t_lo = t_hi
        if bound < 1e-18 * abs(total) + 1e-300:
            est += bound
            break
    mag = max(abs(total), 1e-300)
    return total, est / mag + EPS * (mag_acc / mag + 4.0), evals
