"""Special-function kernels: complex log-gamma, Kummer 1F1, generalized
Laguerre polynomials, and Whittaker M/W with complex second index.

Evaluation strategy for W (second index real or purely imaginary, argument
z > 0):

* z <= 40: the M/W connection formula, all magnitudes combined in log space.
  The two M terms cancel to depth ~ e^z z^{-2 kappa}; the cancellation is
  measured and, when the estimated relative error exceeds the rescue
  threshold, the value is recomputed either through the integral
  representation (when usable, see below) or in scaled-precision arithmetic.
* z > 40: the real integral representation
  W = e^{-z/2} z^kappa / Gamma(1/2-kappa+mu) * int_0^inf e^{-t} t^{mu-kappa-1/2}
  (1+t/z)^{mu+kappa-1/2} dt, valid for Re(1/2-kappa+mu) > 0.  For larger kappa
  the index is lowered to a valid base and raised back with the exact
  three-term recurrence W_{k+1} = (z-2k) W_k - ((1/2-k)^2-mu^2) W_{k-1};
  forward error is propagated and reported.  The large-z asymptotic series
  (min-term truncation) is the final compiled fallback before arbitrary
  precision.

Degenerate second index (2*mu an integer, logarithmic connection case) is
resolved by averaging two evaluations with mu shifted +/- 1e-8 in the
imaginary direction.
"""

import cmath
import math
from dataclasses import dataclass

import mpmath as _mp

from ._backend import kernels as _K
from .errors import NoConvergence, PoleError
from .quadrature import gauss_legendre

EPS = 2.220446049250313e-16

Z_SWITCH = 40.0        # connection below, integral representation above
RESCUE_EST = 1e-9      # reroute when a route's error estimate exceeds this
MP_MARGIN_DIGITS = 12

ROUTES = ("series", "connection", "asymptotic", "integral_rep")


@dataclass(frozen=True)
class EvalDiagnostics:
    terms_used: int
    est_rel_error: float
    route: str

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")
        if self.est_rel_error < 0.0:
            raise ValueError("est_rel_error must be >= 0")
        if self.route not in ROUTES:
            raise ValueError("unknown route %r" % (self.route,))


def _near_nonpositive_integer(z, tol=1e-14):
    z = complex(z)
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def log_gamma(z):
    """Principal-branch log Gamma; PoleError within 1e-14 of 0, -1, -2, ..."""
    if _near_nonpositive_integer(z):
        raise PoleError("log_gamma pole at z=%r" % (z,))
    return complex(_K.log_gamma(complex(z)))


def abs_gamma_sq(z):
    """|Gamma(z)|^2 via exp(2 Re log_gamma(z))."""
    return math.exp(2.0 * log_gamma(z).real)


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x)."""
    if n < 0:
        raise ValueError("laguerre order must be >= 0, got %d" % n)
    return _K.laguerre(int(n), float(alpha), float(x))


def _kummer_mp(a, b, z, dps):
    with _mp.workdps(dps):
        a = _mp.mpc(a)
        b = _mp.mpc(b)
        z = _mp.mpf(z)
        term = _mp.mpc(1)
        s = _mp.mpc(1)
        tol = _mp.mpf(10) ** (-dps)
        k = 0
        while k < 200000:
            term *= (a + k) * z / ((b + k) * (k + 1))
            s += term
            k += 1
            if abs(term) <= tol * abs(s):
                break
        return s, k + 1


def kummer_1f1(a, b, z):
    """Confluent hypergeometric 1F1(a; b; z), real z, complex a and b.

    Straight Taylor summation with a cancellation guard: when the running
    partial sums exceed the final value by more than 1e8 the result keeps a
    flagged est_rel_error, and beyond ~1e5 of cancellation the sum is redone
    in scaled precision (the route stays "series").
    """
    a = complex(a)
    b = complex(b)
    z = float(z)
    if _near_nonpositive_integer(b):
        raise PoleError("1F1 undefined for b a nonpositive integer: b=%r" % (b,))
    val, terms, cancel = _K.kummer_series(a, b, z)
    if terms < 0:
        raise NoConvergence("1F1 series exceeded %d terms" % (-terms), best=val)
    est = EPS * (cancel + terms)
    if est > 1e-11:
        digits_lost = max(0.0, math.log10(cancel))
        dps = int(17 + digits_lost + MP_MARGIN_DIGITS)
        s, terms = _kummer_mp(a, b, z, dps)
        val = complex(s)
        est = max(10.0 ** (-(dps - digits_lost - 2)), EPS * terms)
    return val, EvalDiagnostics(terms, est, "series")


def whittaker_m(kappa, mu, z):
    """Whittaker M_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} 1F1(mu-kappa+1/2; 1+2mu; z).

    z > 0; z^{mu+1/2} uses the principal branch exp((mu+1/2) ln z).
    """
    kappa = float(kappa)
    mu = complex(mu)
    z = float(z)
    if z <= 0.0:
        raise ValueError("whittaker_m needs z > 0, got %g" % z)
    f, diag = kummer_1f1(mu - kappa + 0.5, 1.0 + 2.0 * mu, z)
    val = cmath.exp(-0.5 * z + (mu + 0.5) * math.log(z)) * f
    return val, diag


def _is_degenerate_mu(mu):
    two_mu = 2.0 * complex(mu)
    return abs(two_mu.imag) < 1e-7 and abs(two_mu.real - round(two_mu.real)) < 1e-7


def _connection_term(kappa, s, z, mval):
    # Gamma(-2s)/Gamma(1/2-kappa-s) * z^{s+1/2} e^{-z/2} * 1F1, in log space.
    lg_num = _K.log_gamma(-2.0 * s)
    try:
        lg_den = log_gamma(0.5 - kappa - s)
    except PoleError:
        return 0.0 + 0.0j  # 1/Gamma(pole) = 0: this branch drops out
    log_pref = lg_num - lg_den + (s + 0.5) * math.log(z) - 0.5 * z
    return cmath.exp(log_pref) * mval


def _w_connection_fast(kappa, mu, z):
    """Connection-formula W in double precision: (value, est, terms)."""
    terms_total = 0
    parts = []
    for s in (mu, -mu):
        mval, terms, cancel = _K.kummer_series(s - kappa + 0.5, 1.0 + 2.0 * s, z)
        if terms < 0:
            raise NoConvergence("1F1 series exceeded %d terms" % (-terms), best=mval)
        terms_total += terms
        parts.append((_connection_term(kappa, s, z, mval), EPS * (cancel + 8.0)))
    w = parts[0][0] + parts[1][0]
    mag = abs(w)
    if mag == 0.0:
        return w, 1.0, terms_total
    abs_err = parts[0][1] * abs(parts[0][0]) + parts[1][1] * abs(parts[1][0]) + EPS * mag
    return w, abs_err / mag, terms_total


def _w_connection_mp(kappa, mu, z, digits_lost):
    """Connection formula in scaled-precision arithmetic (mpmath backend).

    Same formula and same series; precision is sized from the measured
    cancellation depth so ~10 good digits survive the subtraction.
    """
    dps = int(17 + max(0.0, digits_lost) + MP_MARGIN_DIGITS)
    with _mp.workdps(dps):
        mu_mp = _mp.mpc(mu)
        z_mp = _mp.mpf(z)
        total = _mp.mpc(0)
        max_mag = _mp.mpf(0)
        terms_total = 0
        for s in (mu_mp, -mu_mp):
            a = s - kappa + _mp.mpf(1) / 2
            b = 1 + 2 * s
            f, terms = _kummer_mp(a, b, z_mp, dps)
            terms_total += terms
            lg_num = _mp.loggamma(-2 * s)
            lg_den = _mp.loggamma(_mp.mpf(1) / 2 - kappa - s)
            term = _mp.e ** (lg_num - lg_den + (s + _mp.mpf(1) / 2) * _mp.log(z_mp)
                             - z_mp / 2) * f
            total += term
            max_mag = max(max_mag, abs(term))
        lost = _mp.log10(max_mag / abs(total)) if abs(total) > 0 else _mp.mpf(0)
        est = 10.0 ** -(dps - float(lost) - 2.0)
        return complex(total), max(est, 1e-15), terms_total


def _w_connection(kappa, mu, z, escalate, _check_degenerate=True):
    if _check_degenerate and _is_degenerate_mu(mu):
        va, ea, ta = _w_connection(kappa, mu + 1e-8j, z, escalate, False)
        vb, eb, tb = _w_connection(kappa, mu - 1e-8j, z, escalate, False)
        return 0.5 * (va + vb), max(ea, eb) + 1e-14, ta + tb
    val, est, terms = _w_connection_fast(kappa, mu, z)
    if escalate and est > RESCUE_EST:
        digits_lost = max(0.0, math.log10(max(est, EPS) / EPS))
        val, est, terms = _w_connection_mp(kappa, mu, z, digits_lost)
    return val, est, terms


def _w_integral(kappa, mu, z):
    """Integral-representation W, lowering kappa to a valid base if needed.

    Returns (value, est, evals).  est includes forward error growth through
    the kappa-raising recurrence.
    """
    mu = complex(mu)
    nodes, weights = gauss_legendre(32)
    m = max(0, math.ceil(kappa - mu.real - 0.25))
    kb = kappa - m

    def base(kap):
        s = mu - kap + 0.5
        c = mu + kap - 0.5
        ival, ierr, evals = _K.u_integral(s, c, z, nodes, weights)
        lg = _K.log_gamma(s)
        val = cmath.exp(-0.5 * z + kap * math.log(z) - lg) * ival
        return val, abs(val) * (ierr + 4.0 * EPS), evals

    if m == 0:
        val, abs_err, evals = base(kappa)
        mag = abs(val)
        return val, abs_err / mag if mag > 0 else 0.0, evals

    w0, e0, ev0 = base(kb - 1.0)
    w1, e1, ev1 = base(kb)
    evals = ev0 + ev1
    for j in range(m):
        kj = kb + j
        coef = (0.5 - kj) ** 2 - mu * mu
        w2 = (z - 2.0 * kj) * w1 - coef * w0
        e2 = abs(z - 2.0 * kj) * e1 + abs(coef) * e0 + EPS * abs(w2)
        w0, w1 = w1, w2
        e0, e1 = e1, e2
    mag = abs(w1)
    return w1, e1 / mag if mag > 0 else 1.0, evals


def _w_asymptotic(kappa, mu, z):
    val, est, terms = _K.w_asymptotic(float(kappa), complex(mu), float(z))
    return complex(val), float(est), int(terms)


def _w_auto(kappa, mu, z):
    # Below the turning point z ~ 2|Im mu| the two connection terms have
    # comparable moduli and no exponential cancellation: the connection
    # formula stays usable in double precision well past Z_SWITCH there.
    if z <= Z_SWITCH or z <= 2.2 * abs(mu.imag):
        val, est, terms = _w_connection(kappa, mu, z, escalate=False)
        if est <= RESCUE_EST:
            return val, est, terms, "connection"
        ival, iest, ievals = _w_integral(kappa, mu, z)
        if iest <= RESCUE_EST:
            return ival, iest, ievals, "integral_rep"
        if z <= Z_SWITCH:
            val, est, terms = _w_connection(kappa, mu, z, escalate=True)
            return val, est, terms, "connection"
    else:
        ival, iest, ievals = _w_integral(kappa, mu, z)
        if iest <= RESCUE_EST:
            return ival, iest, ievals, "integral_rep"
    aval, aest, aterms = _w_asymptotic(kappa, mu, z)
    if aest <= RESCUE_EST:
        return aval, aest, aterms, "asymptotic"
    if aest <= iest:
        best = (aval, aest, aterms, "asymptotic")
    else:
        best = (ival, iest, ievals, "integral_rep")
    # est up to ~1e-4 is tolerated here: it only happens deep in the W decay
    # zone (z > 40 with |Im mu|^2 ~ z) where downstream weights are tiny
    if best[1] > 3e-4:
        digits_lost = (z - 2.0 * kappa * math.log(z)) / math.log(10.0)
        val, est, terms = _w_connection_mp(kappa, mu, z, digits_lost)
        return val, est, terms, "connection"
    return best


def whittaker_w_complex(kappa, mu, z, method="auto"):
    """Whittaker W for general complex second index (resolvent plumbing).

    Returns (complex value, EvalDiagnostics).  method: auto | connection |
    integral | asymptotic.
    """
    kappa = float(kappa)
    mu = complex(mu)
    z = float(z)
    if z <= 0.0:
        raise ValueError("whittaker_w needs z > 0, got %g" % z)
    if method == "auto":
        val, est, terms, route = _w_auto(kappa, mu, z)
    elif method == "connection":
        val, est, terms = _w_connection(kappa, mu, z, escalate=True)
        route = "connection"
    elif method == "integral":
        val, est, terms = _w_integral(kappa, mu, z)
        route = "integral_rep"
    elif method == "asymptotic":
        val, est, terms = _w_asymptotic(kappa, mu, z)
        route = "asymptotic"
    else:
        raise ValueError("unknown method %r" % (method,))
    return val, EvalDiagnostics(max(terms, 1), est, route)


def whittaker_w(kappa, mu, z, method="auto"):
    """Real-valued Whittaker W for mu real or purely imaginary.

    Returns (float, EvalDiagnostics); an imaginary residue above 1e-10
    relative raises the reported est_rel_error (the value is still the real
    part).
    """
    val, diag = whittaker_w_complex(kappa, mu, z, method=method)
    mag = abs(val)
    im_resid = abs(val.imag) / mag if mag > 0.0 else 0.0
    if im_resid > 1e-10:
        diag = EvalDiagnostics(diag.terms_used, max(diag.est_rel_error, im_resid),
                               diag.route)
    return val.real, diag
