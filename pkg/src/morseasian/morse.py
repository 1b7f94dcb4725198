"""Morse-potential Schroedinger operator: bound states, delta-normalized
continuum states, resolvent kernel, and spectral reconstruction.

The potential is V(x) = kappa^2 (e^{-2(x-x0)} - 2 e^{-(x-x0)}), kappa > 0.
Under u = 2 kappa e^{-(x-x0)} the eigenvalue problem becomes the Whittaker
equation; bound states reduce to Laguerre polynomials, continuum states to
W_{kappa, i sqrt(lambda)}.
"""

import cmath
import math
from dataclasses import dataclass

from . import specfun as sf
from ._backend import kernels as _K
from .errors import QuadratureFailure, SpectrumError
from .quadrature import QuadratureSpec, QuadratureResult, gauss_legendre, integrate_finite

EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class MorsePotential:
    kappa: float
    x0: float = 0.0

    def __post_init__(self):
        if not self.kappa > 0.0:
            raise ValueError("kappa must be > 0, got %g" % self.kappa)

    def value(self, x):
        e = math.exp(-(x - self.x0))
        return self.kappa * self.kappa * (e * e - 2.0 * e)


@dataclass(frozen=True)
class DiscreteState:
    n: int
    lambda_n: float
    norm_const: float


@dataclass(frozen=True)
class GreenEval:
    value: complex
    x: float
    x_prime: float
    lam: complex


def u_of_x(x, pot):
    """u = 2 kappa e^{-(x-x0)}; raises OverflowError for x-x0 < -700."""
    y = x - pot.x0
    if y < -700.0:
        raise OverflowError("u(x) overflows double range for x-x0=%g" % y)
    return 2.0 * pot.kappa * math.exp(-y)


def bound_states(pot):
    """All bound states: lambda_n = -(kappa-n-1/2)^2 for 2 kappa - 2n - 1 > 0.

    The boundary index with 2 kappa - 2n - 1 = 0 is excluded: its
    normalization constant vanishes and it carries no spectral weight.
    """
    states = []
    n = 0
    while 2.0 * pot.kappa - 2.0 * n - 1.0 > 0.0:
        lam = -((pot.kappa - n - 0.5) ** 2)
        alpha = 2.0 * pot.kappa - 2.0 * n - 1.0
        log_norm_sq = (
            math.lgamma(n + 1) + math.log(alpha) - math.lgamma(2.0 * pot.kappa - n)
        )
        states.append(DiscreteState(n, lam, math.exp(0.5 * log_norm_sq)))
        n += 1
    return states


def _log_psi_n_parts(x, state, pot):
    u = u_of_x(x, pot)
    if u <= 0.0:
        return -math.inf, 1.0
    expo = 2.0 * pot.kappa - 2.0 * state.n - 1.0
    lag = _K.laguerre(state.n, expo, u)
    logmag = -0.5 * u + 0.5 * expo * math.log(u) + math.log(state.norm_const)
    if lag == 0.0:
        return -math.inf, 1.0
    return logmag + math.log(abs(lag)), math.copysign(1.0, lag)


def psi_n(x, state, pot):
    """Normalized bound state; log-space internally so u^{kappa-n-1/2} and
    e^{-u/2} never overflow individually."""
    logmag, sign = _log_psi_n_parts(x, state, pot)
    if logmag < -745.0:
        return 0.0
    return sign * math.exp(logmag)


def _log_sinh(t):
    # ln sinh t for t > 0 without overflow
    if t > 20.0:
        return t - math.log(2.0) + math.log1p(-math.exp(-2.0 * t))
    return math.log(math.sinh(t))


def _psi_prefactor_log(s, pot):
    # ln of sinh^{1/2}(2 pi s) |Gamma(1/2-kappa+is)| / (sqrt(2) pi); the sinh
    # and |Gamma| exponentials (~ e^{+-pi s}) are combined before exp()
    return (
        0.5 * _log_sinh(2.0 * math.pi * s)
        + sf.log_gamma(complex(0.5 - pot.kappa, s)).real
        - math.log(math.sqrt(2.0) * math.pi)
    )


def psi_continuum(x, lam, pot, method="auto"):
    """Delta-normalized continuum eigenfunction, lambda > 0.

    psi = (1/(sqrt(2) pi)) sinh^{1/2}(2 pi s) |Gamma(1/2-kappa+is)| u^{-1/2}
    W_{kappa, is}(u) with s = sqrt(lambda).  sinh grows like e^{2 pi s} while
    |Gamma|^2 decays like e^{-2 pi s}: the exponents are combined before
    exponentiating.
    """
    if not lam > 0.0:
        raise ValueError("continuum requires lambda > 0, got %g" % lam)
    s = math.sqrt(lam)
    u = u_of_x(x, pot)
    w, diag = sf.whittaker_w(pot.kappa, 1j * s, u, method=method)
    if w == 0.0:
        return 0.0
    log_pref = _psi_prefactor_log(s, pot) - 0.5 * math.log(u)
    return math.copysign(math.exp(log_pref + math.log(abs(w))), w)


def psi_continuum_many(x_list, lam, pot):
    """psi_continuum over many x at one lambda (prefactor computed once)."""
    s = math.sqrt(lam)
    mu = 1j * s
    log_pref = _psi_prefactor_log(s, pot)
    kappa = pot.kappa
    out = []
    for x in x_list:
        u = u_of_x(x, pot)
        wc, _, _, _ = sf._w_auto(kappa, mu, u)
        w = wc.real
        if w == 0.0:
            out.append(0.0)
        else:
            out.append(math.copysign(
                math.exp(log_pref - 0.5 * math.log(u) + math.log(abs(w))), w))
    return out


def _sqrt_spectral(lam):
    # branch with Im sqrt(lambda) < 0, matching the resolvent's G_+ sheet
    s = cmath.sqrt(lam)
    if s.imag > 0.0:
        s = -s
    return s


def _spectrum_distance(lam, pot):
    lam = complex(lam)
    if lam.real >= 0.0:
        d = abs(lam.imag)
    else:
        d = abs(lam)
    for st in bound_states(pot):
        d = min(d, abs(lam - st.lambda_n))
    return d


def green_function(x, x_prime, lam, pot):
    """Resolvent kernel G(x, x'; lambda) off the spectrum.

    G = Gamma(1/2-kappa+i sqrt(lam))/Gamma(1+2 i sqrt(lam)) *
        M(u_less)/sqrt(u_less) * W(u_greater)/sqrt(u_greater),
    where u_less = u at the larger x (u decreases in x): the M-side solution
    decays toward x -> +inf, the W-side toward x -> -inf.
    """
    lam = complex(lam)
    if _spectrum_distance(lam, pot) < 1e-10:
        raise SpectrumError("lambda=%r is within 1e-10 of the spectrum" % (lam,))
    s = _sqrt_spectral(lam)
    mu = 1j * s
    x_hi, x_lo = (x, x_prime) if x >= x_prime else (x_prime, x)
    u_hi = u_of_x(x_lo, pot)   # larger u, carries W
    u_lo = u_of_x(x_hi, pot)   # smaller u, carries M
    mval, _ = sf.whittaker_m(pot.kappa, mu, u_lo)
    wval, _ = sf.whittaker_w_complex(pot.kappa, mu, u_hi)
    log_ratio = sf.log_gamma(0.5 - pot.kappa + 1j * s) - sf.log_gamma(1.0 + 2j * s)
    g = cmath.exp(log_ratio) * mval / math.sqrt(u_lo) * wval / math.sqrt(u_hi)
    return GreenEval(g, x, x_prime, lam)


def wronskian_residual(lam, x, pot, h=1e-5):
    """Relative gap between the numerical Wronskian of (psi1, psi2) and the
    gamma-ratio identity Gamma(1+2 i sqrt(lam))/Gamma(1/2-kappa+i sqrt(lam))."""
    lam = complex(lam)
    s = _sqrt_spectral(lam)
    mu = 1j * s

    def psi1(xx):
        u = u_of_x(xx, pot)
        val, _ = sf.whittaker_m(pot.kappa, mu, u)
        return val / math.sqrt(u)

    def psi2(xx):
        u = u_of_x(xx, pot)
        val, _ = sf.whittaker_w_complex(pot.kappa, mu, u)
        return val / math.sqrt(u)

    d1 = (psi1(x + h) - psi1(x - h)) / (2.0 * h)
    d2 = (psi2(x + h) - psi2(x - h)) / (2.0 * h)
    wron = psi1(x) * d2 - d1 * psi2(x)
    ratio = cmath.exp(sf.log_gamma(1.0 + 2j * s) - sf.log_gamma(0.5 - pot.kappa + 1j * s))
    return abs(wron - ratio) / abs(ratio)


def default_span(pot, tol=1e-9):
    """Integration window [x0-15, x0+X] wide enough that the slowest bound
    tail (decay rate 2 kappa - 2 n_max - 1 in psi^2) is below tol."""
    states = bound_states(pot)
    hi = 80.0
    if states:
        beta = 2.0 * pot.kappa - 2.0 * states[-1].n - 1.0
        hi = max(80.0, math.log(10.0 / (tol * beta)) / beta)
    return pot.x0 - 15.0, pot.x0 + hi


def inner_product_bound(state, f, pot, spec=None, span=None):
    """<psi_n, f> by adaptive quadrature."""
    if span is None:
        span = default_span(pot)
    if spec is None:
        spec = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-13, max_panels=4000)
    res = integrate_finite(lambda t: psi_n(t, state, pot) * f(t), span[0], span[1], spec)
    return res.value


def inner_product_continuum(lam, f, pot, spec=None, span=None):
    """<psi_lambda, f> by adaptive quadrature (f must decay)."""
    if span is None:
        span = default_span(pot)
    if spec is None:
        spec = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-12, max_panels=4000)
    res = integrate_finite(
        lambda t: psi_continuum(t, lam, pot) * f(t), span[0], span[1], spec
    )
    return res.value


@dataclass
class Reconstruction:
    x: list
    values: list
    bound_coeffs: list
    p_nodes: list
    p_weights: list
    cont_coeffs: list
    p_max: float
    quad: QuadratureResult = None


class _Spline:
    """Natural cubic spline through sample points (plumbing for tabulated f)."""

    def __init__(self, xs, ys):
        import numpy as np
        from scipy.interpolate import CubicSpline

        self._lo = float(xs[0])
        self._hi = float(xs[-1])
        self._cs = CubicSpline(np.asarray(xs, dtype=float),
                               np.asarray(ys, dtype=float))

    def __call__(self, x):
        if x < self._lo or x > self._hi:
            return 0.0
        return float(self._cs(x))


def reconstruct(x_samples, f_samples, pot, x_eval=None, nodes_per_panel=16,
                p_cap=125.0, envelope_tol=2e-4, inner_nodes_per_panel=32):
    """Spectral synthesis sum_n psi_n <psi_n, f> + int psi_lam <psi_lam, f> dlam.

    f is given tabulated on x_samples (or as a callable plus a (lo, hi) span
    tuple in x_samples).  The continuum integral runs in p (lambda = p^2/4),
    which removes the sinh^{1/2} cusp at lambda -> 0.  Panels are 0.5 wide up
    to p = 20 and 2.0 beyond (the synthesis integrand's phase density falls
    off at large p); chaining stops once the coefficient envelope drops below
    envelope_tol of its peak, or stops decreasing at low level (quadrature
    noise floor), or hits p_cap.

    Returns a Reconstruction with values on x_eval (default: x_samples).
    """
    if callable(f_samples):
        f = f_samples
        lo, hi = x_samples
    else:
        f = _Spline(x_samples, f_samples)
        lo, hi = float(x_samples[0]), float(x_samples[-1])
    if x_eval is None:
        if callable(f_samples):
            raise ValueError("x_eval required when f is a callable")
        x_eval = list(x_samples)

    states = bound_states(pot)
    bound_coeffs = [inner_product_bound(st, f, pot, span=(lo, hi)) for st in states]

    # fixed composite inner grid over [lo, hi] shared by every p node
    in_nodes, in_weights = gauss_legendre(inner_nodes_per_panel)
    xs = []
    ws = []
    n_xpanels = max(1, int(math.ceil((hi - lo) / 0.5)))
    wpanel = (hi - lo) / n_xpanels
    for i in range(n_xpanels):
        a = lo + i * wpanel
        for t, w in zip(in_nodes, in_weights):
            xs.append(a + wpanel * t)
            ws.append(w * wpanel)
    f_vals = [f(x) for x in xs]
    fw = [fv * wv for fv, wv in zip(f_vals, ws)]

    p_nodes_base, p_weights_base = gauss_legendre(nodes_per_panel)
    p_nodes = []
    p_weights = []
    cont_coeffs = []
    psi_eval_rows = []
    peak = 0.0
    p_lo = 0.0
    panels = 0
    low_run = 0
    plateau_run = 0
    panel_peak = 0.0
    min_peak = math.inf
    stopped = False
    while p_lo < p_cap:
        width = 0.5 if p_lo < 20.0 else 2.0
        panel_peak = 0.0
        for t, w in zip(p_nodes_base, p_weights_base):
            p = p_lo + width * t
            lam = 0.25 * p * p
            row = psi_continuum_many(xs, lam, pot)
            coeff = math.fsum(fwv * pv for fwv, pv in zip(fw, row))
            p_nodes.append(p)
            p_weights.append(w * width)
            cont_coeffs.append(coeff)
            psi_eval_rows.append(psi_continuum_many(x_eval, lam, pot))
            panel_peak = max(panel_peak, abs(coeff) * p)
        peak = max(peak, panel_peak)
        p_lo += width
        panels += 1
        low_run = low_run + 1 if panel_peak < envelope_tol * peak else 0
        if panels >= 4 and low_run >= 2:
            stopped = True
            break
        # coefficient-quadrature noise plateau: envelope no longer decreasing
        # at low signal levels; integrating further only accumulates noise
        if panel_peak < 1e-7 * peak and panel_peak >= 0.5 * min_peak:
            plateau_run += 1
            if plateau_run >= 2:
                stopped = True
                break
        else:
            plateau_run = 0
        min_peak = min(min_peak, panel_peak)
    if not stopped and p_lo >= p_cap and envelope_tol > 0.0:
        raise QuadratureFailure(
            "continuum coefficients not decayed at p_cap=%g "
            "(last panel %g of peak %g)" % (p_cap, panel_peak, peak))

    values = []
    for i, xv in enumerate(x_eval):
        acc = 0.0
        for st, c in zip(states, bound_coeffs):
            acc += psi_n(xv, st, pot) * c
        # d(lambda) = (p/2) dp
        cont = math.fsum(
            w * 0.5 * p * c * row[i]
            for p, w, c, row in zip(p_nodes, p_weights, cont_coeffs, psi_eval_rows)
        )
        values.append(acc + cont)
    quad = QuadratureResult(0.0, 0.0, panels, p_nodes[-1] if p_nodes else 0.0)
    return Reconstruction(list(x_eval), values, bound_coeffs, p_nodes, p_weights,
                          cont_coeffs, p_nodes[-1] if p_nodes else 0.0, quad)
