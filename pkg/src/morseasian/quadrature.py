"""Adaptive Gauss-Legendre quadrature on finite panels and chained
semi-infinite integration with envelope-driven tail truncation."""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import MissingEnvelope


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_panels: int = 512
    nodes_per_panel: int = 32
    truncation_envelope: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("rel_tol and abs_tol must be positive")
        if not 4 <= self.nodes_per_panel <= 64:
            raise ValueError("nodes_per_panel must be in [4, 64]")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")


@dataclass
class QuadratureResult:
    value: float
    est_error: float
    panels_used: int
    truncated_at: float
    converged: bool = True


_node_cache: dict[int, tuple[tuple[float, ...], tuple[float, ...]]] = {}


def gauss_legendre(n):
    """Nodes and weights on [0, 1], by Newton iteration on P_n.

    Cached per n; accuracy is machine precision (verified by the polynomial
    exactness tests).
    """
    if n in _node_cache:
        return _node_cache[n]
    if n < 1:
        raise ValueError("need at least one node")
    xs = []
    ws = []
    for i in range(n):
        # Chebyshev-like initial guess on [-1, 1]
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p0, p1 = 1.0, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if abs(dx) < 1e-15:
                break
        p0, p1 = 1.0, x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        xs.append(0.5 * (1.0 - x))  # map to [0,1]; cos guess descends, so flip
        ws.append(1.0 / ((1.0 - x * x) * dp * dp))
    order = sorted(range(n), key=lambda i: xs[i])
    nodes = tuple(xs[i] for i in order)
    weights = tuple(ws[i] for i in order)
    _node_cache[n] = (nodes, weights)
    return nodes, weights


def _panel(g, a, b, nodes, weights):
    width = b - a
    acc = 0.0
    for x, w in zip(nodes, weights):
        acc += w * g(a + width * x)
    return acc * width


def integrate_finite(g, a, b, spec=None):
    """Adaptive panel-bisection Gauss-Legendre for int_a^b g.

    A panel is accepted when its bisected refinement agrees within the
    panel's share of the tolerance.  On panel-budget exhaustion the best
    estimate is returned with converged=False (no exception).
    """
    if spec is None:
        spec = QuadratureSpec()
    if not a < b:
        raise ValueError("need a < b")
    nodes, weights = gauss_legendre(spec.nodes_per_panel)
    coarse = _panel(g, a, b, nodes, weights)
    # stack of (lo, hi, coarse_estimate); deterministic LIFO ordering
    stack = [(a, b, coarse)]
    total = 0.0
    err = 0.0
    panels = 0
    pieces = []  # (lo, contribution) so summation order is position-fixed
    converged = True
    rough = abs(coarse)
    while stack:
        lo, hi, est = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(g, lo, mid, nodes, weights)
        right = _panel(g, mid, hi, nodes, weights)
        panels += 1
        diff = abs(left + right - est)
        share = max(spec.abs_tol, spec.rel_tol * rough) * (hi - lo) / (b - a)
        if diff <= share or (hi - lo) < 1e-14 * (b - a):
            pieces.append((lo, left + right))
            err += diff
            rough = max(rough, abs(left + right))
            continue
        if panels >= spec.max_panels:
            pieces.append((lo, left + right))
            err += diff
            converged = False
            continue
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    pieces.sort(key=lambda t: t[0])
    total = math.fsum(contrib for _, contrib in pieces)
    return QuadratureResult(total, err, panels, b, converged)


def integrate_semi_infinite(g, a, spec=None, panel_width=0.5):
    """Chain fixed-width panels from a until the envelope tail bound is small.

    With an envelope, the cut happens once env(t)*width summed ahead drops
    below abs_tol; without one, the integrand itself must decay, and growth
    over several consecutive panels raises MissingEnvelope.
    """
    if spec is None:
        spec = QuadratureSpec()
    nodes, weights = gauss_legendre(spec.nodes_per_panel)
    half = gauss_legendre(max(4, spec.nodes_per_panel // 2))
    total = 0.0
    err = 0.0
    peak = 0.0
    grow_run = 0
    prev_mag = None
    t = a
    panels = 0
    contributions = []
    converged = True
    while panels < spec.max_panels:
        hi = t + panel_width
        val = _panel(g, t, hi, nodes, weights)
        val_lo = _panel(g, t, hi, *half)
        contributions.append(val)
        err += abs(val - val_lo)
        panels += 1
        mag = abs(val)
        peak = max(peak, mag)
        if prev_mag is not None and mag > prev_mag * (1.0 + 1e-12) and mag > spec.abs_tol:
            grow_run += 1
            if grow_run >= 8 and spec.truncation_envelope is None:
                raise MissingEnvelope(
                    "integrand grew over %d consecutive panels past t=%g and no "
                    "truncation_envelope was supplied" % (grow_run, hi)
                )
        else:
            grow_run = 0
        prev_mag = mag
        t = hi
        if spec.truncation_envelope is not None:
            tail = _envelope_tail(spec.truncation_envelope, t, panel_width)
            if tail < spec.abs_tol:
                err += tail
                break
        else:
            if mag < spec.abs_tol and mag <= 1e-3 * (peak + spec.abs_tol):
                err += mag
                break
    else:
        converged = False
    total = math.fsum(contributions)
    return QuadratureResult(total, err, panels, t, converged)


def _envelope_tail(env, start, width, horizon=400):
    """Upper bound of int_start^inf env, by panel sums of max-endpoint values."""
    bound = 0.0
    t = start
    last = abs(env(t))
    for _ in range(horizon):
        hi = t + 4.0 * width
        nxt = abs(env(hi))
        bound += max(last, nxt) * 4.0 * width
        t = hi
        if nxt < 1e-320 or nxt < 1e-18 * (bound + 1e-300):
            return bound
        if nxt > last:
            return math.inf  # envelope not (yet) decaying: keep integrating
        last = nxt
    return bound
