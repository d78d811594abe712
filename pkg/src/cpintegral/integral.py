"""Integrals and norms computed from primitives.

Every integral over an interval is the four-corner difference of the
primitive; it is exact, not a quadrature.  The norms are suprema of
continuous functionals and are estimated by chart-uniform grid refinement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _sciint

from .extplane import NEG_INF, POS_INF, FULL_PLANE, Interval2, axis_nodes, ext, make_interval
from .primitive import Distribution, Primitive


def _primitive_of(f):
    if isinstance(f, Distribution):
        return f.primitive
    if isinstance(f, Primitive):
        return f
    raise TypeError("expected a Distribution or Primitive")


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    resolution: int
    converged: bool
    trace: list = field(default_factory=list)

    def as_dict(self):
        return {
            "value": self.value,
            "errorEstimate": self.error_estimate,
            "resolution": self.resolution,
            "converged": self.converged,
            "trace": self.trace,
        }


def corner_integral(f, interval: Interval2) -> float:
    """Integral of f over [a,b] x [c,d]: F(a,c) + F(b,d) - F(a,d) - F(b,c)."""
    F = _primitive_of(f)
    if interval.degenerate:
        return 0.0
    a, b, c, d = interval.a, interval.b, interval.c, interval.d
    val = F(a, c) + F(b, d) - F(a, d) - F(b, c)
    return interval.sign * val


def total_integral(f) -> float:
    """Integral over the whole extended plane, F(inf, inf)."""
    return corner_integral(f, FULL_PLANE)


def cumulative(f, x, y):
    """Integral from (-inf, -inf) up to (x, y); equals F(x, y)."""
    F = _primitive_of(f)
    return F(x, y)


def _sup_refine(value_at, tol, start_resolution, max_doublings):
    # stop only after two consecutive increments within tol: a single flat
    # step can be a plateau where the refined grid misses a ridge the same way
    trace = []
    converged = False
    r = start_resolution
    for _ in range(max_doublings + 1):
        trace.append({"resolution": r, "value": value_at(r)})
        if len(trace) >= 3:
            d1 = abs(trace[-1]["value"] - trace[-2]["value"])
            d2 = abs(trace[-2]["value"] - trace[-3]["value"])
            if d1 <= tol and d2 <= tol:
                converged = True
                break
        r *= 2
    value = trace[-1]["value"]
    err = abs(value - trace[-2]["value"]) if len(trace) > 1 else float("inf")
    return QuadResult(value, float(err), trace[-1]["resolution"], converged, trace)


def alexiewicz_norm(f, tol=1e-6, start_resolution=32, max_doublings=8) -> QuadResult:
    """||f|| = sup over the extended plane of |F(x, y)|."""
    F = _primitive_of(f)

    def value_at(r):
        xs = axis_nodes(r)
        X, Y = np.meshgrid(xs, xs)
        return float(np.max(np.abs(np.asarray(F.eval(X, Y)))))

    return _sup_refine(value_at, tol, start_resolution, max_doublings)


def norm_prime(f, tol=1e-6, start_resolution=16, max_doublings=5) -> QuadResult:
    """||f||' = sup over intervals I of |integral of f over I|.

    For fixed x-limits a < b the interval integral is D(d) - D(c) with
    D(y) = F(b, y) - F(a, y), so the supremum over y-limits is
    max D - min D; sweeping x-index pairs covers all intervals.
    """
    F = _primitive_of(f)

    def value_at(r):
        xs = axis_nodes(r)
        X, Y = np.meshgrid(xs, xs)
        G = np.asarray(F.eval(X, Y))
        best = 0.0
        n = G.shape[1]
        for i in range(n - 1):
            D = G[:, i + 1 :] - G[:, i : i + 1]
            best = max(best, float(np.max(np.max(D, axis=0) - np.min(D, axis=0))))
        return best

    return _sup_refine(value_at, tol, start_resolution, max_doublings)


def norm_dual(f, probes=None, tol=1e-6, start_resolution=16, max_doublings=5) -> QuadResult:
    """Lower bound for sup over the multiplier unit ball of |integral of f g|.

    With explicit probes, each is scaled to variation norm <= 1 and paired
    with f by parts integration.  The default probe family is scaled
    quadrant indicators (variation norm 4), whose pairing with f is
    F(x, y) / 4, plus scaled finite-interval indicators (variation norm 9),
    whose pairing is the corner difference / 9; both reduce to corner
    evaluations of the primitive.
    """
    F = _primitive_of(f)

    if probes is not None:
        from .stieltjes import integrate_product
        from .variation import hk_norm

        best = 0.0
        for g in probes:
            est = hk_norm(g, tol=tol)
            if not est.converged:
                raise ValueError(f"probe {g.label!r} has divergent variation")
            scale = max(est.value, 1.0)
            res = integrate_product(f, g, tol=tol * scale)
            best = max(best, abs(res.value) / scale)
        return QuadResult(best, tol, 0, True, [])

    def value_at(r):
        xs = axis_nodes(r)
        X, Y = np.meshgrid(xs, xs)
        G = np.asarray(F.eval(X, Y))
        best = float(np.max(np.abs(G))) / 4.0
        n = G.shape[1]
        for i in range(n - 1):
            D = G[:, i + 1 :] - G[:, i : i + 1]
            best = max(best, float(np.max(np.max(D, axis=0) - np.min(D, axis=0))) / 9.0)
        return best

    return _sup_refine(value_at, tol, start_resolution, max_doublings)


def iterated_consistency(f, interval: Interval2, resolution=128):
    """Iterated-sum consistency report over an interval.

    Both iterated orders telescope to corner differences of the primitive:
    the x-outer sum over a partition a = x_0 < ... < x_m = b of
    [F(x_i, d) - F(x_i, c)] differences collapses to the corner formula, and
    symmetrically for y-outer.  Reports the three values and the largest
    pairwise discrepancy.
    """
    F = _primitive_of(f)
    direct = corner_integral(f, interval)
    a, b, c, d = interval.a, interval.b, interval.c, interval.d

    from .stieltjes import segment_nodes

    xs = segment_nodes(min(a, b), max(a, b), resolution) if a != b else np.array([a, b])
    inner_x = (
        np.asarray(F.eval(xs, np.full(xs.shape, d)))
        - np.asarray(F.eval(xs, np.full(xs.shape, c)))
    )
    x_outer = interval.sign * float(np.sum(np.diff(inner_x)))

    ys = segment_nodes(min(c, d), max(c, d), resolution) if c != d else np.array([c, d])
    inner_y = (
        np.asarray(F.eval(np.full(ys.shape, b), ys))
        - np.asarray(F.eval(np.full(ys.shape, a), ys))
    )
    y_outer = interval.sign * float(np.sum(np.diff(inner_y)))

    vals = (direct, x_outer, y_outer)
    disc = max(abs(p - q) for p in vals for q in vals)
    return {"corner": direct, "xOuter": x_outer, "yOuter": y_outer, "maxDiscrepancy": disc}


def ftc_residual(f, resolution=64):
    """Largest |cumulative integral - F| over the node lattice, in ulps of F."""
    F = _primitive_of(f)
    xs = axis_nodes(resolution)
    X, Y = np.meshgrid(xs, xs)
    G = np.asarray(F.eval(X, Y))
    neg = np.full(xs.shape, NEG_INF)
    col = np.asarray(F.eval(neg, xs))  # F(-inf, y)
    row = np.asarray(F.eval(xs, neg))  # F(x, -inf)
    corner = float(F(NEG_INF, NEG_INF))
    cum = corner + G - col[:, None] - row[None, :]
    diff = np.abs(cum - G)
    scale = np.spacing(np.maximum(np.abs(G), 1.0))
    return float(np.max(diff / scale))


def improper_iterated(integrand, order="xy", xlim=(NEG_INF, POS_INF), ylim=(NEG_INF, POS_INF), tol=1e-9):
    """Iterated improper integral of a pointwise integrand.

    order 'xy' integrates in x first (inner), then y; 'yx' the reverse.
    Returns (value, error estimate).
    """
    x0, x1 = ext(xlim[0]), ext(xlim[1])
    y0, y1 = ext(ylim[0]), ext(ylim[1])
    if order == "xy":

        def inner(y):
            val, _ = _sciint.quad(lambda x: integrand(x, y), x0, x1, epsabs=tol / 2, limit=200)
            return val

        return _sciint.quad(inner, y0, y1, epsabs=tol / 2, limit=200)
    if order == "yx":

        def inner(x):
            val, _ = _sciint.quad(lambda y: integrand(x, y), y0, y1, epsabs=tol / 2, limit=200)
            return val

        return _sciint.quad(inner, x0, x1, epsabs=tol / 2, limit=200)
    raise ValueError("order must be 'xy' or 'yx'")


def _xpowy_integrand(x, y):
    # mixed derivative of x^y on (0, 1) x (0, inf)
    return x ** (y - 1.0) * (1.0 + y * math.log(x))


def _arctanxy_integrand(x, y):
    # mixed derivative of arctan(x y)
    t = (x * y) ** 2
    return (1.0 - t) / (t + 1.0) ** 2


def _xpowy_iterated(order, tol):
    """Iterated integral of x^(y-1) (1 + y log x) on (0, 1) x (0, inf).

    The inner integral is computed after the substitution that removes the
    x = 0 and x = 1 endpoint blowup: with s = -y log x the y-integral
    becomes exp(-s) (1 - s) / (-x log x) ds, and with t = -log x the
    x-integral becomes exp(-t y) (1 - y t) dt on (0, inf).
    """
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sciint.IntegrationWarning)
        if order == "dyFirst":

            def inner(x):
                c = -math.log(x)
                val, _ = _sciint.quad(
                    lambda s: math.exp(-s) * (1.0 - s), 0.0, np.inf,
                    epsabs=tol / 2, limit=200,
                )
                return val / (x * c)

            return _sciint.quad(inner, 0.0, 1.0, epsabs=tol / 2, limit=200)

        def inner(y):
            val, _ = _sciint.quad(
                lambda t: math.exp(-t * y) * (1.0 - y * t), 0.0, np.inf,
                epsabs=tol / 2, limit=200,
            )
            return val

        return _sciint.quad(inner, 0.0, np.inf, epsabs=tol / 2, limit=200)


def improper_example(name, order, tol=1e-8) -> QuadResult:
    """Iterated improper integrals of the two order-sensitive examples.

    'xPowY' lives on (0, 1) x (0, inf) and integrates to 0 in either order;
    'arctanXY' integrates x over the whole line and y over (0, 1), giving pi
    when y is inner and 0 when x is inner.  order is 'dyFirst' or 'dxFirst'.
    """
    import warnings

    if order not in ("dyFirst", "dxFirst"):
        raise ValueError("order must be 'dyFirst' or 'dxFirst'")
    if name == "xPowY":
        value, err = _xpowy_iterated(order, tol)
    elif name == "arctanXY":
        quad_order = "yx" if order == "dyFirst" else "xy"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", _sciint.IntegrationWarning)
            value, err = improper_iterated(
                _arctanxy_integrand, quad_order,
                xlim=(NEG_INF, POS_INF), ylim=(0.0, 1.0), tol=tol,
            )
    else:
        raise ValueError(f"unknown example {name!r}")
    return QuadResult(value, float(err), 0, err <= max(tol, 1e-6), [])


def xpowy_corner_probes():
    """Corner-limit probes of x^y showing order dependence of the limits.

    The four-corner combination a^c + b^d - a^d - b^c tends to 0 when the
    lower y-limit c is sent to 0 first, but to -1 when the lower x-limit a
    is sent to 0 first.  Evaluated at cascaded near-limit values.
    """

    def combo(a, b, c, d):
        return a**c + b**d - a**d - b**c

    inner_c = combo(1e-6, 1.0 - 1e-3, 1e-12, 1e5)
    inner_a = combo(1e-300, 1.0 - 1e-3, 1e-2, 1e5)
    return {"cInnermost": float(inner_c), "aInnermost": float(inner_a)}


@dataclass(frozen=True)
class IntervalND:
    """Product interval in n dimensions, lower[k] <= upper[k] componentwise."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper must have the same length")
        for lo, hi in zip(self.lower, self.upper):
            if ext(lo) > ext(hi):
                raise ValueError("lower must not exceed upper")

    @property
    def ndim(self):
        return len(self.lower)


def corner_integral_nd(F, interval: IntervalND) -> float:
    """n-dimensional corner alternating sum of the primitive F.

    Each of the 2^n corners picks lower or upper per coordinate; the sign is
    + when the number of lower choices is even, - when odd.
    """
    n = interval.ndim
    total = 0.0
    for choice in itertools.product((0, 1), repeat=n):
        point = tuple(
            interval.lower[k] if choice[k] == 0 else interval.upper[k] for k in range(n)
        )
        sign = -1.0 if sum(1 for c in choice if c == 0) % 2 else 1.0
        total += sign * float(F(*point))
    return total
