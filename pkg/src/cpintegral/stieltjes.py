"""Riemann-Stieltjes quadratures against functions of bounded variation.

Sums are over chart-uniform tagged partitions, refined by doubling; nodes
straddle each declared jump line of the integrator with floating-point
neighbour points, so jump contributions are picked up within an ulp of the
integrand value at the jump.
"""

from __future__ import annotations

import math

import numpy as np

from ._core import kernels
from .extplane import (
    DEFAULT_CHART,
    NEG_INF,
    FULL_PLANE,
    Interval2,
    uniform_grid,
)
from .integral import QuadResult, _primitive_of
from .primitive import BVFunction, GridSamplePrimitive


def segment_nodes(a, b, resolution, jumps=()):
    """Chart-uniform partition of [a, b] with straddles around interior jumps."""
    if not a < b:
        raise ValueError("need a < b")
    ua = float(np.asarray(DEFAULT_CHART.forward(a)))
    ub = float(np.asarray(DEFAULT_CHART.forward(b)))
    u = np.linspace(ua, ub, resolution + 1)
    nodes = np.asarray(DEFAULT_CHART.inverse(u), dtype=float)
    nodes[0] = a
    nodes[-1] = b
    extra = []
    for j in jumps:
        if math.isfinite(j) and a < j < b:
            extra.extend((np.nextafter(j, -np.inf), j, np.nextafter(j, np.inf)))
    if extra:
        nodes = np.concatenate([nodes, np.asarray(extra, dtype=float)])
    nodes = np.unique(nodes)
    return nodes[(nodes >= a) & (nodes <= b)]


def cell_tags(nodes):
    """Chart-midpoint tags; the first and last cells are tagged at the boundary."""
    u = np.asarray(DEFAULT_CHART.forward(nodes))
    tags = np.asarray(DEFAULT_CHART.inverse((u[:-1] + u[1:]) / 2.0), dtype=float)
    tags[0] = nodes[0]
    tags[-1] = nodes[-1]
    return tags


def rs_line_integral(phi, g_section, a, b, jumps=(), tol=1e-9, start_resolution=32, max_doublings=10):
    """integral over [a, b] of phi d(g_section), both one-dimensional callables."""
    if a == b:
        return QuadResult(0.0, 0.0, 0, True, [])
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    trace = []
    prev = None
    converged = False
    r = start_resolution
    value = 0.0
    for _ in range(max_doublings + 1):
        nodes = segment_nodes(a, b, r, jumps)
        tags = cell_tags(nodes)
        value = kernels.line_weighted_sum(
            np.ascontiguousarray(np.asarray(phi(tags), dtype=float)),
            np.ascontiguousarray(np.asarray(g_section(nodes), dtype=float)),
        )
        trace.append({"resolution": r, "value": value})
        if prev is not None and abs(value - prev) <= tol:
            converged = True
            break
        prev = value
        r *= 2
    err = abs(value - prev) if prev is not None else float("inf")
    return QuadResult(sign * value, float(err), trace[-1]["resolution"], converged, trace)


def rs_line_section(F, g: BVFunction, axis, fixed, lo, hi, tol=1e-9, **kwargs):
    """Line Stieltjes integral of F against a section of g.

    axis 1: integral over x in [lo, hi] of F(x, fixed) d1 g(x, fixed);
    axis 2: the symmetric version along y.
    """
    F_eval = F.eval if hasattr(F, "eval") else F
    g_eval = g.eval if hasattr(g, "eval") else g
    if axis == 1:
        phi = lambda x: F_eval(x, np.full(np.shape(x), fixed))
        sec = lambda x: g_eval(x, np.full(np.shape(x), fixed))
        jumps = getattr(g, "jump_x", ())
    elif axis == 2:
        phi = lambda y: F_eval(np.full(np.shape(y), fixed), y)
        sec = lambda y: g_eval(np.full(np.shape(y), fixed), y)
        jumps = getattr(g, "jump_y", ())
    else:
        raise ValueError("axis must be 1 or 2")
    return rs_line_integral(phi, sec, lo, hi, jumps=jumps, tol=tol, **kwargs)


def rs_plane_integral(phi, integrator, interval: Interval2 = FULL_PLANE, jumps_x=None, jumps_y=None,
                      tol=1e-9, start_resolution=32, max_doublings=7):
    """Double Stieltjes integral of phi against the corner differences of
    the integrator over the interval.

    phi and integrator are vectorized callables of (X, Y); jump lines
    default to the integrator's metadata when it carries any.
    """
    if interval.degenerate:
        return QuadResult(0.0, 0.0, 0, True, [])
    if jumps_x is None:
        jumps_x = getattr(integrator, "jump_x", ())
    if jumps_y is None:
        jumps_y = getattr(integrator, "jump_y", ())
    phi_eval = phi.eval if hasattr(phi, "eval") else phi
    g_eval = integrator.eval if hasattr(integrator, "eval") else integrator

    trace = []
    prev = None
    converged = False
    r = start_resolution
    value = 0.0
    for _ in range(max_doublings + 1):
        xs = segment_nodes(interval.a, interval.b, r, jumps_x)
        ys = segment_nodes(interval.c, interval.d, r, jumps_y)
        tx = cell_tags(xs)
        ty = cell_tags(ys)
        TX, TY = np.meshgrid(tx, ty)
        T = np.ascontiguousarray(np.asarray(phi_eval(TX, TY), dtype=float))
        X, Y = np.meshgrid(xs, ys)
        G = np.ascontiguousarray(np.asarray(g_eval(X, Y), dtype=float))
        value = kernels.corner_weighted_sum(T, G)
        trace.append({"resolution": r, "value": value})
        if prev is not None and abs(value - prev) <= tol:
            converged = True
            break
        prev = value
        r *= 2
    err = abs(value - prev) if prev is not None else float("inf")
    return QuadResult(interval.sign * value, float(err), trace[-1]["resolution"], converged, trace)


def _nine_term_sum(F, g, interval, resolution):
    a, b, c, d = interval.a, interval.b, interval.c, interval.d
    jx = getattr(g, "jump_x", ())
    jy = getattr(g, "jump_y", ())

    total = (
        F(a, c) * g(a, c) + F(b, d) * g(b, d) - F(a, d) * g(a, d) - F(b, c) * g(b, c)
    )

    xs = segment_nodes(a, b, resolution, jx)
    ys = segment_nodes(c, d, resolution, jy)
    tx = cell_tags(xs)
    ty = cell_tags(ys)

    def line_x(level, sign):
        lv = np.full(tx.shape, level)
        phi_vals = np.asarray(F.eval(tx, lv), dtype=float)
        g_vals = np.asarray(g.eval(xs, np.full(xs.shape, level)), dtype=float)
        return sign * kernels.line_weighted_sum(
            np.ascontiguousarray(phi_vals), np.ascontiguousarray(g_vals)
        )

    def line_y(level, sign):
        lv = np.full(ty.shape, level)
        phi_vals = np.asarray(F.eval(lv, ty), dtype=float)
        g_vals = np.asarray(g.eval(np.full(ys.shape, level), ys), dtype=float)
        return sign * kernels.line_weighted_sum(
            np.ascontiguousarray(phi_vals), np.ascontiguousarray(g_vals)
        )

    total += line_x(d, -1.0) + line_x(c, 1.0) + line_y(b, -1.0) + line_y(a, 1.0)

    TX, TY = np.meshgrid(tx, ty)
    T = np.ascontiguousarray(np.asarray(F.eval(TX, TY), dtype=float))
    X, Y = np.meshgrid(xs, ys)
    G = np.ascontiguousarray(np.asarray(g.eval(X, Y), dtype=float))
    total += kernels.corner_weighted_sum(T, G)
    return total


def integrate_product(f, g: BVFunction, interval: Interval2 = FULL_PLANE,
                      tol=1e-9, start_resolution=32, max_doublings=7) -> QuadResult:
    """integral of f g over the interval by parts against the primitive of f.

    The value is the four corner products of F g, minus/plus the four edge
    Stieltjes line integrals of F against sections of g, plus the double
    Stieltjes integral of F against the corner differences of g.
    """
    F = _primitive_of(f)
    if interval.degenerate:
        return QuadResult(0.0, 0.0, 0, True, [])
    trace = []
    prev = None
    converged = False
    r = start_resolution
    value = 0.0
    for _ in range(max_doublings + 1):
        value = _nine_term_sum(F, g, interval, r)
        trace.append({"resolution": r, "value": value})
        if prev is not None and abs(value - prev) <= tol:
            converged = True
            break
        prev = value
        r *= 2
    err = abs(value - prev) if prev is not None else float("inf")
    return QuadResult(interval.sign * value, float(err), trace[-1]["resolution"], converged, trace)


def parts_primitive(f, g: BVFunction, resolution=64, oversample=4) -> GridSamplePrimitive:
    """Primitive of the product f g, sampled on a chart-uniform grid.

    Phi(x, y) = F g - int_-inf^x F(., y) d1 g - int_-inf^y F(x, .) d2 g
              + int int F d12 g over [-inf, x] x [-inf, y].
    """
    F = _primitive_of(f)
    grid = uniform_grid(resolution)
    fine_r = resolution * oversample
    xs = segment_nodes(NEG_INF, np.inf, fine_r, getattr(g, "jump_x", ()))
    ys = segment_nodes(NEG_INF, np.inf, fine_r, getattr(g, "jump_y", ()))
    tx = cell_tags(xs)
    ty = cell_tags(ys)
    ix = np.searchsorted(xs, grid.xs)  # coarse nodes sit exactly on fine nodes
    iy = np.searchsorted(ys, grid.ys)
    if not (np.all(xs[ix] == grid.xs) and np.all(ys[iy] == grid.ys)):
        raise RuntimeError("coarse grid nodes failed to nest in the fine partition")

    X, Y = np.meshgrid(xs, ys)
    G = np.asarray(g.eval(X, Y), dtype=float)
    TX, TY = np.meshgrid(tx, ty)
    T = np.asarray(F.eval(TX, TY), dtype=float)

    corner = G[:-1, :-1] + G[1:, 1:] - G[:-1, 1:] - G[1:, :-1]
    plane_cum = np.zeros((len(ys), len(xs)))
    plane_cum[1:, 1:] = np.cumsum(np.cumsum(T * corner, axis=0), axis=1)

    Xc, Yc = np.meshgrid(grid.xs, grid.ys)
    FG = np.asarray(F.eval(Xc, Yc), dtype=float) * np.asarray(g.eval(Xc, Yc), dtype=float)

    # int_-inf^x F(s, y) d1 g(s, y) for each coarse y, cumulative along fine x
    line1 = np.zeros((len(grid.ys), len(grid.xs)))
    for jj, yv in enumerate(grid.ys):
        phi = np.asarray(F.eval(tx, np.full(tx.shape, yv)), dtype=float)
        gl = np.asarray(g.eval(xs, np.full(xs.shape, yv)), dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(phi * np.diff(gl))])
        line1[jj] = cum[ix]

    line2 = np.zeros((len(grid.ys), len(grid.xs)))
    for ii, xv in enumerate(grid.xs):
        phi = np.asarray(F.eval(np.full(ty.shape, xv), ty), dtype=float)
        gl = np.asarray(g.eval(np.full(ys.shape, xv), ys), dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(phi * np.diff(gl))])
        line2[:, ii] = cum[iy]

    values = FG - line1 - line2 + plane_cum[np.ix_(iy, ix)]
    values[0, :] = 0.0
    values[:, 0] = 0.0
    return GridSamplePrimitive(grid, values, f"parts({F.label},{g.label})")


def _vanishes_on_edges(g, sign, resolution=64, tol=1e-12):
    """True if g is ~0 whenever x or y equals sign * inf, sampled at nodes."""
    edge = np.inf if sign > 0 else NEG_INF
    nodes = segment_nodes(NEG_INF, np.inf, resolution)
    level = np.full(nodes.shape, edge)
    v1 = np.max(np.abs(np.asarray(g.eval(level, nodes))))
    v2 = np.max(np.abs(np.asarray(g.eval(nodes, level))))
    return max(float(v1), float(v2)) <= tol


def gdf_identity_check(f, g: BVFunction, tol=1e-6):
    """Compare integral of f g with the Stieltjes forms over the full plane.

    When g vanishes on the +inf edges, the product integral equals both
    F d12 g and g d12 F; when g instead vanishes on the -inf edges, it
    equals g d12 F.  Raises when g vanishes on neither pair of edges.
    """
    F = _primitive_of(f)
    at_plus = _vanishes_on_edges(g, +1)
    at_minus = _vanishes_on_edges(g, -1)
    if not (at_plus or at_minus):
        raise ValueError("g must vanish on the +inf edges or on the -inf edges")

    fg = integrate_product(f, g, FULL_PLANE, tol=tol / 10)
    g_df = rs_plane_integral(
        g, F.eval, FULL_PLANE,
        jumps_x=getattr(g, "jump_x", ()), jumps_y=getattr(g, "jump_y", ()),
        tol=tol / 10,
    )
    report = {
        "mode": "vanishesAtPlusInf" if at_plus else "vanishesAtMinusInf",
        "productIntegral": fg.value,
        "gAgainstDF": g_df.value,
        "converged": fg.converged and g_df.converged,
    }
    values = [fg.value, g_df.value]
    if at_plus:
        f_dg = rs_plane_integral(F.eval, g, FULL_PLANE, tol=tol / 10)
        report["fAgainstDG"] = f_dg.value
        report["converged"] = report["converged"] and f_dg.converged
        values.append(f_dg.value)
    report["maxDiscrepancy"] = max(abs(p - q) for p in values for q in values)
    return report


def mean_value_point(f, g: BVFunction, tol=1e-6, resolution=256):
    """Point (xi, eta) with F(xi, eta) * Delta = double Stieltjes integral.

    Delta is the corner difference of g over the whole plane; g must have
    nonnegative cell corner differences (checked by sampling) so the ratio
    lies in the range of F.  Returns the first grid node in row-major chart
    order where |F - ratio| <= tol.
    """
    F = _primitive_of(f)
    xs = segment_nodes(NEG_INF, np.inf, 64, getattr(g, "jump_x", ()))
    ys = segment_nodes(NEG_INF, np.inf, 64, getattr(g, "jump_y", ()))
    X, Y = np.meshgrid(xs, ys)
    Gm = np.asarray(g.eval(X, Y), dtype=float)
    corner = Gm[:-1, :-1] + Gm[1:, 1:] - Gm[:-1, 1:] - Gm[1:, :-1]
    if np.min(corner) < -tol:
        raise ValueError("integrator has negative corner differences")

    integral = rs_plane_integral(F.eval, g, FULL_PLANE, tol=min(tol, 1e-9))
    delta = (
        g(NEG_INF, NEG_INF) + g(np.inf, np.inf) - g(NEG_INF, np.inf) - g(np.inf, NEG_INF)
    )
    if abs(delta) <= 1e-15:
        raise ValueError("the integrator has zero total corner mass")
    target = integral.value / delta

    nodes = segment_nodes(NEG_INF, np.inf, resolution)
    Xn, Yn = np.meshgrid(nodes, nodes)
    Fv = np.asarray(F.eval(Xn, Yn))
    hits = np.argwhere(np.abs(Fv - target) <= tol)
    if len(hits) == 0:
        raise ValueError("no grid node matches the mean value at this resolution")
    j, i = hits[0]
    return {
        "xi": float(nodes[i]),
        "eta": float(nodes[j]),
        "ratio": target,
        "integral": integral.value,
        "delta": delta,
        "residual": float(abs(Fv[j, i] - target)),
    }
