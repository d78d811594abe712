"""Convolution against BV kernels and L1 kernels, the half-space Poisson
kernel, and mollification of two-dimensional step functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extplane import (
    NEG_INF,
    POS_INF,
    FULL_PLANE,
    Interval2,
    axis_nodes,
    make_interval,
    uniform_grid,
)
from .integral import QuadResult, _primitive_of
from .primitive import (
    BVFunction,
    Distribution,
    GridSamplePrimitive,
    Primitive,
    translate_reflect_bv,
)
from .stieltjes import integrate_product

TWO_PI = 2.0 * math.pi


def poisson_kernel(x, y, z):
    """Half-space Poisson kernel z (x^2 + y^2 + z^2)^(-3/2) / (2 pi)."""
    if z <= 0:
        raise ValueError("z must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = z / (TWO_PI * (x**2 + y**2 + z**2) ** 1.5)
    return out if out.ndim else float(out)


def convolve_bv(f, g: BVFunction, p, tol=1e-6) -> QuadResult:
    """f convolved with a BV kernel, evaluated at the point p = (x, y).

    Finite p integrates f against the reflected translate (s, t) -> g(x - s,
    y - t) over the whole plane.  At a corner of the extended plane the limit
    is g(e1 inf, e2 inf) F(inf, inf); mixed boundary points (one coordinate
    infinite) have no closed-form limit and are rejected.
    """
    x, y = float(p[0]), float(p[1])
    xi, yi = math.isinf(x), math.isinf(y)
    if xi and yi:
        F = _primitive_of(f)
        val = float(g(x, y)) * float(F(POS_INF, POS_INF))
        return QuadResult(val, 0.0, 0, True, [])
    if xi or yi:
        raise ValueError("mixed boundary points (one coordinate infinite) are not supported")
    h = translate_reflect_bv(g, x, y)
    return integrate_product(f, h, FULL_PLANE, tol=tol)


class L1Kernel:
    """Absolutely integrable kernel with a declared finite effective support.

    Quadrature happens over the support; the mass outside is carried as
    tail_bound and folded into downstream error estimates.
    """

    def __init__(self, fn, effective_support: Interval2, tail_bound=0.0, label="l1kernel"):
        if not all(
            math.isfinite(v)
            for v in (effective_support.a, effective_support.b, effective_support.c, effective_support.d)
        ):
            raise ValueError("effective support must be finite")
        self._fn = fn
        self.effective_support = effective_support
        self.tail_bound = float(tail_bound)
        self.label = label
        self.l1_norm_estimate = self._estimate_l1()

    def eval(self, x, y):
        return self._fn(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def __call__(self, x, y):
        out = self.eval(x, y)
        return out if np.ndim(out) else float(out)

    def axis_points(self, level):
        """1-d Gauss-Legendre nodes/weights on the support x-range."""
        n = 32 * 2**level
        u, w = np.polynomial.legendre.leggauss(n)
        s = self.effective_support
        mid, half = (s.a + s.b) / 2.0, (s.b - s.a) / 2.0
        return mid + half * u, half * w

    def quad_points(self, level):
        """Tensor quadrature (xi, eta, weights) over the effective support."""
        px, wx = self.axis_points(level)
        s = self.effective_support
        midy, halfy = (s.c + s.d) / 2.0, (s.d - s.c) / 2.0
        n = 32 * 2**level
        u, w = np.polynomial.legendre.leggauss(n)
        py, wy = midy + halfy * u, halfy * w
        XI, ETA = np.meshgrid(px, py)
        W = np.outer(wy, wx)
        return XI.ravel(), ETA.ravel(), W.ravel()

    def _estimate_l1(self):
        xi, eta, w = self.quad_points(1)
        return float(np.sum(w * np.abs(np.asarray(self.eval(xi, eta)))))


class PoissonKernelL1(L1Kernel):
    """Poisson kernel at height z as an L1 kernel.

    Support is the square of half-width 500 z; the exact mass outside the
    enclosed disc is z / sqrt(R^2 + z^2), declared as the tail bound.
    Quadrature nodes use the substitution xi = z sinh(u), which flattens the
    kernel's radial decay.
    """

    def __init__(self, z, radius_factor=500.0):
        if z <= 0:
            raise ValueError("z must be positive")
        self.z = float(z)
        radius = radius_factor * self.z
        tail = self.z / math.sqrt(radius**2 + self.z**2)
        super().__init__(
            lambda x, y: poisson_kernel(x, y, self.z),
            make_interval(-radius, radius, -radius, radius),
            tail_bound=tail,
            label=f"poisson(z={z})",
        )

    def axis_points(self, level):
        n = 32 * 2**level
        radius = self.effective_support.b
        U = math.asinh(radius / self.z)
        u, w = np.polynomial.legendre.leggauss(n)
        u = U * u
        return self.z * np.sinh(u), U * w * self.z * np.cosh(u)

    def quad_points(self, level):
        p, w = self.axis_points(level)
        XI, ETA = np.meshgrid(p, p)
        W = np.outer(w, w)
        return XI.ravel(), ETA.ravel(), W.ravel()


def _convolved_values(eval2, grid_xs, xi, eta, w, chunk=256):
    """H[j, i] = sum_k w_k eval2(x_i - xi_k, y_j - eta_k) on the grid."""
    X, Y = np.meshgrid(grid_xs, grid_xs)
    H = np.zeros(X.shape)
    for start in range(0, len(w), chunk):
        xs = X[None, :, :] - xi[start : start + chunk, None, None]
        ys = Y[None, :, :] - eta[start : start + chunk, None, None]
        vals = np.asarray(eval2(xs, ys), dtype=float)
        H += np.tensordot(w[start : start + chunk], vals, axes=(0, 0))
    return H


def convolve_l1(f, kernel: L1Kernel, resolution=32, tol=1e-5, max_levels=3,
                normalize=False) -> Distribution:
    """Convolution with an L1 kernel, returned as a grid-sampled distribution.

    The output primitive is H(x, y) = integral of kernel(xi, eta)
    F(x - xi, y - eta), evaluated by tensor quadrature over the kernel's
    effective support and refined until the grid sup-difference meets tol.
    With normalize=True the quadrature weights are rescaled so the discrete
    kernel mass is exactly 1 (for probability kernels).
    """
    F = _primitive_of(f)
    xs = axis_nodes(resolution)
    prev = None
    converged = False
    err = float("inf")
    H = None
    for level in range(max_levels + 1):
        xi, eta, w = kernel.quad_points(level)
        if normalize:
            mass = float(np.sum(w * np.asarray(kernel.eval(xi, eta))))
            w = w / mass
        kv = w * np.asarray(kernel.eval(xi, eta), dtype=float)
        H = _convolved_values(F.eval, xs, xi, eta, kv, chunk=max(1, 2**18 // len(xs) ** 2))
        if prev is not None:
            err = float(np.max(np.abs(H - prev)))
            if err <= tol:
                converged = True
                break
        prev = H
    grid = uniform_grid(resolution)
    prim = GridSamplePrimitive(grid, H, f"({F.label})*({kernel.label})")
    dist = Distribution(prim)
    dist.converged = converged
    dist.error_estimate = err + kernel.tail_bound * float(np.max(np.abs(H)) + 1.0)
    return dist


@dataclass
class StepFunction2:
    """Step function on half-open cells (p_{i-1}, p_i] x (q_{j-1}, q_j].

    nodes include the infinite endpoints; values[j, i] is the value on cell
    (i+1, j+1).  Points with an infinite negative coordinate belong to no
    cell and evaluate to 0.
    """

    nodes_x: np.ndarray
    nodes_y: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.nodes_x = np.asarray(self.nodes_x, dtype=float)
        self.nodes_y = np.asarray(self.nodes_y, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.nodes_y) - 1, len(self.nodes_x) - 1):
            raise ValueError("values shape must be (cells_y, cells_x)")

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        x, y = np.broadcast_arrays(x, y)
        i = np.clip(np.searchsorted(self.nodes_x, x, side="left") - 1, 0, self.values.shape[1] - 1)
        j = np.clip(np.searchsorted(self.nodes_y, y, side="left") - 1, 0, self.values.shape[0] - 1)
        out = self.values[j, i]
        return np.where(np.isneginf(x) | np.isneginf(y), 0.0, out)

    def __call__(self, x, y):
        out = self.eval(x, y)
        return out if np.ndim(out) else float(out)

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))


def step_approximate(F: Primitive, n: int) -> StepFunction2:
    """Step approximation of a primitive on the chart-uniform n-grid.

    Each cell takes F's value at its upper-right node; the first row and
    column of cells (those reaching down to -inf) are forced to 0.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    nodes = axis_nodes(n)
    X, Y = np.meshgrid(nodes[1:], nodes[1:])
    vals = np.asarray(F.eval(X, Y), dtype=float)
    vals[0, :] = 0.0
    vals[:, 0] = 0.0
    return StepFunction2(nodes, nodes.copy(), vals)


def mollify_step(sigma: StepFunction2, z, resolution=64, level=2) -> GridSamplePrimitive:
    """Poisson mollification of a step function, sampled on a chart grid.

    Interior and boundary nodes use the same convolution formula: at an
    infinite coordinate the step function's own boundary limit enters, so
    the boundary rows are the one-dimensional mollifications of the edge
    sections and the (inf, inf) corner reproduces sigma(inf, inf) exactly
    (weights are normalized to unit mass).
    """
    if z <= 0:
        raise ValueError("z must be positive")
    kernel = PoissonKernelL1(z)
    xi, eta, w = kernel.quad_points(level)
    kv = w * np.asarray(kernel.eval(xi, eta), dtype=float)
    kv = kv / float(np.sum(kv))
    xs = axis_nodes(resolution)
    H = _convolved_values(sigma.eval, xs, xi, eta, kv, chunk=max(1, 2**18 // len(xs) ** 2))
    grid = uniform_grid(resolution)
    return GridSamplePrimitive(grid, H, f"mollified(z={z})")
