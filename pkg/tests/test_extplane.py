import math

import numpy as np
import pytest

from cpintegral.extplane import (
    DEFAULT_CHART,
    FULL_PLANE,
    NEG_INF,
    POS_INF,
    Interval2,
    axis_nodes,
    corner_points,
    ext,
    make_interval,
    uniform_grid,
)


def test_ext_accepts_numbers_and_infinities():
    assert ext(3) == 3.0
    assert ext(POS_INF) == math.inf
    assert ext(NEG_INF) == -math.inf
    with pytest.raises(ValueError):
        ext(float("nan"))


def test_chart_exact_at_infinity():
    assert DEFAULT_CHART.forward(POS_INF) == 1.0
    assert DEFAULT_CHART.forward(NEG_INF) == -1.0
    assert DEFAULT_CHART.inverse(1.0) == POS_INF
    assert DEFAULT_CHART.inverse(-1.0) == NEG_INF
    assert DEFAULT_CHART.forward(0.0) == 0.0
    assert DEFAULT_CHART.inverse(0.0) == 0.0


def test_chart_roundtrip_finite():
    ts = np.array([-100.0, -1.0, -0.25, 0.5, 2.0, 1e4])
    back = DEFAULT_CHART.inverse(DEFAULT_CHART.forward(ts))
    assert np.allclose(back, ts, rtol=1e-12)


def test_chart_monotone():
    ts = np.linspace(-50, 50, 101)
    us = DEFAULT_CHART.forward(ts)
    assert np.all(np.diff(us) > 0)
    assert np.all(us > -1) and np.all(us < 1)


def test_make_interval_normalization_and_sign():
    iv = make_interval(1, 0, 0, 1)
    assert (iv.a, iv.b, iv.c, iv.d) == (0.0, 1.0, 0.0, 1.0)
    assert iv.sign == -1
    assert make_interval(1, 0, 1, 0).sign == 1
    assert make_interval(0, 1, 0, 1).sign == 1


def test_make_interval_degenerate():
    assert make_interval(2, 2, 0, 1).degenerate
    assert make_interval(0, 1, -3, -3).degenerate
    assert not make_interval(0, 1, 0, 1).degenerate


def test_full_plane_and_corners():
    assert FULL_PLANE.a == NEG_INF and FULL_PLANE.d == POS_INF
    pts = corner_points(make_interval(0, 1, 2, 3))
    assert pts == ((0.0, 2.0), (1.0, 3.0), (0.0, 3.0), (1.0, 2.0))


def test_axis_nodes_shape_and_endpoints():
    xs = axis_nodes(4)
    assert len(xs) == 5
    assert xs[0] == NEG_INF and xs[-1] == POS_INF
    # chart-uniform: u = -1, -1/2, 0, 1/2, 1 maps to these exact points
    assert list(xs[1:4]) == [-1.0, 0.0, 1.0]
    assert np.all(np.diff(xs) > 0)


def test_axis_nodes_dyadic_nesting():
    coarse = set(axis_nodes(64).tolist())
    fine = set(axis_nodes(128).tolist())
    assert coarse <= fine


def test_uniform_grid():
    g = uniform_grid(8)
    assert len(g.xs) == 9 and len(g.ys) == 9
    assert g.xs[0] == NEG_INF and g.ys[-1] == POS_INF
