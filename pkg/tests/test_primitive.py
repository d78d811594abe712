import math

import numpy as np
import pytest

from cpintegral.extplane import NEG_INF, POS_INF, axis_nodes, make_interval
from cpintegral.primitive import (
    CATALOG_BV,
    CATALOG_PRIMITIVES,
    ClosedFormPrimitive,
    Distribution,
    GridSamplePrimitive,
    approx_identity,
    catalog_bv,
    catalog_primitive,
    corrected_primitive,
    distribution,
    export_grid_csv,
    export_grid_json,
    import_grid_csv,
    import_grid_json,
    primitives_equal,
    sample_primitive,
    translate_reflect_bv,
    validate_primitive,
)


def test_catalog_lists_complete():
    assert len(CATALOG_PRIMITIVES) == 11
    assert len(CATALOG_BV) == 6


@pytest.mark.parametrize("name", CATALOG_PRIMITIVES)
def test_catalog_primitives_validate(name):
    report = validate_primitive(catalog_primitive(name))
    assert report["passed"], report


def test_validation_rejects_nonvanishing_boundary():
    # (x+y)/(1+|x+y|) is continuous on the plane but tends to -1 on the
    # -inf edges; the boundary check must reject it
    def fn(x, y):
        with np.errstate(invalid="ignore"):
            s = np.asarray(x, dtype=float) + np.asarray(y, dtype=float)
            return s / (1.0 + np.abs(s))

    bad = ClosedFormPrimitive(fn, "shifted-ramp")
    assert not validate_primitive(bad)["passed"]


def test_validation_rejects_arctan_product_without_correction():
    # arctan(x*y) hits the indeterminate inf*0 corner and fails to vanish
    # along the -inf edges
    def fn(x, y):
        with np.errstate(invalid="ignore"):
            p = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
        return np.arctan(np.nan_to_num(p, nan=0.0, posinf=np.inf, neginf=-np.inf))

    bad = ClosedFormPrimitive(fn, "arctan-product")
    assert not validate_primitive(bad)["passed"]


def test_closed_form_rejects_nonfinite_values():
    bad = ClosedFormPrimitive(lambda x, y: np.asarray(x, dtype=float), "identity")
    with pytest.raises(ArithmeticError):
        bad(POS_INF, 0.0)


def test_corrected_primitive_vanishes_on_edges():
    prim = corrected_primitive(lambda x, y: np.exp(-np.hypot(x, y)) + 0.5, "shifted")
    ys = axis_nodes(32)
    assert np.max(np.abs(prim.eval(np.full(ys.shape, NEG_INF), ys))) <= 1e-12
    assert np.max(np.abs(prim.eval(ys, np.full(ys.shape, NEG_INF)))) <= 1e-12


def test_grid_sample_matches_at_nodes():
    F = catalog_primitive("prodArctan")
    S = sample_primitive(F, 64)
    xs = axis_nodes(64)
    X, Y = np.meshgrid(xs, xs)
    # chart roundtrip may be one ulp off, so node evaluation is near-exact
    assert np.max(np.abs(np.asarray(S.eval(X, Y)) - np.asarray(F.eval(X, Y)))) < 1e-12


def test_grid_sample_interpolates_between_nodes():
    F = catalog_primitive("prodArctan")
    S = sample_primitive(F, 256)
    for x, y in [(0.3, 0.7), (-2.1, 5.0), (100.0, -0.01)]:
        assert abs(S(x, y) - F(x, y)) < 1e-3


def test_primitives_equal():
    F = catalog_primitive("prodArctan")
    assert primitives_equal(F, sample_primitive(F, 64), resolutions=(16, 32, 64))
    assert not primitives_equal(F, catalog_primitive("zero"))


def test_grid_json_roundtrip(tmp_path):
    S = sample_primitive(catalog_primitive("expRadial"), 32)
    path = tmp_path / "grid.json"
    export_grid_json(S, path)
    back = import_grid_json(path)
    assert np.array_equal(back.values, S.values)
    assert np.array_equal(back.grid.xs, S.grid.xs)


def test_grid_csv_roundtrip(tmp_path):
    S = sample_primitive(catalog_primitive("gauss2"), 16)
    path = tmp_path / "grid.csv"
    export_grid_csv(S, path)
    back = import_grid_csv(path)
    assert np.allclose(back.values, S.values, rtol=0, atol=1e-15)


def test_quadrant_indicator_values():
    g = catalog_bv("quadrantIndicator", x=0.0, y=0.0)
    assert g(-1.0, -1.0) == 1.0
    assert g(0.0, -1.0) == 0.0
    assert g(NEG_INF, NEG_INF) == 1.0
    assert g(POS_INF, -5.0) == 0.0


def test_interval_indicator_values():
    g = catalog_bv("intervalIndicator", a=0, b=1, c=0, d=1)
    assert g(0.5, 0.5) == 1.0
    assert g(0.0, 1.0) == 1.0  # closed interval
    assert g(1.5, 0.5) == 0.0


def test_approx_identity_profile():
    g = approx_identity(4)
    assert g(NEG_INF, NEG_INF) == 0.0
    assert g(0.0, 0.0) == 1.0
    assert g(-4.0, 0.0) == 0.0
    assert g(-3.5, 0.0) == 0.5
    assert g(POS_INF, POS_INF) == 1.0


def test_translate_reflect_bv():
    g = catalog_bv("quadrantIndicator", x=0.0, y=0.0)
    h = translate_reflect_bv(g, 2.0, 3.0)
    # h(s, t) = g(2 - s, 3 - t)
    assert h(3.0, 4.0) == g(-1.0, -1.0) == 1.0
    assert h(1.0, 4.0) == g(1.0, -1.0) == 0.0
    assert h.jump_x and h.jump_y


def test_distribution_wrapper():
    f = distribution("prodArctan")
    assert isinstance(f, Distribution)
    assert f.F(POS_INF, POS_INF) == 1.0
    assert f.label == "prodArctan"


def test_sine_strip_norm_scale():
    F = catalog_primitive("sineStrip", n=4)
    assert F(POS_INF, POS_INF) == 0.0  # cos(8 pi) = 1 exactly
    assert abs(F(math.pi / 4, 1.0) - 0.5) < 1e-12


def test_unknown_catalog_names_raise():
    with pytest.raises(ValueError):
        catalog_primitive("nope")
    with pytest.raises(ValueError):
        catalog_bv("nope")
