import math

import numpy as np
import pytest

import worldsheet as ws


def test_circle_collapses_at_quarter_period():
    g = ws.circle()
    pts = g.slice(g.E0 / 4, 256)
    assert pts.shape == (256, 2)
    assert np.abs(pts).max() <= 1e-9
    radii = np.linalg.norm(g.slice(0.3, 64), axis=1)
    assert np.allclose(radii, math.cos(0.3), atol=1e-12)


def test_constraints_hold_for_random_gauge():
    r = ws.constraint_residuals(ws.random_fourier(3, 2), nt=40, nx=40)
    assert r["max_norm_residual"] <= 1e-9
    assert 3.5 <= r["richardson_ratio"] <= 4.5


def test_hopf_is_immersed_and_linked():
    g = ws.hopf()
    immersed, margin = ws.is_global_immersion(g)
    assert immersed
    assert margin == pytest.approx(math.sqrt(2), abs=1e-9)
    assert ws.find_antipodal_pairs(g)["empty"]
    assert abs(ws.linking_number(g)) == 1


def test_planar_gauges_are_singular():
    rep = ws.find_antipodal_pairs(ws.random_fourier(2, 7), grid_n=128)
    assert rep["pair_count"] > 0
    assert all(c["sing_star"] in ("yes", "no", "undetermined") for c in rep["components"])


def test_meridian_winding_is_zero():
    assert ws.winding_number(ws.meridian_loops()) == 0


def test_box_count_of_a_segment():
    x = np.linspace(0.0, 1.0, 10001)
    est = ws.box_count(np.column_stack([x, 0.5 * x]), ws.dyadic_ladder())
    assert 0.95 <= est["slope"] <= 1.05


def test_nonuniqueness_distances():
    d = ws.nonuniqueness_distances([0.0, 0.5])
    assert d[0] <= 1e-6
    assert d[1] >= 0.01


def test_gauge_from_spec_and_errors():
    g = ws.gauge_from_spec({"builder": "oval", "eps": 0.1})
    assert g.dim == 2
    with pytest.raises(ws.SchemaError):
        ws.gauge_from_spec({"builder": "no_such_builder"})
    with pytest.raises(ws.PreconditionError):
        ws.winding_number(ws.hopf())


def test_run_scenario():
    code, report = ws.run_scenario({"name": "t", "task": "detect", "gauge": {"builder": "hopf"}}, grid=128)
    assert code == 0
    assert report["immersed"] is True
    code, report = ws.run_scenario({"name": "t", "task": "dimension", "gauge": {"builder": "hopf"}}, grid=64)
    assert code == 3
