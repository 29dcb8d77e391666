"""Smoke tests for the python bindings."""

import json
import math

import pytest

import esdg


def test_mesh_and_projection():
    mesh = esdg.build_mesh(-1.0, 1.0, 10)
    assert mesh.n_cells == 10
    assert mesh.h == pytest.approx(0.2)
    u = esdg.project_l2(lambda x: 1.0 + x * x, mesh, 2)
    # quadratic is reproduced exactly
    assert u(0.35) == pytest.approx(1.0 + 0.35**2, abs=1e-12)
    assert esdg.mass(u) == pytest.approx(2.0 + 2.0 / 3.0, abs=1e-12)


def test_model_and_flux_helpers():
    model = esdg.make_model("porous_medium", {"m": 2.0})
    assert model.f(3.0) == pytest.approx(6.0)
    assert esdg.gamma_bound(2, 0.25) == pytest.approx(3.5)
    assert esdg.gamma_bound(1, 0.7) == pytest.approx(2.0)
    a1, a2, a3 = esdg.alpha_coefficients(2.0, 1.0 / 6.0)
    assert a1 + a2 + a3 == pytest.approx(2.0)
    assert esdg.cfl_positivity(2.0, 1.0 / 6.0, 1.0) == pytest.approx(0.0625)


def test_limiter_restores_positivity():
    # positive cell averages with pointwise undershoots below zero
    mesh = esdg.build_mesh(-1.0, 1.0, 2)
    u = esdg.project_l2(lambda x: x * x - 0.2, mesh, 2)
    limited = esdg.reconstruct_positive(u, 0.0)
    for j in range(mesh.n_cells):
        for xi in (-1.0, 0.0, 1.0):
            assert limited.eval(j, xi) >= -1e-13
        assert limited.cell_average(j) == pytest.approx(u.cell_average(j), abs=1e-14)


def test_run_solves_and_dissipates_entropy():
    config = {
        "preset": "example1",
        "n_cells": 20,
        "time": {"t_end": 0.05},
    }
    out = esdg.run(json.dumps(config))
    assert out["final_time"] == pytest.approx(0.05)
    assert out["entropy_violations"] == 0
    assert out["max_mass_drift"] < 1e-12
    assert out["entropy"][-1] <= out["entropy"][0] + 1e-12
    assert out["min_cell_value_overall"] >= -1e-12


def test_barenblatt_exact_value():
    assert esdg.barenblatt(2.0, 0.0, 1.0) == pytest.approx(0.2, abs=1e-12)


def test_bad_config_raises():
    with pytest.raises(ValueError):
        esdg.run(json.dumps({"preset": "no_such_preset"}))
