import io
from dataclasses import replace

import numpy as np
import pytest

from bosejump import make_context
from bosejump.direct_solver import DirectSolverConfig, ordinates, relative_gap, solve_halfspace
from bosejump.errors import ConsistencyError, DomainError
from bosejump.jump import c_coefficient
from bosejump.profiles import chem_potential_profile

COARSE = DirectSolverConfig(n_ordinates=32, x_max=20.0, n_cells=200, mu_max=5.0)


def test_ordinates_symmetric(bose1):
    mu, w = ordinates(bose1, DirectSolverConfig())
    assert np.array_equal(mu, -mu[::-1])
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    assert abs(w @ mu) < 1e-12
    assert abs(w @ mu**3) < 1e-12
    # second moment of f / (2 f0) over the line is l / (2 f0)
    assert w @ mu**2 == pytest.approx(bose1.l / (2 * bose1.f0), rel=1e-9)


def test_ordinates_must_resolve_tail(bose1):
    with pytest.raises(ConsistencyError):
        ordinates(bose1, DirectSolverConfig(mu_max=2.0))


@pytest.mark.parametrize("kwargs", [{"x_max": 10.0}, {"n_ordinates": 31}, {"n_ordinates": 8}, {"n_cells": 5}])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        DirectSolverConfig(**kwargs)


def test_zero_gradient(bose1):
    res = solve_halfspace(bose1, 0.5, G_alpha=0.0, config=COARSE)
    assert res.jump_over_G == 0.0
    assert np.max(np.abs(res.a_profile)) < 1e-12


def test_profile_matches_analytic(bose1, bose1_table):
    res = solve_halfspace(bose1, 0.5, config=COARSE)
    assert res.converged
    # diamond differencing oscillates in the first cells, where dx/mu is large for slow ordinates
    for k in (5, 20, 50, 150):
        exact = chem_potential_profile(res.x[k], bose1, 0.5, bose1_table)
        assert res.a_profile[k] == pytest.approx(exact, abs=5e-4)


def test_linear_in_gradient(bose1):
    one = solve_halfspace(bose1, 0.5, G_alpha=1.0, config=COARSE)
    two = solve_halfspace(bose1, 0.5, G_alpha=2.5, config=COARSE)
    assert two.jump_over_G == pytest.approx(one.jump_over_G, rel=1e-9)
    assert np.allclose(two.a_profile, 2.5 * one.a_profile, rtol=1e-9)


def test_flux_jump_insensitive_to_mesh(bose1):
    # the zero-flux closure is already accurate on a coarse mesh
    exact = c_coefficient(bose1, 1.0)
    for n in (50, 100):
        res = solve_halfspace(bose1, 1.0, config=replace(COARSE, n_cells=n))
        assert res.flux_jump_over_G == pytest.approx(exact, abs=1e-5)


@pytest.mark.parametrize("alpha, statistics", [(-1.0, "fermi"), (-20.0, "classical")])
def test_matches_analytic_jump(alpha, statistics):
    ctx = make_context(alpha, statistics)
    res = solve_halfspace(ctx, 1.0)
    assert res.converged
    assert relative_gap(res.jump_over_G, c_coefficient(ctx, 1.0)) < 1e-3


def test_profile_csv(bose1):
    res = solve_halfspace(bose1, 1.0, config=COARSE)
    buf = io.StringIO()
    res.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,a_over_G"
    assert len(lines) == COARSE.n_cells + 1
