import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bosejump import PhysicalParams, make_context
from bosejump.dispersion import v1
from bosejump.errors import DomainError
from bosejump.jump import (
    alpha0_shift,
    b_coefficient,
    c_coefficient,
    collision_frequency_from_diffusion,
    diffusion_coefficient,
    dimensional_jump,
    jump_coefficients,
    k_coefficient,
    mass_flow,
)

SQRT_PI = math.sqrt(math.pi)
HE4 = PhysicalParams(mass=6.6464731e-27, temperature=2.0, collision_frequency=5e10)


def classical_jump(q):
    return 1.0162 + SQRT_PI * (1 - q) / q


@pytest.mark.parametrize("alpha", [-0.1, -0.5, -1.0, -3.0, -5.0])
def test_shift_dual_form_bose(alpha):
    ctx = make_context(alpha, "bose")
    explicit = -2 * ctx.l / math.log(1 - math.exp(alpha))
    assert alpha0_shift(ctx, 1.0) == pytest.approx(explicit, rel=1e-9)
    assert 4 * ctx.g4 / (3 * ctx.g3) == pytest.approx(explicit, rel=1e-9)


def test_shift_classical_moments():
    # g3 = e^a / 2 and g4 = 3 sqrt(pi) e^a / 8 give (4/3) g4 / g3 = sqrt(pi)
    ctx = make_context(-20.0, "classical")
    assert ctx.g3 == pytest.approx(math.exp(-20.0) / 2, rel=1e-12)
    assert ctx.g4 == pytest.approx(3 * SQRT_PI / 8 * math.exp(-20.0), rel=1e-10)
    assert alpha0_shift(ctx, 1.0) == pytest.approx(SQRT_PI, rel=1e-10)


def test_shift_scales_with_gradient_and_q(bose1):
    base = alpha0_shift(bose1, 1.0)
    assert alpha0_shift(bose1, 0.25, G_alpha=3.0) == pytest.approx(12 * base, rel=1e-14)


def test_b_coefficient(bose1):
    assert b_coefficient(bose1, 1.0) == 0.0
    expected = 2 * bose1.l / -math.log(1 - math.exp(-1.0))
    assert b_coefficient(bose1, 0.5) == pytest.approx(expected, rel=1e-12)
    assert b_coefficient(bose1, 0.5) == pytest.approx(1.6556193148, rel=1e-9)


@given(
    st.floats(-6.0, -0.05),
    st.floats(0.01, 0.99),
    st.sampled_from(["bose", "fermi", "classical"]),
)
def test_b_positive(alpha, q, statistics):
    assert b_coefficient(make_context(alpha, statistics), q) > 0


@pytest.mark.parametrize("q", [0.0, -0.1, 1.01])
def test_q_domain(q, bose1):
    with pytest.raises(DomainError):
        c_coefficient(bose1, q)


@pytest.mark.parametrize("statistics", ["bose", "fermi"])
@pytest.mark.parametrize("alpha", [-0.5, -3.0])
def test_c_decreasing_in_q(alpha, statistics):
    ctx = make_context(alpha, statistics)
    cs = [c_coefficient(ctx, q) for q in np.linspace(0.1, 1.0, 10)]
    assert np.all(np.diff(cs) < 0)
    assert cs[-1] == v1(ctx)


@pytest.mark.parametrize("q", [0.2, 0.5, 1.0])
def test_classical_regression(q):
    ctx = make_context(-20.0, "classical")
    assert c_coefficient(ctx, q) == pytest.approx(classical_jump(q), abs=1e-4)


@pytest.mark.parametrize("statistics", ["bose", "fermi"])
@pytest.mark.parametrize("q", [0.2, 0.5, 1.0])
def test_degenerate_statistics_reach_classical(statistics, q):
    ctx = make_context(-12.0, statistics)
    assert c_coefficient(ctx, q) == pytest.approx(classical_jump(q), abs=1e-2)


@pytest.mark.parametrize("alpha", [-0.5, -1.0, -3.0])
def test_k_over_c(alpha):
    ctx = make_context(alpha, "bose")
    assert k_coefficient(ctx, 0.7) / c_coefficient(ctx, 0.7) == pytest.approx(2 * ctx.f0 / ctx.l, rel=1e-14)


def test_k_classical_ratio():
    # f0 and l share the classical limit e^a sqrt(pi)/2, so K approaches 2 C
    ctx = make_context(-20.0, "classical")
    assert k_coefficient(ctx, 0.5) == pytest.approx(2 * c_coefficient(ctx, 0.5), rel=1e-10)


def test_coefficient_bundle(bose1):
    j = jump_coefficients(bose1, 0.5)
    assert j.c_coeff == pytest.approx(j.v1 + j.b_over_G, rel=1e-15)
    assert j.k_coeff == pytest.approx(2 * bose1.f0 / bose1.l * j.c_coeff, rel=1e-15)
    assert j.c_n == pytest.approx(j.c_coeff * bose1.g2, rel=1e-15)
    assert j.alpha0_shift_over_G == pytest.approx(j.b_over_G / 0.5, rel=1e-14)
    assert j.c_coeff == pytest.approx(2.61743446153, rel=1e-10)


def test_diffusion_classical_limit():
    ctx = make_context(-20.0, "classical")
    ref = HE4.kT / (HE4.mass * HE4.collision_frequency)
    assert diffusion_coefficient(ctx, HE4) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("statistics", ["bose", "fermi"])
def test_diffusion_ratio(statistics):
    ctx = make_context(-1.0, statistics)
    ratio = diffusion_coefficient(ctx, HE4) / (HE4.kT / (HE4.mass * HE4.collision_frequency))
    assert ratio == pytest.approx(ctx.l / ctx.f0, rel=1e-10)


def test_collision_frequency_inversion(bose1):
    # 1e-3 cm^2/s at 2 K gives a finite, positive collision frequency
    nu = collision_frequency_from_diffusion(bose1, 1e-7, HE4.mass, 2.0)
    assert 0 < nu < math.inf
    params = PhysicalParams(mass=HE4.mass, temperature=2.0, collision_frequency=nu)
    assert diffusion_coefficient(bose1, params) == pytest.approx(1e-7, rel=1e-12)


@given(st.floats(-6.0, -0.05), st.floats(-10.0, 10.0), st.sampled_from(["bose", "fermi"]))
def test_mass_flow_half_gradient(alpha, G, statistics):
    flow = mass_flow(make_context(alpha, statistics), HE4, G)
    assert flow.w_x == pytest.approx(G / 2, rel=1e-9, abs=1e-300)
    assert flow.u_x == pytest.approx(flow.w_x * HE4.thermal_speed, rel=1e-14)


def test_dimensional_jump(bose1):
    grad = 1e-20  # J/m
    d = dimensional_jump(bose1, 0.5, HE4, grad)
    assert d == pytest.approx(c_coefficient(bose1, 0.5) * HE4.mean_free_path * grad, rel=1e-12)
    assert dimensional_jump(bose1, 0.5, HE4, 0.0) == 0.0
    classical = make_context(-20.0, "classical")
    assert dimensional_jump(classical, 1.0, HE4, grad) == pytest.approx(1.0162 * HE4.mean_free_path * grad, rel=1e-4)
