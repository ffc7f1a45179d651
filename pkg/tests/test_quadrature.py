import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bosejump.errors import ConvergenceError, DomainError, EvaluationError
from bosejump.quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate,
    integrate_pv,
    integrate_semi_infinite,
)


def brute_pv(f, pole, upper, n):
    """Midpoint sums on cells that have the pole as an edge, Richardson-extrapolated.

    The cells next to the pole are mirror images, so the 1/(t - p) parts cancel
    pairwise and the pole itself is never sampled.
    """

    def midpoint(m):
        h = pole / m
        k_right = int(math.ceil((upper - pole) / h))
        left = pole - (np.arange(m) + 0.5) * h
        right = pole + (np.arange(k_right) + 0.5) * h
        t = np.concatenate([left, right])
        return h * math.fsum(f(t) / (t - pole))

    return (4 * midpoint(2 * n) - midpoint(n)) / 3


def test_gaussian_half_line():
    assert integrate_semi_infinite(lambda t: np.exp(-t * t)) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)


def test_gaussian_second_moment():
    val = integrate_semi_infinite(lambda t: t * t * np.exp(-t * t))
    assert val == pytest.approx(math.sqrt(math.pi) / 4, rel=1e-12)


def test_bose_occupancy_against_series():
    # f0 at alpha = -1 from sum_k e^(-k) / sqrt(k)
    z = math.exp(-1.0)
    series = math.sqrt(math.pi) / 2 * math.fsum(z**k / math.sqrt(k) for k in range(1, 80))
    val = integrate_semi_infinite(lambda t: 1 / (np.exp(t * t + 1) - 1))
    assert val == pytest.approx(series, rel=1e-10)


def test_pv_of_constant_symmetric_interval():
    assert integrate_pv(lambda t: np.ones_like(t), 1.0, upper=2.0) == pytest.approx(0.0, abs=1e-14)


def test_pv_of_constant_log():
    val = integrate_pv(lambda t: np.ones_like(t), 0.3, upper=2.0)
    assert val == pytest.approx(math.log(1.7 / 0.3), rel=1e-13)


@pytest.mark.parametrize("f, pole", [
    (lambda t: t * np.exp(-t * t), 1.0),
    (lambda t: np.exp(-t * t), 0.5),
    (lambda t: t * t / (np.exp(t * t + 1) - 1), 0.8),
])
def test_pv_against_riemann_oracle(f, pole):
    oracle = brute_pv(f, pole, 12.0, 20_000)
    assert integrate_pv(f, pole) == pytest.approx(oracle, abs=1e-9)


def test_pv_dawson_identity():
    # PV int_R e^(-t^2)/(t - x) dt = -2 sqrt(pi) F(x); fold onto the half-line
    from scipy.special import dawsn

    x = 1.3
    val = integrate_pv(lambda t: 2 * x * np.exp(-t * t) / (t + x), x)
    assert val == pytest.approx(-2 * math.sqrt(math.pi) * dawsn(x), rel=1e-10)


def test_tighter_tolerance_never_worse():
    f = lambda t: t * np.exp(-t * t)
    oracle = brute_pv(f, 1.0, 12.0, 40_000)
    gaps = []
    for tol in (1e-4, 5e-5, 1e-6, 5e-7, 1e-8):
        spec = QuadratureSpec(abs_tol=tol, rel_tol=tol)
        gaps.append(abs(integrate_pv(f, 1.0, spec) - oracle))
    for coarse, fine in zip(gaps, gaps[1:]):
        assert fine <= coarse + 1e-12


@given(
    st.floats(-3, 3),
    st.floats(-3, 3),
    st.floats(0.05, 4.0),
)
def test_pv_is_linear(a, b, pole):
    f1 = lambda t: np.exp(-t * t)
    f2 = lambda t: t * np.exp(-2 * t * t)
    combined = integrate_pv(lambda t: a * f1(t) + b * f2(t), pole)
    parts = a * integrate_pv(f1, pole) + b * integrate_pv(f2, pole)
    assert combined == pytest.approx(parts, abs=1e-8)


@given(st.floats(0.0, 5.0), st.floats(0.1, 5.0))
def test_integral_is_additive(a, w):
    f = lambda t: np.cos(t) * np.exp(-0.1 * t)
    m = a + w / 3
    whole = integrate(f, a, a + w)
    assert whole == pytest.approx(integrate(f, a, m) + integrate(f, m, a + w), abs=1e-9)
    assert integrate(f, a + w, a) == pytest.approx(-whole, abs=1e-12)


def test_complex_integrand():
    val = integrate(lambda t: np.exp(1j * t), 0.0, math.pi)
    assert val == pytest.approx(2j, abs=1e-12)


def test_pole_must_be_inside():
    with pytest.raises(DomainError):
        integrate_pv(lambda t: t, 0.0)
    with pytest.raises(DomainError):
        integrate_pv(lambda t: t, 3.0, upper=2.0)


def test_non_finite_integrand():
    with pytest.raises(EvaluationError):
        integrate(lambda t: np.where(t > 0.5, np.nan, t), 0.0, 1.0)


def test_node_budget_is_enforced():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_nodes=100)
    with pytest.raises(ConvergenceError) as exc:
        integrate(lambda t: np.sqrt(np.abs(t - 0.3)), 0.0, 1.0, spec)
    assert exc.value.estimate == pytest.approx(0.5 * 0.3**1.5 / 0.75 + 0.7**1.5 / 1.5, rel=1e-2)


def test_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(abs_tol=1e-12, tail_cutoff=4.0)
    assert DEFAULT_SPEC.scaled(10).abs_tol == pytest.approx(1e-9)
