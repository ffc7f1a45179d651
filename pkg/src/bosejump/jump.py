"""Jump coefficients and transport quantities.

``q`` is the evaporation coefficient and ``G_alpha`` the far-field gradient
of the dimensionless chemical potential.  All ``*_over_G`` quantities are
per unit ``G_alpha``.
"""

import math
from dataclasses import dataclass

from scipy import constants

from .dispersion import v1
from .errors import ConsistencyError, DomainError
from .kernels import g3_closed_form

DUAL_FORM_RTOL = 1e-9
Q_MIN_CLI = 0.05


def check_q(q):
    if not (0 < q <= 1):
        raise DomainError(f"evaporation coefficient must lie in (0, 1], got {q}")
    return float(q)


def alpha0_shift(ctx, q, G_alpha=1.0):
    """Chemical potential of the re-emitted (non-condensed) molecules minus the saturation value.

    Computed from the g-moments as ``4 g4 / (3 g3) * G / q`` and from the
    explicit logarithmic form (``-2 l / ln(1 - e^alpha)`` for Bose); the two
    must agree.
    """
    q = check_q(q)
    from_moments = 4 * ctx.g4 / (3 * ctx.g3) * G_alpha / q
    explicit = ctx.l / g3_closed_form(ctx.alpha, ctx.statistics) * G_alpha / q
    if abs(from_moments - explicit) > DUAL_FORM_RTOL * abs(explicit):
        raise ConsistencyError(
            f"alpha0 shift: moment form {from_moments!r} vs explicit form {explicit!r}"
        )
    return explicit


def b_coefficient(ctx, q, G_alpha=1.0):
    """Value of the outgoing distribution at the wall, ``(1 - q) * alpha0_shift``; zero at ``q = 1``."""
    q = check_q(q)
    if q == 1:
        return 0.0
    return (1 - q) * alpha0_shift(ctx, q, G_alpha)


def c_coefficient(ctx, q):
    """Chemical potential jump per unit gradient, in mean free paths."""
    return v1(ctx) + b_coefficient(ctx, q, 1.0)


def k_coefficient(ctx, q):
    """Jump coefficient for the form written with ``D12`` instead of the mean free path."""
    return 2 * ctx.f0 / ctx.l * c_coefficient(ctx, q)


@dataclass(frozen=True)
class JumpCoefficients:
    alpha: float
    q: float
    v1: float
    b_over_G: float
    c_coeff: float
    k_coeff: float
    c_n: float
    alpha0_shift_over_G: float


def jump_coefficients(ctx, q):
    q = check_q(q)
    V1 = v1(ctx)
    b = b_coefficient(ctx, q, 1.0)
    c = V1 + b
    return JumpCoefficients(
        alpha=ctx.alpha,
        q=q,
        v1=V1,
        b_over_G=b,
        c_coeff=c,
        k_coeff=2 * ctx.f0 / ctx.l * c,
        c_n=c * ctx.g2,
        alpha0_shift_over_G=alpha0_shift(ctx, q, 1.0),
    )


def diffusion_coefficient(ctx, params):
    """``D12 = 4 kT / (3 m nu) * g4 / f0`` in m^2/s."""
    return 4 * params.kT / (3 * params.mass * params.collision_frequency) * ctx.g4 / ctx.f0


def collision_frequency_from_diffusion(ctx, D12, mass, temperature):
    """Invert the diffusion formula for the collision frequency [1/s]."""
    kT = constants.k * temperature
    return 4 * kT / (3 * mass * D12) * ctx.g4 / ctx.f0


@dataclass(frozen=True)
class MassFlow:
    w_x: float  # dimensionless, sqrt(beta) * U_x
    u_x: float  # m/s


def mass_flow(ctx, params, G_alpha):
    """Mass flow rate of the evaporating component.

    ``W_x = nu m / (2 kT) * D12 * f0 / l * G``.  With ``D12`` from the
    diffusion formula this collapses to ``(2/3) g4 / l * G = G / 2``, which
    is checked.
    """
    D12 = diffusion_coefficient(ctx, params)
    w = params.collision_frequency * params.mass / (2 * params.kT) * D12 * ctx.f0 / ctx.l * G_alpha
    reduced = 2.0 / 3.0 * ctx.g4 / ctx.l * G_alpha
    if abs(w - reduced) > DUAL_FORM_RTOL * max(abs(reduced), 1e-300) or abs(reduced - G_alpha / 2) > DUAL_FORM_RTOL * abs(G_alpha):
        raise ConsistencyError(f"mass flow: {w!r}, moment form {reduced!r}, G/2 = {G_alpha / 2!r}")
    return MassFlow(w_x=w, u_x=w * params.thermal_speed)


def dimensional_jump(ctx, q, params, grad_mu):
    """Chemical potential jump at the wall [J] for a far-field gradient ``grad_mu`` [J/m].

    Two routes: ``K * sqrt(m / 2kT) * D12 * grad_mu`` and
    ``C * l_mfp * grad_mu``.
    """
    c = c_coefficient(ctx, q)
    via_mfp = c * params.mean_free_path * grad_mu
    via_d = k_coefficient(ctx, q) * math.sqrt(params.beta) * diffusion_coefficient(ctx, params) * grad_mu
    if abs(via_d - via_mfp) > DUAL_FORM_RTOL * abs(via_mfp):
        raise ConsistencyError(f"dimensional jump: {via_d!r} vs {via_mfp!r}")
    return via_mfp
