"""Knudsen-layer structure: chemical potential and concentration profiles.

Positions ``x`` are in mean free paths, velocities ``mu`` in thermal speeds.
Every function here works per unit far-field gradient ``G_alpha`` unless a
gradient is passed explicitly.

The continuous-spectrum amplitude per unit gradient is

    A(eta) / G = exp(-V(eta)) * sin(zeta(eta)) / pi,

with ``V`` the principal value on the positive half-axis.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .dispersion import cached_table
from .errors import DomainError
from .jump import b_coefficient, c_coefficient
from .kernels import _reduced_f
from .quadrature import integrate, integrate_pv

DEFAULT_X_GRID = np.concatenate([
    np.round(np.arange(0.0, 2.0 + 1e-9, 0.1), 10),
    np.arange(2.5, 10.0 + 1e-9, 0.5),
    np.arange(12.0, 30.0 + 1e-9, 2.0),
])

# sin(zeta) is below 1e-25 past this speed; used as the upper limit for eta
_ETA_MAX = 9.0
_ETA_BREAKS = (1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0)


def _table(ctx, disp):
    return cached_table(ctx) if disp is None else disp


def spectrum_amplitude(eta, disp):
    """``exp(-V(eta)) sin(zeta(eta)) / pi`` on the positive half-axis (per unit gradient)."""
    eta = np.asarray(eta, dtype=float)
    return np.exp(-disp.v_at(eta)) * np.sin(disp.zeta_at(eta)) / math.pi


def _eta_breaks(extra=()):
    return sorted(set(_ETA_BREAKS) | {e for e in extra if 0 < e < _ETA_MAX})


def _decay(x, eta):
    with np.errstate(under="ignore"):
        return np.exp(-x / eta)


def knudsen_integral(x, disp):
    """``(1/pi) int_0^inf exp(-x/eta - V(eta)) sin zeta(eta) deta``; negative, decays to 0."""
    if x < 0:
        raise DomainError("x must be >= 0")
    quad = disp.ctx.quad
    extra = [x / 10, x / 3, x] if x > 0 else []
    return integrate(
        lambda e: _decay(x, e) * spectrum_amplitude(e, disp),
        0.0, _ETA_MAX, quad, breakpoints=_eta_breaks(extra),
    )


def chem_potential_profile(x, ctx, q, disp=None):
    """``a(x) / G_alpha = C + x + (1/pi) int exp(-x/eta - V) sin zeta deta``."""
    if x < 0:
        raise DomainError("x must be >= 0")
    disp = _table(ctx, disp)
    return c_coefficient(ctx, q) + x + knudsen_integral(x, disp)


def wall_distribution(mu, ctx, q, G_alpha=1.0, disp=None):
    """Distribution ``h(0, mu)`` at the wall.

    For ``mu > 0`` this is the boundary value ``B`` itself.  For ``mu < 0``
    (molecules arriving at the wall) it is ``B - G / X(mu)`` with
    ``X(mu) = exp(V(mu)) / mu`` regular on the negative axis.
    """
    mu = float(mu)
    if mu == 0:
        raise DomainError("h(0, mu) is undefined at mu = 0")
    B = b_coefficient(ctx, q, G_alpha)
    if mu > 0:
        return B
    disp = _table(ctx, disp)
    return B - G_alpha * mu * math.exp(-disp.v_off(mu))


def full_distribution(x, mu, ctx, q, disp=None):
    """``h(x, mu) / G_alpha`` from the eigenfunction expansion.

    The principal-value part integrates ``eta A(eta) / (eta - mu)``; the
    delta-function part of the eigenfunction contributes
    ``(2 f0 / f(mu)) lambda(mu) A(mu) exp(-x/mu)`` for ``mu > 0``, which is
    rewritten as ``mu cos(zeta) exp(-V)`` to avoid dividing by ``f``.
    """
    if x < 0:
        raise DomainError("x must be >= 0")
    mu = float(mu)
    disp = _table(ctx, disp)
    quad = ctx.quad
    base = c_coefficient(ctx, q) + x - mu

    def weighted(e):
        return _decay(x, e) * e * spectrum_amplitude(e, disp)

    if mu > 0:
        if mu < _ETA_MAX:
            pv = integrate_pv(weighted, mu, quad, upper=_ETA_MAX, breakpoints=_eta_breaks([x]))
        else:
            pv = integrate(lambda e: weighted(e) / (e - mu), 0.0, _ETA_MAX, quad,
                           breakpoints=_eta_breaks([x]))
        vm = float(disp.v_at(mu))
        delta = mu * math.cos(float(disp.zeta_at(mu))) * math.exp(-vm) * math.exp(-x / mu)
        return base + pv + delta
    if mu == 0:
        raise DomainError("h(x, mu) is evaluated for mu != 0")
    reg = integrate(lambda e: weighted(e) / (e - mu), 0.0, _ETA_MAX, quad,
                    breakpoints=_eta_breaks([x, -mu]))
    return base + reg


def number_moment(h_of_mu, ctx, mu_max=None):
    """``(1/(2 f0)) int_R f(mu) h(mu) dmu`` for a callable ``h`` of one speed."""
    quad = ctx.quad
    T = min(quad.tail_cutoff, 8.0) if mu_max is None else mu_max
    a, s = ctx.alpha, ctx.statistics.sign
    norm = 2 * ctx.scaled("f0")

    def vec(sign):
        def g(m):
            vals = np.array([h_of_mu(sign * v) for v in m])
            return _reduced_f(m, a, s) * vals
        return g

    brk = (1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0)
    pos = integrate(vec(1.0), 0.0, T, quad, breakpoints=brk)
    neg = integrate(vec(-1.0), 0.0, T, quad, breakpoints=brk)
    return (pos + neg) / norm


def concentration_profile(x, ctx, q, disp=None, G_N=1.0):
    """``n(x) = P_N(x) * G_N`` with ``P_N = (a / G_alpha) * g2``."""
    return chem_potential_profile(x, ctx, q, disp) * ctx.g2 * G_N


def concentration_jump(ctx, q):
    """``C_N = C * g2``."""
    return c_coefficient(ctx, q) * ctx.g2


def concentration_gradient(params, G_alpha):
    """``G_N = N0 * G_alpha``."""
    return params.n0 * G_alpha


@dataclass(frozen=True)
class ProfileTable:
    x_grid: np.ndarray
    a_over_G: np.ndarray
    knudsen_correction: np.ndarray
    p_n: np.ndarray

    def write_csv(self, path_or_file):
        """Columns: x, a_over_G, knudsen_correction, p_n."""
        own = isinstance(path_or_file, str)
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "a_over_G", "knudsen_correction", "p_n"])
            for row in zip(self.x_grid, self.a_over_G, self.knudsen_correction, self.p_n):
                w.writerow([f"{v:.12g}" for v in row])
        finally:
            if own:
                fh.close()


def profile_table(ctx, q, x_grid=None, disp=None):
    disp = _table(ctx, disp)
    x_grid = DEFAULT_X_GRID if x_grid is None else np.asarray(x_grid, dtype=float)
    c = c_coefficient(ctx, q)
    corr = np.array([knudsen_integral(x, disp) for x in x_grid])
    a = c + x_grid + corr
    return ProfileTable(x_grid=x_grid, a_over_G=a, knudsen_correction=corr, p_n=a * ctx.g2)
