"""Dispersion function, boundary phase and the factorization integrals.

Conventions: the weight on the velocity axis is ``w(mu) = f(mu) / (2 f0)``,
normalised to one over the whole line.  The boundary value of the
dispersion function from above the positive half-axis is

    lambda+(t) = lambda(t) + i * pi * t * w(t),

and the phase used in the factorization is ``zeta = arg(lambda+) - pi``,
taken with ``atan2`` so it is continuous on ``(0, inf)`` and runs from
``-pi`` at ``t -> 0+`` to ``0`` at ``t -> inf``.
"""

import csv
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError
from .kernels import _reduced_f
from .quadrature import integrate, integrate_pv, integrate_semi_infinite

ZETA_FIT_TOL = 1e-13
V_FIT_UPPER = 8.0


def _weight_ratio(t, ctx):
    # f(t) / f0 with the exp(alpha) factors cancelled
    return _reduced_f(t, ctx.alpha, ctx.statistics.sign) / ctx.scaled("f0")


def lambda_real(eta, ctx):
    """Dispersion function on the real axis (principal value).

    Evaluated as ``(1/f0) PV int_0^inf mu^2 f(mu) / (mu^2 - eta^2) dmu``,
    which equals ``1 + eta/(2 f0) PV int_R f(mu)/(mu - eta) dmu`` after
    folding the line onto the half-axis, and avoids the cancellation
    between the two terms at large ``eta``.  Even in ``eta``.
    """
    eta = abs(float(eta))
    if eta == 0:
        return 1.0
    a, s = ctx.alpha, ctx.statistics.sign

    def numerator(mu):
        return mu * mu * _reduced_f(mu, a, s) / (mu + eta)

    return integrate_pv(numerator, eta, ctx.quad) / ctx.scaled("f0")


def lambda_boundary(eta, ctx):
    """Upper boundary value ``lambda+(eta)`` on the positive half-axis (complex)."""
    if not eta > 0:
        raise DomainError("lambda_boundary needs eta > 0")
    return complex(lambda_real(eta, ctx), math.pi * eta * _weight_ratio(eta, ctx) / 2)


def _zeta_scalar(tau, ctx):
    lam = lambda_real(tau, ctx)
    im = math.pi * tau * float(_weight_ratio(tau, ctx)) / 2
    return math.atan2(im, lam) - math.pi


def zeta(tau, ctx):
    """Continuous boundary phase ``zeta(tau)`` in ``(-pi, 0)``; scalar or array ``tau > 0``."""
    t = np.asarray(tau, dtype=float)
    if np.any(t <= 0):
        raise DomainError("zeta is defined for tau > 0 only")
    if t.ndim == 0:
        return _zeta_scalar(float(t), ctx)
    return np.array([_zeta_scalar(x, ctx) for x in t.ravel()]).reshape(t.shape)


def find_lambda_zero(ctx, grid=None, xtol=1e-12):
    """The single positive zero of ``lambda_real``; located by bracketing then Brent."""
    if grid is None:
        grid = np.linspace(0.05, 8.0, 160)
    vals = [lambda_real(t, ctx) for t in grid]
    for (t0, v0), (t1, v1_) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if v0 > 0 >= v1_:
            return brentq(lambda t: lambda_real(t, ctx), t0, t1, xtol=xtol)
    raise ConvergenceError("no sign change of lambda found on the scan grid")


@functools.lru_cache(maxsize=256)
def _v1_cached(ctx):
    tau0 = find_lambda_zero(ctx)
    val = integrate_semi_infinite(lambda t: zeta(t, ctx), ctx.quad, breakpoints=[tau0])
    return -val / math.pi


def v1(ctx):
    """``-(1/pi) int_0^inf zeta dtau``: the jump coefficient for full evaporation."""
    return _v1_cached(ctx)


# -- piecewise Chebyshev interpolation ----------------------------------------


class PiecewiseChebyshev:
    """Panel-wise Chebyshev interpolant with adaptive panel splitting."""

    def __init__(self, breaks, pieces):
        self.breaks = np.asarray(breaks, dtype=float)
        self.pieces = list(pieces)

    @classmethod
    def fit(cls, func, breaks, deg=24, tol=ZETA_FIT_TOL, min_width=1e-7):
        out_breaks = [breaks[0]]
        pieces = []
        stack = list(zip(breaks[:-1], breaks[1:]))
        while stack:
            a, b = stack.pop(0)
            cheb = Chebyshev.interpolate(func, deg, domain=[a, b])
            tail = np.max(np.abs(cheb.coef[-4:]))
            if tail <= tol * max(1.0, np.max(np.abs(cheb.coef))) or (b - a) < min_width:
                pieces.append(cheb)
                out_breaks.append(b)
            else:
                m = 0.5 * (a + b)
                stack[:0] = [(a, m), (m, b)]
        return cls(out_breaks, pieces)

    @property
    def lower(self):
        return self.breaks[0]

    @property
    def upper(self):
        return self.breaks[-1]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        idx = np.clip(np.searchsorted(self.breaks, flat, side="right") - 1, 0, len(self.pieces) - 1)
        out = np.empty_like(flat)
        for k in np.unique(idx):
            sel = idx == k
            out[sel] = self.pieces[k](flat[sel])
        return out.reshape(x.shape)


# -- table ---------------------------------------------------------------------


def default_tau_grid(tau0, upper=12.0):
    log_part = np.geomspace(1e-4, upper, 400)
    near = np.linspace(max(tau0 - 0.5, 1e-4), tau0 + 0.5, 100)
    return np.unique(np.concatenate([log_part, near]))


@dataclass(frozen=True)
class DispersionTable:
    """Sampled dispersion data for one kernel context, plus fast interpolants.

    ``zeta_at`` and ``v_at`` are the evaluators the profile code uses; they
    reproduce :func:`zeta` and :func:`v_on_cut` to about 1e-12.
    """

    ctx: object
    tau0: float
    tau_grid: np.ndarray
    lambda_vals: np.ndarray
    zeta_vals: np.ndarray
    v_pv_vals: np.ndarray
    _zeta_fit: PiecewiseChebyshev = field(repr=False)
    _s_fit: PiecewiseChebyshev = field(repr=False)

    def zeta_at(self, tau):
        t = np.asarray(tau, dtype=float)
        out = self._zeta_fit(np.minimum(t, self._zeta_fit.upper))
        return np.where(t >= self._zeta_fit.upper, 0.0, out)

    def v_at(self, eta):
        """PV value ``V(eta)`` on the positive half-axis."""
        e = np.asarray(eta, dtype=float)
        if np.any(e <= 0):
            raise DomainError("v_at needs eta > 0")
        T = self._zeta_fit.upper
        inside = e < V_FIT_UPPER
        out = np.empty_like(e, dtype=float)
        ei = e[inside]
        out[inside] = (self._s_fit(ei) + self.zeta_at(ei) * np.log((T - ei) / ei)) / math.pi
        for i in np.flatnonzero(~inside.ravel()):
            out.flat[i] = _v_pv(e.flat[i], self.zeta_at, self.ctx.quad)
        return out if out.ndim else float(out)

    def v_off(self, z):
        """``V(z)`` for ``z`` off the positive half-axis (real negative or complex)."""
        return _v_off(z, self.zeta_at, self.ctx.quad, self.tau0)

    def rows(self):
        return zip(self.tau_grid, self.lambda_vals, self.zeta_vals, self.v_pv_vals)

    def write_csv(self, path_or_file):
        """Columns: tau, lambda, zeta, v_pv."""
        own = isinstance(path_or_file, str)
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["tau", "lambda", "zeta", "v_pv"])
            for row in self.rows():
                w.writerow([f"{v:.12g}" for v in row])
        finally:
            if own:
                fh.close()


def _v_pv(eta, zeta_fn, quad):
    return integrate_pv(zeta_fn, eta, quad) / math.pi


def _v_off(z, zeta_fn, quad, tau0=None):
    z = complex(z)
    if z.imag == 0 and z.real > 0:
        raise DomainError("V(z) on the positive half-axis needs the principal-value form (v_on_cut)")
    if z == 0:
        raise DomainError("V(z) diverges at z = 0")
    # zeta vanishes past the tail cutoff, so the integral stops there
    T = quad.tail_cutoff
    brk = [0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0]
    if tau0 is not None:
        brk.append(tau0)
    if z.real > 0:
        brk.append(z.real)
    elif z.imag == 0:
        # log-like behaviour on scale |z| near tau = 0
        brk.extend(abs(z.real) * np.array([1.0, 4.0, 16.0]))
    brk = [b for b in brk if b < T]
    val = integrate(lambda t: zeta_fn(t) / (t - z), 0.0, T, quad, breakpoints=brk)
    val = val / math.pi
    return val.real if z.imag == 0 else val


def build_dispersion_table(ctx, tau_grid=None):
    """Fit the interpolants for ``zeta`` and ``V`` and sample the table."""
    tau0 = find_lambda_zero(ctx)
    T = ctx.quad.tail_cutoff
    base = np.array(sorted({0.0, 0.125, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, T, tau0}))
    base = base[base <= T]
    zfit = PiecewiseChebyshev.fit(lambda t: zeta(t, ctx), base)

    def s_of(eta):
        e = np.atleast_1d(eta)
        out = np.array([
            integrate_pv(zfit, x, ctx.quad, upper=T) - float(zfit(x)) * math.log((T - x) / x)
            for x in e
        ])
        return out

    sbreaks = np.array(sorted({0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, V_FIT_UPPER, tau0}))
    sbreaks = sbreaks[sbreaks <= V_FIT_UPPER]
    sfit = PiecewiseChebyshev.fit(s_of, sbreaks, tol=1e-12)

    if tau_grid is None:
        tau_grid = default_tau_grid(tau0, T)
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(tau_grid <= 0) or np.any(np.diff(tau_grid) <= 0):
        raise DomainError("tau_grid must be positive and strictly ascending")
    lam = np.array([lambda_real(t, ctx) for t in tau_grid])
    zet = zeta(tau_grid, ctx)
    table = DispersionTable(ctx, tau0, tau_grid, lam, zet, np.empty(0), zfit, sfit)
    object.__setattr__(table, "v_pv_vals", np.asarray(table.v_at(tau_grid), dtype=float))
    return table


@functools.lru_cache(maxsize=32)
def cached_table(ctx):
    return build_dispersion_table(ctx)


def v_on_cut(eta, ctx, table=None):
    """Principal value ``V(eta) = (1/pi) PV int_0^inf zeta(t) / (t - eta) dt``, ``eta > 0``."""
    if not eta > 0:
        raise DomainError("v_on_cut needs eta > 0")
    if table is not None:
        return float(table.v_at(eta))
    return _v_pv(eta, lambda t: zeta(t, ctx), ctx.quad)


def v_of_z(z, ctx, table=None):
    """``V(z) = (1/pi) int_0^inf zeta(t) / (t - z) dt`` off the cut."""
    if table is not None:
        return table.v_off(z)
    return _v_off(z, lambda t: zeta(t, ctx), ctx.quad)


def x_factor(z, ctx, table=None):
    """``X(z) = exp(V(z)) / z``; on the positive half-axis the PV value of ``V`` is used."""
    zc = complex(z)
    if zc == 0:
        raise DomainError("X(z) is singular at z = 0")
    if zc.imag == 0 and zc.real > 0:
        return math.exp(v_on_cut(zc.real, ctx, table)) / zc.real
    v = v_of_z(z, ctx, table)
    if isinstance(v, complex):
        return np.exp(v) / zc
    return math.exp(v) / zc.real
