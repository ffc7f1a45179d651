"""Adaptive composite Gauss-Legendre quadrature.

Two entry points are used throughout the package:

* :func:`integrate_semi_infinite` for integrals over ``[0, inf)`` whose
  integrand decays at least like ``exp(-C**2)``; the range is truncated at
  ``QuadratureSpec.tail_cutoff``.
* :func:`integrate_pv` for Cauchy principal values
  ``PV int_0^inf f(t) / (t - pole) dt`` with smooth ``f``, done by
  subtracting ``f(pole)`` and adding the logarithm analytically.

Integrands are called with 1-D numpy arrays of nodes and must return an
array of the same shape (real or complex).
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, DomainError, EvaluationError

_GL_ORDER = 10
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)

# Node offsets/weights on the reference panel [0, 1]: whole panel, left half,
# right half.  One integrand call per refinement round covers all three.
_REF_X = np.concatenate([(_GL_X + 1) / 2, (_GL_X + 1) / 4, (_GL_X + 3) / 4])
_REF_W_COARSE = _GL_W / 2
_REF_W_FINE = _GL_W / 4

_DEFAULT_BREAKS = (0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation for the adaptive rules.

    ``tail_cutoff`` is where ``int_0^inf`` is truncated; the constructor
    insists that ``exp(-tail_cutoff**2)`` is already below ``abs_tol``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_nodes: int = 200_000
    tail_cutoff: float = 12.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_nodes < 16:
            raise DomainError("max_nodes must be at least 16")
        if not self.tail_cutoff > 0 or math.exp(-self.tail_cutoff**2) >= self.abs_tol:
            raise DomainError(
                f"tail_cutoff={self.tail_cutoff} leaves exp(-T^2) above abs_tol={self.abs_tol}"
            )

    def scaled(self, factor):
        """Same spec with both tolerances multiplied by ``factor``."""
        return replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


DEFAULT_SPEC = QuadratureSpec()


def _evaluate(f, x):
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise EvaluationError(f"integrand is not finite at t={bad!r}")
    return y


def _panel_rules(f, lo, hi):
    width = hi - lo
    x = lo[:, None] + width[:, None] * _REF_X[None, :]
    y = _evaluate(f, x.ravel()).reshape(x.shape)
    n = _GL_ORDER
    coarse = width * (y[:, :n] @ _REF_W_COARSE)
    fine = width * (y[:, n:2 * n] @ _REF_W_FINE + y[:, 2 * n:] @ _REF_W_FINE)
    return fine, np.abs(fine - coarse), x.size


def integrate(f, a, b, spec=DEFAULT_SPEC, breakpoints=()):
    """Adaptive integral of ``f`` over the finite interval ``[a, b]``.

    Panels whose error estimate exceeds their share of the tolerance are
    bisected until the summed estimate is below
    ``max(abs_tol, rel_tol * |value|)``.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("integrate() needs finite limits")
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = np.unique(np.clip(np.concatenate([[a, b], np.asarray(breakpoints, float)]), a, b))
    lo, hi = edges[:-1], edges[1:]
    val, err, used = _panel_rules(f, lo, hi)
    while True:
        total = val.sum()
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        total_err = err.sum()
        if total_err <= tol:
            return sign * total
        split = err > tol / len(err)
        mid = 0.5 * (lo[split] + hi[split])
        if used + 6 * _GL_ORDER * split.sum() > spec.max_nodes or np.any(
            (mid <= lo[split]) | (mid >= hi[split])
        ):
            raise ConvergenceError(
                f"no convergence after {used} nodes (error {total_err:.3g} > {tol:.3g})",
                estimate=sign * total,
                error=total_err,
            )
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err, n = _panel_rules(f, new_lo, new_hi)
        used += n
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])


def integrate_semi_infinite(f, spec=DEFAULT_SPEC, breakpoints=()):
    """``int_0^inf f(t) dt`` for integrands with Gaussian decay."""
    T = spec.tail_cutoff
    brk = [p for p in _DEFAULT_BREAKS if p < T] + list(breakpoints)
    return integrate(f, 0.0, T, spec, breakpoints=brk)


def integrate_pv(f, pole, spec=DEFAULT_SPEC, upper=None, breakpoints=()):
    """Principal value ``PV int_0^U f(t) / (t - pole) dt``.

    With ``upper=None`` the domain is ``(0, inf)``, truncated at
    ``max(tail_cutoff, 2 * pole)``, which assumes ``f`` decays like a
    Gaussian.  An explicit ``upper`` is treated as a hard end of the domain.

    The singular part is removed as
    ``int (f(t) - f(pole)) / (t - pole) dt + f(pole) * log((U - pole) / pole)``.
    """
    pole = float(pole)
    if not pole > 0:
        raise DomainError(f"pole must lie inside (0, inf), got {pole}")
    if upper is None:
        U = max(spec.tail_cutoff, 2.0 * pole)
    else:
        U = float(upper)
        if not pole < U:
            raise DomainError(f"pole {pole} is not inside (0, {U})")
    fp = np.asarray(f(np.array([pole])))[0]
    if not np.isfinite(fp):
        raise EvaluationError(f"integrand is not finite at the pole t={pole}")

    def subtracted(t):
        return (f(t) - fp) / (t - pole)

    brk = [p for p in _DEFAULT_BREAKS if p < U] + [pole] + list(breakpoints)
    smooth = integrate(subtracted, 0.0, U, spec, breakpoints=brk)
    if fp == 0:
        return smooth
    return smooth + fp * math.log((U - pole) / pole)
