"""Equilibrium occupancies and their velocity moments.

Everything here is dimensionless: ``C`` is speed in units of the thermal
speed and ``alpha`` is the chemical potential in units of ``kT``.  Three
statistics are supported; they differ only in the sign in front of the
exponential, ``f = 1 / (exp(C^2 - alpha) - s)`` with ``s = +1`` (Bose),
``-1`` (Fermi) and ``0`` (classical).

Internally the integrands are "reduced" by a factor ``exp(-alpha)`` so that
the quadrature tolerances stay meaningful deep in the classical regime,
where every moment is proportional to ``exp(alpha)``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .errors import ConsistencyError, DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_semi_infinite

SQRT_PI = math.sqrt(math.pi)
BOSE_ALPHA_MAX = -1e-4
SERIES_MAX_FUGACITY = 0.9
CHECK_RTOL = 1e-8


class GasStatistics(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"
    CLASSICAL = "classical"

    @property
    def sign(self):
        return {"bose": 1, "fermi": -1, "classical": 0}[self.value]

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown statistics {value!r}") from None


def check_alpha(alpha, statistics):
    statistics = GasStatistics.parse(statistics)
    if not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite, got {alpha}")
    if statistics is GasStatistics.BOSE and alpha > BOSE_ALPHA_MAX:
        raise DomainError(
            f"Bose statistics needs alpha <= {BOSE_ALPHA_MAX} (no condensate), got {alpha}"
        )
    return statistics


# -- reduced integrands (multiplied by exp(-alpha)) ---------------------------


def _reduced_f(C, alpha, s):
    e = np.exp(-np.square(C))
    return e / (1.0 - s * math.exp(alpha) * e)


def _reduced_g(C, alpha, s):
    e = np.exp(-np.square(C))
    return e / np.square(1.0 - s * math.exp(alpha) * e)


def _reduced_l(C, alpha, s):
    e = np.exp(-np.square(C))
    if s == 0:
        return e
    z = math.exp(alpha) * e
    return -np.log1p(-s * z) / (s * math.exp(alpha))


def reduced_occupancy(C, alpha, statistics):
    """``exp(-alpha) * f(C, alpha)``; O(1) for any ``alpha``."""
    return _reduced_f(C, alpha, GasStatistics.parse(statistics).sign)


# -- series and closed forms ---------------------------------------------------


def _polylog_series(alpha, power, s):
    """``exp(-alpha) * sum_k (s^(k-1)) exp(k alpha) / k^power``, summed with fsum."""
    z = math.exp(alpha)
    terms = []
    zk = 1.0
    partial = 0.0
    for k in range(1, 100_000):
        t = (s ** (k - 1)) * zk / k**power
        terms.append(t)
        partial += t
        if abs(t) < 1e-17 * abs(partial):
            break
        zk *= z
    return math.fsum(terms)


def series_available(alpha, statistics):
    statistics = GasStatistics.parse(statistics)
    if statistics is GasStatistics.CLASSICAL:
        return True
    return math.exp(alpha) <= SERIES_MAX_FUGACITY


def f0_series(alpha, statistics):
    """``f0`` from the fugacity expansion ``(sqrt(pi)/2) sum s^(k-1) e^(k alpha) / sqrt(k)``."""
    s = check_alpha(alpha, statistics).sign
    if s == 0:
        return math.exp(alpha) * SQRT_PI / 2
    return math.exp(alpha) * SQRT_PI / 2 * _polylog_series(alpha, 0.5, s)


def l_series(alpha, statistics):
    """``l`` from ``(sqrt(pi)/2) sum s^(k-1) e^(k alpha) / k^(3/2)``."""
    s = check_alpha(alpha, statistics).sign
    if s == 0:
        return math.exp(alpha) * SQRT_PI / 2
    return math.exp(alpha) * SQRT_PI / 2 * _polylog_series(alpha, 1.5, s)


def g3_closed_form(alpha, statistics):
    """``int_0^inf C^3 g dC``: ``-ln(1 - e^a)/2`` for Bose, ``ln(1 + e^a)/2`` for Fermi."""
    s = check_alpha(alpha, statistics).sign
    if s == 0:
        return math.exp(alpha) / 2
    return -math.log1p(-s * math.exp(alpha)) / (2 * s)


# -- context -------------------------------------------------------------------


@dataclass(frozen=True)
class KernelContext:
    """Chemical potential, statistics and the precomputed moments that go with them.

    Build with :meth:`create`; the moments are cross-checked there.
    """

    alpha: float
    statistics: GasStatistics
    f0: float
    l: float
    f2: float
    g2: float
    g3: float
    g4: float
    quad: QuadratureSpec = DEFAULT_SPEC

    @classmethod
    def create(cls, alpha, statistics="bose", quad=DEFAULT_SPEC):
        alpha = float(alpha)
        statistics = check_alpha(alpha, statistics)
        m = _moments(alpha, statistics, quad)
        return cls(alpha=alpha, statistics=statistics, quad=quad, **m)

    @property
    def fugacity(self):
        return math.exp(self.alpha)

    def scaled(self, name):
        """Moment ``name`` divided by ``exp(alpha)``."""
        return getattr(self, name) / math.exp(self.alpha)


def _agree(a, b, rtol, what):
    if not abs(a - b) <= rtol * max(abs(a), abs(b)):
        raise ConsistencyError(f"{what}: {a!r} vs {b!r} (rel. diff {abs(a - b) / abs(b):.3g})")


def _quad_moment(integrand, n, alpha, s, quad):
    if n == 0:
        val = integrate_semi_infinite(lambda C: integrand(C, alpha, s), quad)
    else:
        val = integrate_semi_infinite(lambda C: C**n * integrand(C, alpha, s), quad)
    return val * math.exp(alpha)


def _f0(alpha, statistics, quad):
    s = statistics.sign
    val = _quad_moment(_reduced_f, 0, alpha, s, quad)
    if series_available(alpha, statistics):
        _agree(val, f0_series(alpha, statistics), CHECK_RTOL, "f0 quadrature vs series")
    return val


def _l(alpha, statistics, quad):
    s = statistics.sign
    val = _quad_moment(_reduced_l, 0, alpha, s, quad)
    if series_available(alpha, statistics):
        _agree(val, l_series(alpha, statistics), CHECK_RTOL, "l quadrature vs series")
    return val


def _f2(alpha, statistics, quad):
    return _quad_moment(_reduced_f, 2, alpha, statistics.sign, quad)


def _g(n, alpha, statistics, quad):
    if n not in (2, 3, 4):
        raise DomainError(f"g-moment order must be 2, 3 or 4, got {n}")
    return _quad_moment(_reduced_g, n, alpha, statistics.sign, quad)


def _moments(alpha, statistics, quad):
    f0 = _f0(alpha, statistics, quad)
    l = _l(alpha, statistics, quad)
    f2 = _f2(alpha, statistics, quad)
    g2 = _g(2, alpha, statistics, quad)
    g3 = _g(3, alpha, statistics, quad)
    g4 = _g(4, alpha, statistics, quad)
    _agree(f2, l / 2, CHECK_RTOL, "f2 vs l/2")
    _agree(g2, f0 / 2, CHECK_RTOL, "g2 vs f0/2")
    _agree(g3, g3_closed_form(alpha, statistics), CHECK_RTOL, "g3 vs closed form")
    _agree(g4, 0.75 * l, CHECK_RTOL, "g4 vs 3l/4")
    return dict(f0=f0, l=l, f2=f2, g2=g2, g3=g3, g4=g4)


def make_context(alpha, statistics="bose", quad=DEFAULT_SPEC):
    return KernelContext.create(alpha, statistics, quad)


# -- public operations ---------------------------------------------------------


def f_equilibrium(C, ctx):
    """Equilibrium occupancy ``1 / (exp(C^2 - alpha) - s)``."""
    C = np.asarray(C, dtype=float)
    if np.any(C < 0):
        raise DomainError("speed C must be non-negative")
    return math.exp(ctx.alpha) * _reduced_f(C, ctx.alpha, ctx.statistics.sign)


def g_weight(C, ctx):
    """``d f_equilibrium / d alpha``."""
    C = np.asarray(C, dtype=float)
    if np.any(C < 0):
        raise DomainError("speed C must be non-negative")
    return math.exp(ctx.alpha) * _reduced_g(C, ctx.alpha, ctx.statistics.sign)


def moment_f0(ctx):
    """``int_0^inf f dC`` by quadrature, checked against the fugacity series."""
    return _f0(ctx.alpha, ctx.statistics, ctx.quad)


def moment_l(ctx):
    """``l = -int_0^inf ln(1 - e^(alpha - C^2)) dC`` (Bose sign; Fermi and classical analogues)."""
    return _l(ctx.alpha, ctx.statistics, ctx.quad)


def moment_f2(ctx):
    val = _f2(ctx.alpha, ctx.statistics, ctx.quad)
    _agree(val, moment_l(ctx) / 2, CHECK_RTOL, "f2 vs l/2")
    return val


def moment_g(n, ctx):
    """``int_0^inf C^n g dC`` for ``n`` in 2, 3, 4, checked against its closed form."""
    val = _g(n, ctx.alpha, ctx.statistics, ctx.quad)
    if n == 2:
        _agree(val, moment_f0(ctx) / 2, CHECK_RTOL, "g2 vs f0/2")
    elif n == 3:
        _agree(val, g3_closed_form(ctx.alpha, ctx.statistics), CHECK_RTOL, "g3 vs closed form")
    else:
        _agree(val, 0.75 * moment_l(ctx), CHECK_RTOL, "g4 vs 3l/4")
    return val


# -- dimensional parameters ----------------------------------------------------


@dataclass(frozen=True)
class PhysicalParams:
    """Molecular mass [kg], temperature [K], collision frequency [1/s], spin multiplicity."""

    mass: float
    temperature: float
    collision_frequency: float
    spin_multiplicity: int = 1

    def __post_init__(self):
        for name in ("mass", "temperature", "collision_frequency", "spin_multiplicity"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")

    @property
    def kT(self):
        return constants.k * self.temperature

    @property
    def beta(self):
        return self.mass / (2 * self.kT)

    @property
    def thermal_speed(self):
        return 1 / math.sqrt(self.beta)

    @property
    def mean_free_path(self):
        return self.thermal_speed / self.collision_frequency

    @property
    def thermal_wavenumber(self):
        return self.mass * self.thermal_speed / constants.hbar

    @property
    def n0(self):
        """Density scale: ``2 pi (2s+1) m^3 / ((2 pi hbar)^3 beta^(3/2))`` [1/m^3]."""
        return (
            2 * math.pi * self.spin_multiplicity * self.mass**3
            / ((2 * math.pi * constants.hbar) ** 3 * self.beta**1.5)
        )


def saturated_density(ctx, params):
    """Number density of the saturated vapour, ``N0 * l(alpha)``."""
    return params.n0 * ctx.l
