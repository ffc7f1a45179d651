"""Chemical potential jump at an evaporating surface for a dilute quantum gas.

Linearized BGK half-space problem with Bose, Fermi or classical equilibrium
kernels: analytic jump coefficients and Knudsen-layer profiles, plus a
discrete-ordinates solver used as an independent check.
"""

from .kernels import GasStatistics, KernelContext, PhysicalParams, make_context
from .quadrature import QuadratureSpec

__all__ = ["GasStatistics", "KernelContext", "PhysicalParams", "QuadratureSpec", "make_context"]
__version__ = "0.1.0"
