"""
Semiclassical level spacing from the periodicity of the phase function.

The phase of f(e, θ) = √(e − e_floor) exp{iλ ∫₀^θ (∂e/∂u)⁻¹ dφ} must wind
exactly once per turn, which fixes

    λ(e) = 2π / ∮ (∂e/∂u)⁻¹ dθ,

with ∂e/∂u evaluated on the shell e(u, θ) = e. The Bohr-Sommerfeld number
function follows from dN/de = 1/λ(e).
"""

import cmath
import logging
import math
from typing import Callable, Optional

from ..utils.error_handling import NoRoot
from ..utils.quadrature import GaussLegendre, QuadratureConfig
from ..utils.rootfind import solve_increasing
from .surfaces import EnergySurface

logger = logging.getLogger(__name__)


def radial_solve(surface: EnergySurface, e: float, theta: float, config: QuadratureConfig = None) -> float:
    """
    Unique u >= 0 on the monotone branch with e(u, θ) = e.

    Raises:
        NoRoot: if e <= e(0, θ)
        NonMonotone: if the shell is not reachable on the monotone branch
    """
    config = config or QuadratureConfig()
    if e <= surface.energy(0.0, theta):
        raise NoRoot(f"e = {e:.15g} is not above the surface floor at theta = {theta:.6g}")
    return solve_increasing(
        lambda u: surface.energy(u, theta),
        e,
        rtol=config.root_tolerance,
        ceiling=surface.u_ceiling(theta),
        start=max(e - surface.e_floor, 1e-3),
    )


def _inverse_slope(surface: EnergySurface, e: float, config: QuadratureConfig) -> Callable[[float], float]:
    def integrand(theta: float) -> float:
        return 1.0 / surface.slope(radial_solve(surface, e, theta, config), theta)
    return integrand


def period_integral(surface: EnergySurface, e: float, config: QuadratureConfig = None,
                    reduce_symmetry: bool = True) -> float:
    """∮ (∂e/∂u)⁻¹ dθ over a full turn."""
    config = config or QuadratureConfig()
    integrator = GaussLegendre(config)
    integrand = _inverse_slope(surface, e, config)
    if reduce_symmetry:
        total = surface.repeats * integrator.integrate(integrand, 0.0, surface.period)
    else:
        total = integrator.integrate(integrand, 0.0, 2.0 * math.pi)
    logger.debug("%s: period integral at e=%.10g took %d evaluations", surface.name, e, integrator.evaluations)
    return total


def lambda_sc(surface: EnergySurface, e: float, config: QuadratureConfig = None,
              reduce_symmetry: bool = True) -> float:
    """
    λ(e) = 2π / ∮ (∂e/∂u)⁻¹ dθ.

    Args:
        surface: Binding energy surface
        e: Shell energy, above the surface floor
        config: Quadrature and root-finder tolerances
        reduce_symmetry: Integrate one θ-period and scale up

    Returns:
        The semiclassical spacing
    """
    return 2.0 * math.pi / period_integral(surface, e, config, reduce_symmetry)


def phase_function(surface: EnergySurface, e: float, theta: float, config: QuadratureConfig = None) -> complex:
    """f(e, θ) = √(e − e_floor) exp{iλ(e) ∫₀^θ (∂e/∂u)⁻¹ dφ}."""
    config = config or QuadratureConfig()
    integrator = GaussLegendre(config)
    integrand = _inverse_slope(surface, e, config)
    one_period = integrator.integrate(integrand, 0.0, surface.period)
    lam = 2.0 * math.pi / (surface.repeats * one_period)

    periods, rest = divmod(theta, surface.period)
    angle = lam * (periods * one_period + integrator.integrate(integrand, 0.0, rest))
    return math.sqrt(e - surface.e_floor) * cmath.exp(1j * angle)


def action_area(surface: EnergySurface, e: float, config: QuadratureConfig = None,
                lambda_fn: Optional[Callable[[float], float]] = None) -> float:
    """
    Phase-space area of the shell divided by 2π, measured from the floor.

    Computed as ∫ de′/λ(e′) from the surface floor to e. ``lambda_fn``
    substitutes a known λ (a closed form, say) for the angular quadrature.
    """
    config = config or QuadratureConfig()
    if e <= surface.e_floor:
        return 0.0
    lam = lambda_fn or (lambda x: lambda_sc(surface, x, config))
    # Gauss nodes are interior, so the floor itself is never evaluated
    return GaussLegendre(config).integrate(lambda x: 1.0 / lam(x), surface.e_floor, e)


def number_sc(surface: EnergySurface, e: float, config: QuadratureConfig = None,
              lambda_fn: Optional[Callable[[float], float]] = None) -> float:
    """Bohr-Sommerfeld number function N(e), the integration constant dropped."""
    return action_area(surface, e, config, lambda_fn)
