"""
Elliptic integrals of the first kind.

K is computed from the arithmetic-geometric mean, F(α|q) by direct
quadrature of its defining integrand. ``elliptic_F_agm`` is an
independent descending-Landen evaluation of F used to cross-check the
quadrature path.
"""

import math

import numpy as np

from ..utils.error_handling import DomainError, NoConvergence
from ..utils.quadrature import GaussLegendre, QuadratureConfig

AGM_MAX_STEPS = 64
# relative gap at which the AGM pair has met; iterates can stall one ulp apart
AGM_TOLERANCE = 4.0 * np.finfo(float).eps

# F needs a tighter absolute tolerance than the angular default
F_QUADRATURE = QuadratureConfig(tolerance=1e-13)


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two non-negative numbers."""
    if a < 0 or b < 0:
        raise DomainError("agm needs non-negative arguments")
    if a == 0 or b == 0:
        return 0.0
    for _ in range(AGM_MAX_STEPS):
        if abs(a - b) <= AGM_TOLERANCE * a:
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise NoConvergence("agm iteration cap reached")


def elliptic_K(k: float) -> float:
    """
    Complete elliptic integral of the first kind, modulus k in [0, 1).

    Args:
        k: Modulus

    Returns:
        K(k) = π / (2 agm(1, √(1 − k²)))
    """
    if not 0.0 <= k < 1.0:
        raise DomainError(f"elliptic_K needs 0 <= k < 1, got {k}")
    return elliptic_K_complementary(math.sqrt((1.0 - k) * (1.0 + k)))


def elliptic_K_complementary(k_prime: float) -> float:
    """K expressed through the complementary modulus k′ = √(1 − k²), k′ in (0, 1]."""
    if not 0.0 < k_prime <= 1.0:
        raise DomainError(f"complementary modulus must lie in (0, 1], got {k_prime}")
    return math.pi / (2.0 * agm(1.0, k_prime))


def _check_F(alpha: float, q: float):
    if not 0.0 <= q < 1.0:
        raise DomainError(f"elliptic parameter must satisfy 0 <= q < 1, got {q}")
    if not 0.0 <= alpha <= math.pi:
        raise DomainError(f"amplitude must lie in [0, pi], got {alpha}")


def elliptic_F(alpha: float, q: float, config: QuadratureConfig = None) -> float:
    """
    Incomplete elliptic integral F(α|q) = ∫₀^α dφ / √(1 − q sin²φ).

    Args:
        alpha: Amplitude in [0, π]
        q: Parameter (squared modulus) in [0, 1)
        config: Quadrature settings

    Returns:
        F(α|q)
    """
    _check_F(alpha, q)
    if q == 0.0:
        return float(alpha)
    integrator = GaussLegendre(config or F_QUADRATURE, vectorized=True)
    return integrator.integrate(lambda phi: 1.0 / np.sqrt(1.0 - q * np.sin(phi) ** 2), 0.0, alpha)


def elliptic_F_agm(alpha: float, q: float) -> float:
    """F(α|q) by the descending Landen transformation with phase tracking."""
    _check_F(alpha, q)
    a, b, phi = 1.0, math.sqrt(1.0 - q), float(alpha)
    scale = 1.0
    for _ in range(AGM_MAX_STEPS):
        if abs(a - b) <= AGM_TOLERANCE * a:
            return phi / (scale * 0.5 * (a + b))
        t = math.atan2(b * math.sin(phi), a * math.cos(phi))
        # keep the companion angle on the same branch as phi
        t += 2.0 * math.pi * round((phi - t) / (2.0 * math.pi))
        phi += t
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        scale *= 2.0
    raise NoConvergence("Landen iteration cap reached")
