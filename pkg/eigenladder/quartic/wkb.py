"""
Large-n (WKB) asymptotics of the quartic oscillator.
"""

import math

from ..utils.error_handling import DomainError

REGIME = "large n"

# Γ(1/4) to double precision
GAMMA_QUARTER = 3.6256099082219083119

WKB_ENERGY_PREFACTOR = 3.0 ** (4.0 / 3.0) * math.pi ** 2 * GAMMA_QUARTER ** (-8.0 / 3.0)
WKB_SPACING_PREFACTOR = 4.0 * math.pi ** 1.5 / GAMMA_QUARTER ** 2


def k_one_over_root_two() -> float:
    """K(1/√2) = Γ(1/4)² / (4√π)."""
    return GAMMA_QUARTER ** 2 / (4.0 * math.sqrt(math.pi))


def wkb_energy(n: float, kappa: float) -> float:
    """e_n ≈ 3^(4/3) π² Γ(1/4)^(−8/3) κ^(1/3) n^(4/3)."""
    if not kappa > 0:
        raise DomainError(f"WKB asymptote needs kappa > 0, got {kappa}")
    if n < 0:
        raise DomainError("level index must be non-negative")
    return WKB_ENERGY_PREFACTOR * kappa ** (1.0 / 3.0) * n ** (4.0 / 3.0)


def wkb_spacing(e: float, kappa: float) -> float:
    """Δe ≈ 4π^(3/2) Γ(1/4)^(−2) (eκ)^(1/4)."""
    if not kappa > 0:
        raise DomainError(f"WKB asymptote needs kappa > 0, got {kappa}")
    if e < 0:
        raise DomainError("energy must be non-negative")
    return WKB_SPACING_PREFACTOR * (e * kappa) ** 0.25
