"""
Closed-form semiclassical level spacing of the quartic oscillator.

With ξ = 16(e − 1/2)κ the angular integral ∫ dφ / √(1 + ξ cos⁴φ) reduces to
elliptic integrals. For κ > 0

    λ(e) = (π/2) (1 + ξ)^(1/4) / K(√q),     q = (√(1+ξ) − 1) / (2√(1+ξ)),

and for κ < 0, |ξ| ≤ 1,

    λ(e) = (π/2) √(1 + √|ξ|) / K(√q′),     q′ = 2√|ξ| / (1 + √|ξ|),

which vanishes at |ξ| = 1, the top of the bounded spectrum.
"""

import math
from dataclasses import dataclass

from ..utils.error_handling import BeyondBound, DomainError
from .elliptic import elliptic_F, elliptic_K, elliptic_K_complementary


def xi_of(e: float, kappa: float) -> float:
    return 16.0 * (e - 0.5) * kappa


@dataclass(frozen=True)
class EllipticParams:
    """Elliptic parametrization of one energy shell."""

    xi: float

    @classmethod
    def from_energy(cls, e: float, kappa: float) -> "EllipticParams":
        return cls(xi_of(e, kappa))

    @property
    def q(self) -> float:
        if self.xi < 0:
            raise DomainError("q is defined for positive coupling only")
        root = math.sqrt(1.0 + self.xi)
        return (root - 1.0) / (2.0 * root)

    @property
    def q_prime(self) -> float:
        if self.xi > 0:
            raise DomainError("q' is defined for negative coupling only")
        s = math.sqrt(-self.xi)
        return 2.0 * s / (1.0 + s)

    def alpha(self, theta: float) -> float:
        """Amplitude of the positive-coupling reduction, θ in [0, π/2]."""
        return elliptic_amplitude_positive(theta, self.xi)

    def alpha_prime(self, theta: float) -> float:
        """Amplitude of the negative-coupling reduction, θ in [0, π/2]."""
        return elliptic_amplitude_negative(theta, self.xi)


def lambda_of_xi(xi: float) -> float:
    """
    λ as a function of the shell parameter ξ alone, for ξ ≥ −1.

    ξ > 0 uses the positive-coupling reduction, −1 ≤ ξ < 0 the negative
    one; λ(0) = 1 and λ(−1) = 0.
    """
    if xi < -1.0:
        raise DomainError(f"xi = {xi:.15g} is below -1")
    if xi == 0.0:
        return 1.0
    if xi > 0.0:
        q = EllipticParams(xi).q
        return 0.5 * math.pi * (1.0 + xi) ** 0.25 / elliptic_K(math.sqrt(q))
    abs_xi = -xi
    if abs_xi == 1.0:
        return 0.0
    s = math.sqrt(abs_xi)
    # k' = sqrt(1 - q') = sqrt(1 - |xi|) / (1 + s), free of cancellation near |xi| = 1
    k_prime = math.sqrt(1.0 - abs_xi) / (1.0 + s)
    return 0.5 * math.pi * math.sqrt(1.0 + s) / elliptic_K_complementary(k_prime)


def lambda_sc_quartic(e: float, kappa: float) -> float:
    """
    Semiclassical spacing λ(e) for κ > 0.

    Args:
        e: Dimensionless energy, above 1/2
        kappa: Positive coupling

    Returns:
        λ(e)
    """
    if not e > 0.5:
        raise DomainError(f"energy must exceed 1/2, got {e}")
    if not kappa > 0:
        raise DomainError(f"closed form needs kappa > 0, got {kappa}")
    return lambda_of_xi(xi_of(e, kappa))


def e_max_negative(kappa: float) -> float:
    """Upper bound 1/2 + 1/(16|κ|) of the spectrum for κ < 0."""
    if not kappa < 0:
        raise DomainError(f"bound exists for kappa < 0 only, got {kappa}")
    return 0.5 + 1.0 / (16.0 * abs(kappa))


def lambda_sc_quartic_negative(e: float, kappa: float) -> float:
    """
    Semiclassical spacing λ(e) for κ < 0 and |ξ| ≤ 1.

    Raises:
        BeyondBound: for |ξ| > 1, carrying e_max
    """
    if not kappa < 0:
        raise DomainError(f"negative branch needs kappa < 0, got {kappa}")
    if not e > 0.5:
        raise DomainError(f"energy must exceed 1/2, got {e}")
    abs_xi = abs(xi_of(e, kappa))
    if abs_xi > 1.0:
        e_max = e_max_negative(kappa)
        raise BeyondBound(f"|xi| = {abs_xi:.6g} > 1: energy {e:.6g} is above e_max {e_max:.6g}", e_max)
    return lambda_of_xi(-abs_xi)


def lambda_sc_series(e: float, kappa: float) -> float:
    """Small-ξ expansion 1 + 3κ(e − 1/2) − (69/4)κ²(e − 1/2)²."""
    d = e - 0.5
    return 1.0 + 3.0 * kappa * d - 69.0 / 4.0 * kappa ** 2 * d ** 2


def elliptic_amplitude_positive(theta: float, xi: float) -> float:
    """α = arccos((√(1+ξ) − tan²θ) / (√(1+ξ) + tan²θ)) on [0, π/2]."""
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError("amplitude is tabulated on [0, pi/2]")
    root = math.sqrt(1.0 + xi)
    # tan²θ written through cos²θ so θ = π/2 maps to α = π
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    return math.acos((root * c2 - s2) / (root * c2 + s2))


def elliptic_amplitude_negative(theta: float, xi: float) -> float:
    """
    α′ = arctan(tanθ / √(1 − √|ξ|)) on [0, π/2].

    Substituting t = tanθ turns the angular integrand into
    1/√((t² + 1 − √|ξ|)(t² + 1 + √|ξ|)), whose reduction to F(α′|q′) has
    the smaller root √(1 − √|ξ|) in the amplitude.
    """
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError("amplitude is tabulated on [0, pi/2]")
    s = math.sqrt(abs(xi))
    if s >= 1.0:
        raise DomainError("amplitude needs |xi| < 1")
    return math.atan2(math.sin(theta), math.sqrt(1.0 - s) * math.cos(theta))


def _quarter_integral(theta: float, xi: float) -> float:
    if xi >= 0:
        params = EllipticParams(xi)
        return elliptic_F(elliptic_amplitude_positive(theta, xi), params.q) / (2.0 * (1.0 + xi) ** 0.25)
    s = math.sqrt(-xi)
    return elliptic_F(elliptic_amplitude_negative(theta, xi), EllipticParams(xi).q_prime) / math.sqrt(1.0 + s)


def angular_integral(theta: float, e: float, kappa: float) -> float:
    """
    I(θ) = ∫₀^θ dφ / √(1 + ξ cos⁴φ) from the elliptic reductions.

    Any θ ≥ 0 is accepted: the integrand has period π and is symmetric
    about π/2.
    """
    if theta < 0:
        return -angular_integral(-theta, e, kappa)
    xi = xi_of(e, kappa)
    half = 0.5 * math.pi
    quarter = _quarter_integral(half, xi)
    periods, rest = divmod(theta, math.pi)
    if rest <= half:
        partial = _quarter_integral(rest, xi)
    else:
        partial = 2.0 * quarter - _quarter_integral(math.pi - rest, xi)
    return 2.0 * quarter * periods + partial
