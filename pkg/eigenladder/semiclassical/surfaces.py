"""
Semiclassical energy surfaces e(u, θ).

u = |z|² and θ = arg z, with z = (x + ip)/√2 in units where ħ = 1 and
energies are measured in ε₀. The surface is the normal-ordered
Hamiltonian with a → z, a† → z̄.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from ..utils.error_handling import DomainError

EXP_CLAMP = 700.0


def _safe_exp(x: float) -> float:
    return math.exp(min(x, EXP_CLAMP))


@dataclass(frozen=True)
class EnergySurface:
    """
    A binding energy surface.

    Attributes:
        name: Label used in logs and output
        energy: e(u, θ)
        slope: ∂e/∂u at (u, θ)
        period: Period of the θ-dependence (π for even potentials)
        e_floor: e(0, θ), identical for every θ on the built-in surfaces
        ceiling: u at which ∂e/∂u first vanishes (negative coupling), or None
    """

    name: str
    energy: Callable[[float, float], float]
    slope: Callable[[float, float], float]
    period: float = 2.0 * math.pi
    e_floor: float = 0.5
    ceiling: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if not 0 < self.period <= 2.0 * math.pi:
            raise DomainError("surface period must lie in (0, 2pi]")
        if abs(round(2.0 * math.pi / self.period) * self.period - 2.0 * math.pi) > 1e-12:
            raise DomainError("surface period must divide 2pi")

    @property
    def repeats(self) -> int:
        return int(round(2.0 * math.pi / self.period))

    def u_ceiling(self, theta: float) -> float:
        return math.inf if self.ceiling is None else self.ceiling(theta)


def harmonic_surface() -> EnergySurface:
    """e = 1/2 + u."""
    return EnergySurface("harmonic", lambda u, t: 0.5 + u, lambda u, t: 1.0, period=math.pi)


def degree_two_surface(c: float) -> EnergySurface:
    """e = 1/2 + u + c u cos 2θ, a quadratic deformation with constant spacing √(1 − c²)."""
    if not abs(c) < 1:
        raise DomainError("degree-two surface is binding for |c| < 1 only")
    return EnergySurface(
        f"degree-two c={c}",
        lambda u, t: 0.5 + u * (1.0 + c * math.cos(2.0 * t)),
        lambda u, t: 1.0 + c * math.cos(2.0 * t),
        period=math.pi,
    )


def monomial_surface(degree: int, kappa: float) -> EnergySurface:
    """
    e = 1/2 + u + (κ/l)(2√u cosθ)^l for V = κ(a + a†)^l / l.

    For κ < 0 the surface turns over at u* with ∂e/∂u(u*) = 0, which is
    exposed as the ceiling of the monotone branch.
    """
    if degree < 4 or degree % 2:
        raise DomainError(f"monomial degree must be even and >= 4, got {degree}")
    l = degree
    half = l // 2
    scale = kappa * 2.0 ** l / l

    def energy(u, t):
        return 0.5 + u + scale * u ** half * math.cos(t) ** l

    def slope(u, t):
        return 1.0 + scale * half * u ** (half - 1) * math.cos(t) ** l

    ceiling = None
    if kappa < 0:
        def ceiling(t):
            c = math.cos(t) ** l
            if c == 0.0:
                return math.inf
            return (1.0 / (abs(scale) * half * c)) ** (1.0 / (half - 1))

    name = "quartic" if l == 4 else f"monomial l={l}"
    return EnergySurface(f"{name} kappa={kappa}", energy, slope, period=math.pi, ceiling=ceiling)


def quartic_surface(kappa: float) -> EnergySurface:
    """e = 1/2 + u + 4κu²cos⁴θ."""
    return monomial_surface(4, kappa)


def exponential_surface(alpha2: float, kappa: float) -> EnergySurface:
    """e = 1/2 + u + κ(exp(4α²u cos²θ) − 1)."""
    if not alpha2 > 0:
        raise DomainError("exponential surface needs alpha2 > 0")
    if kappa < 0:
        raise DomainError("exponential surface is binding for kappa >= 0 only")

    def energy(u, t):
        return 0.5 + u + kappa * (_safe_exp(4.0 * alpha2 * u * math.cos(t) ** 2) - 1.0)

    def slope(u, t):
        w = 4.0 * alpha2 * math.cos(t) ** 2
        return 1.0 + kappa * w * _safe_exp(w * u)

    return EnergySurface(f"exponential alpha2={alpha2} kappa={kappa}", energy, slope, period=math.pi)


def surface_for(spec) -> EnergySurface:
    """Surface of an OscillatorSpec."""
    kappa = spec.kappa_float
    if spec.potential == "none" or kappa == 0:
        return harmonic_surface()
    if spec.potential == "quartic":
        return quartic_surface(kappa)
    if spec.potential == "monomial":
        return monomial_surface(spec.degree, kappa)
    if spec.potential == "exponential":
        return exponential_surface(spec.alpha2, kappa)
    raise DomainError(f"no surface for potential '{spec.potential}'")
