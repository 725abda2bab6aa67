"""
Oscillator definitions.

All energies handled by the package are dimensionless, e = E/ε₀, with
ħ = 1. ``epsilon0`` is carried only to label output in physical units.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .utils.error_handling import DomainError

POTENTIALS = ("quartic", "monomial", "exponential", "none")
CONVENTION = "hbar=1, e=E/epsilon0, z=(x+ip)/sqrt(2)"

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class OscillatorSpec:
    """
    H/ε₀ = a†a + 1/2 + V/ε₀ for one of the supported interaction families.

    * quartic:      V = (κ ε₀/4)(a + a†)⁴
    * monomial:     V = (κ ε₀/l)(a + a†)^l, l even and at least 4
    * exponential:  V = κ ε₀ (exp(α²(a + a†)²) − 1)
    * none:         the simple harmonic oscillator
    """

    epsilon0: float = 1.0
    potential: str = "quartic"
    kappa: Number = Fraction(0)
    degree: int = 4
    alpha2: float = 0.25
    convention: str = CONVENTION

    def __post_init__(self):
        if not self.epsilon0 > 0:
            raise DomainError(f"epsilon0 must be positive, got {self.epsilon0}")
        if self.potential not in POTENTIALS:
            raise DomainError(f"unknown potential '{self.potential}'")
        if self.potential == "monomial" and (self.degree < 4 or self.degree % 2):
            raise DomainError(f"monomial degree must be even and >= 4, got {self.degree}")
        if self.potential == "quartic" and self.degree != 4:
            object.__setattr__(self, "degree", 4)
        if self.potential == "exponential" and not self.alpha2 > 0:
            raise DomainError("exponential potential needs alpha2 > 0")

    @classmethod
    def quartic(cls, kappa: Number, epsilon0: float = 1.0) -> "OscillatorSpec":
        return cls(epsilon0=epsilon0, potential="quartic", kappa=kappa)

    @classmethod
    def monomial(cls, degree: int, kappa: Number, epsilon0: float = 1.0) -> "OscillatorSpec":
        return cls(epsilon0=epsilon0, potential="monomial", kappa=kappa, degree=degree)

    @classmethod
    def exponential(cls, alpha2: float, kappa: Number, epsilon0: float = 1.0) -> "OscillatorSpec":
        return cls(epsilon0=epsilon0, potential="exponential", kappa=kappa, alpha2=alpha2)

    @classmethod
    def sho(cls, epsilon0: float = 1.0) -> "OscillatorSpec":
        return cls(epsilon0=epsilon0, potential="none", kappa=Fraction(0))

    @property
    def kappa_float(self) -> float:
        return float(self.kappa)

    @property
    def is_harmonic(self) -> bool:
        return self.potential == "none" or self.kappa == 0

    def surface(self):
        """Semiclassical energy surface e(u, θ) of this oscillator."""
        from .semiclassical.surfaces import surface_for
        return surface_for(self)

    def hamiltonian(self, max_order: int = 2):
        """
        H/ε₀ as a κ-graded OperatorPoly (quartic and harmonic only).

        The coupling stays formal: the interaction sits at κ-order one.
        """
        from .algebra.eigenoperator import quartic_hamiltonian
        if self.potential not in ("quartic", "none"):
            raise DomainError(f"no ladder polynomial for potential '{self.potential}'")
        return quartic_hamiltonian(max_order, harmonic=self.potential == "none")

    def describe(self) -> str:
        if self.potential == "quartic":
            return f"quartic kappa={self.kappa}"
        if self.potential == "monomial":
            return f"monomial l={self.degree} kappa={self.kappa}"
        if self.potential == "exponential":
            return f"exponential alpha2={self.alpha2} kappa={self.kappa}"
        return "harmonic"
