"""
Energy ladder built from a level-spacing function.

Given λ and the ground level e_g the spectrum is

    e_n = e_{n−1} + λ(e_{n−1}),   e_0 = e_g,

with normalization products A_n = Π_{k=1..n} (e_k − e_g) for the states
obtained by repeated application of the raising eigenoperator.
"""

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .quartic import (
    e_max_negative,
    lambda_of_xi,
    lambda_pert,
    xi_of,
)
from .quartic import perturbative
from .semiclassical import EnergySurface, lambda_sc
from .utils.error_handling import DomainError, DomainExhausted, NonPositiveLambda
from .utils.quadrature import QuadratureConfig

logger = logging.getLogger(__name__)

PROVENANCES = ("constant", "quartic-closed", "quartic-negative", "perturbative", "quadrature", "tabulated")

# offsets from a finite end of a half-infinite domain used to sample positivity
_SAMPLE_OFFSETS = (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0)


@dataclass(frozen=True)
class LambdaFunction:
    """
    An evaluable level spacing e ↦ λ(e) on the half-open domain [lo, hi).

    Positivity is sampled when the object is built; the ladder checks it
    again at every level it climbs.
    """

    fn: Callable[[float], float]
    provenance: str
    lo: float = -math.inf
    hi: float = math.inf
    label: str = ""
    regime: Optional[str] = None
    samples: int = 6

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise DomainError(f"unknown lambda provenance '{self.provenance}'")
        if not self.lo < self.hi:
            raise DomainError(f"empty lambda domain [{self.lo}, {self.hi})")
        for e in self.sample_points():
            value = self.fn(e)
            if not value > 0:
                raise NonPositiveLambda(f"{self.name}: lambda({e:.10g}) = {value:.10g} is not positive")

    @property
    def name(self) -> str:
        return self.label or self.provenance

    def contains(self, e: float) -> bool:
        return self.lo <= e < self.hi

    def sample_points(self) -> List[float]:
        n = self.samples
        if math.isfinite(self.lo) and math.isfinite(self.hi):
            return np.linspace(self.lo, self.hi, n + 2)[1:-1].tolist()
        if math.isfinite(self.lo):
            return [self.lo + d for d in _SAMPLE_OFFSETS[:n]]
        if math.isfinite(self.hi):
            return [self.hi - d for d in _SAMPLE_OFFSETS[:n]]
        return [float(x) for x in np.linspace(-1.0, 1.0, n)]

    def __call__(self, e: float) -> float:
        if not self.contains(e):
            raise DomainError(f"{self.name}: e = {e:.15g} outside [{self.lo:.15g}, {self.hi:.15g})")
        return float(self.fn(e))


def constant_lambda(value: float = 1.0) -> LambdaFunction:
    return LambdaFunction(lambda e: value, "constant", label=f"constant {value:g}")


def quartic_closed_lambda(kappa: float) -> LambdaFunction:
    """
    Elliptic closed form for the quartic oscillator, either sign of κ.

    λ depends on e only through ξ = 16κ(e − 1/2). For κ < 0 levels below
    1/2 (the ground level sits there) use the same function of ξ, and the
    domain ends at e_max, where λ vanishes.
    """
    kappa = float(kappa)
    if kappa == 0:
        return constant_lambda(1.0)
    fn = lambda e: lambda_of_xi(xi_of(e, kappa))  # noqa: E731
    if kappa > 0:
        return LambdaFunction(fn, "quartic-closed", lo=0.5, label=f"quartic closed kappa={kappa:g}")
    return LambdaFunction(fn, "quartic-negative", hi=e_max_negative(kappa),
                          label=f"quartic negative kappa={kappa:g}")


def perturbative_lambda(kappa) -> LambdaFunction:
    """
    Second-order λ on energies from 0 up to its first positive zero.

    The zero is the root of the quadratic in p = e + 1/2.
    """
    kappa = float(kappa)
    if kappa == 0:
        return constant_lambda(1.0)
    a = 69.0 / 4.0 * kappa ** 2
    b = 3.0 * kappa + 4.5 * kappa ** 2
    c = 1.0 - 7.5 * kappa ** 2
    p_root = (b + math.sqrt(b * b + 4.0 * a * c)) / (2.0 * a)
    return LambdaFunction(lambda e: float(lambda_pert(e, kappa)), "perturbative",
                          lo=0.0, hi=p_root - 0.5, label=f"perturbative kappa={kappa:g}",
                          regime=perturbative.REGIME)


def quadrature_lambda(surface: EnergySurface, config: QuadratureConfig = None, samples: int = 3) -> LambdaFunction:
    """λ from the angular period integral over an arbitrary binding surface."""
    config = config or QuadratureConfig()
    lo = float(np.nextafter(surface.e_floor, math.inf))
    u_top = surface.u_ceiling(0.0)
    hi = surface.energy(u_top, 0.0) if math.isfinite(u_top) else math.inf
    return LambdaFunction(lambda e: lambda_sc(surface, e, config), "quadrature", lo=lo, hi=hi,
                          label=f"quadrature {surface.name}", samples=samples)


def tabulated_lambda(energies: Sequence[float], values: Sequence[float], label: str = "") -> LambdaFunction:
    """
    Piecewise-linear λ through sampled values.

    At a sample energy the sampled value comes back exactly, so identity
    checks over the sampled levels see no interpolation.
    """
    xs = np.asarray(energies, dtype=float)
    ys = np.asarray(values, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 1:
        raise DomainError("tabulated lambda needs matching one-dimensional samples")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("tabulated energies must be strictly increasing")
    if np.any(ys <= 0):
        raise NonPositiveLambda("tabulated lambda has non-positive samples")
    hi = float(np.nextafter(xs[-1], math.inf))
    return LambdaFunction(lambda e: float(np.interp(e, xs, ys)), "tabulated", lo=float(xs[0]), hi=hi,
                          label=label or "tabulated", samples=min(len(xs), 6))


@dataclass(frozen=True)
class Spectrum:
    """
    Ladder e_0 = e_g < e_1 < ... < e_N with normalization products.

    Attributes:
        e_g: Ground level
        levels: e_0..e_N
        spacings: λ(e_{n−1}) for n = 1..N
        norms: A_0..A_N with A_0 = 1 (may overflow to inf)
        log_norms: log A_0..log A_N
        lambda_source: Label of the λ the ladder was built from
        exhausted: The ladder stopped at the top of λ's domain
        next_spacing: λ(e_N) when it is defined and positive
    """

    e_g: float
    levels: Tuple[float, ...]
    spacings: Tuple[float, ...]
    norms: Tuple[float, ...]
    log_norms: Tuple[float, ...]
    lambda_source: str = ""
    exhausted: bool = False
    next_spacing: Optional[float] = None

    def __post_init__(self):
        if not self.levels or self.levels[0] != self.e_g:
            raise DomainError("spectrum must start at its ground level")
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise DomainError("spectrum levels must be strictly increasing")

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def n_max(self) -> int:
        return len(self.levels) - 1

    def rows(self) -> List[dict]:
        """CSV rows ``n,e_n,lambda_at_prev,A_log``."""
        return [
            {
                "n": n,
                "e_n": e,
                "lambda_at_prev": self.spacings[n - 1] if n else None,
                "A_log": self.log_norms[n],
            }
            for n, e in enumerate(self.levels)
        ]

    @classmethod
    def from_levels(cls, levels: Sequence[float], lambda_source: str = "tabulated") -> "Spectrum":
        """Wrap externally computed levels (oracle eigenvalues, say) as a spectrum."""
        levels = [float(e) for e in levels]
        if not levels:
            raise DomainError("spectrum needs at least one level")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise DomainError("spectrum levels must be strictly increasing")
        e_g = levels[0]
        spacings = [b - a for a, b in zip(levels, levels[1:])]
        rises = [e - e_g for e in levels[1:]]
        norms, log_norms = _norm_products(rises)
        return cls(e_g, tuple(levels), tuple(spacings), norms, log_norms, lambda_source)


def _norm_products(rises: Sequence[float]) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    norms, log_norms = [1.0], [0.0]
    for rise in rises:
        norms.append(norms[-1] * rise)
        log_norms.append(log_norms[-1] + math.log(rise))
    return tuple(norms), tuple(log_norms)


def build_spectrum(lam: LambdaFunction, e_g: float, n_max: int,
                   allow_exhaustion: bool = False) -> Spectrum:
    """
    Climb the ladder e_n = e_{n−1} + λ(e_{n−1}) from e_g.

    Levels are accumulated with ``math.fsum`` over e_g and the spacings, so
    e_n − e_g is the exact sum of the steps taken.

    Args:
        lam: Level spacing
        e_g: Ground level, inside the domain of ``lam``
        n_max: Highest level index requested
        allow_exhaustion: Return the partial ladder instead of raising when
            the domain of ``lam`` runs out

    Returns:
        The spectrum e_0..e_N, N ≤ n_max

    Raises:
        DomainError: if e_g is outside the domain of ``lam``
        NonPositiveLambda: if a spacing is not positive
        DomainExhausted: if the ladder leaves the domain (bounded spectra)
    """
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    e_g = float(e_g)
    if not lam.contains(e_g):
        raise DomainError(f"ground level {e_g:.15g} outside the domain of {lam.name}")

    levels: List[float] = [e_g]
    spacings: List[float] = []
    rises: List[float] = []
    exhausted = False
    for n in range(1, n_max + 1):
        step = lam(levels[-1])
        if not step > 0:
            raise NonPositiveLambda(f"{lam.name}: lambda(e_{n - 1} = {levels[-1]:.15g}) = {step:.15g}")
        spacings.append(step)
        rise = math.fsum(spacings)
        e_n = math.fsum([e_g] + spacings)
        if not lam.contains(e_n):
            spacings.pop()
            exhausted = True
            break
        levels.append(e_n)
        rises.append(rise)

    next_spacing = None
    if not exhausted:
        try:
            value = lam(levels[-1])
            next_spacing = value if value > 0 else None
        except DomainError:
            next_spacing = None

    norms, log_norms = _norm_products(rises)
    spectrum = Spectrum(e_g, tuple(levels), tuple(spacings), norms, log_norms,
                        lam.name, exhausted, next_spacing)
    if exhausted:
        message = (f"{lam.name}: ladder left [{lam.lo:.6g}, {lam.hi:.6g}) after e_{spectrum.n_max} = "
                   f"{levels[-1]:.10g}")
        if not allow_exhaustion:
            raise DomainExhausted(message, spectrum)
        logger.info("%s", message)
    else:
        logger.debug("%s: built %d levels up to e = %.10g", lam.name, len(levels), levels[-1])
    return spectrum


@dataclass(frozen=True)
class NumberFunction:
    """
    N(e) on the ladder: N(e_n) = n, so N(e + λ(e)) − N(e) = 1 and N(e_g) = 0.

    ``smooth`` optionally extends N off the ladder (a Bohr-Sommerfeld
    number function, for instance).
    """

    spectrum: Spectrum
    smooth: Optional[Callable[[float], float]] = None
    rel_tol: float = 1e-12

    def of_energy(self, e: float) -> int:
        levels = self.spectrum.levels
        i = int(np.searchsorted(levels, e))
        for j in (i - 1, i):
            if 0 <= j < len(levels) and math.isclose(levels[j], e, rel_tol=self.rel_tol, abs_tol=self.rel_tol):
                return j
        raise DomainError(f"e = {e:.15g} is not a ladder level")

    def __call__(self, e: float) -> int:
        return self.of_energy(e)

    @property
    def values(self) -> np.ndarray:
        return np.arange(len(self.spectrum.levels))

    def smooth_at(self, e: float) -> float:
        if self.smooth is None:
            raise DomainError("no smooth extension attached to this number function")
        return float(self.smooth(e))

    def step_residuals(self) -> List[int]:
        """N(e_{n−1} + λ(e_{n−1})) − N(e_{n−1}) − 1 on consecutive levels."""
        s = self.spectrum
        return [self.of_energy(e + step) - self.of_energy(e) - 1 for e, step in zip(s.levels, s.spacings)]


def number_on_ladder(spectrum: Spectrum, smooth: Optional[Callable[[float], float]] = None) -> NumberFunction:
    return NumberFunction(spectrum, smooth)


@dataclass(frozen=True)
class Classification:
    kind: str
    energies: Tuple[float, ...]
    values: Tuple[float, ...]
    residuals: Tuple[float, ...]


def classify_lambda(lam: LambdaFunction, e_range: Tuple[float, float], samples: int = 16,
                    tol: float = 1e-9) -> Classification:
    """
    Sort λ into widening, asymptotically-equal-spaced or bounded-spectrum.

    The fixed-point residual λ(λ(e) + e) − λ(e) is sampled over ``e_range``;
    where the step leaves the domain of λ the residual is −λ(e), λ being
    taken as zero past the bound.
    """
    lo, hi = e_range
    energies = np.linspace(lo, hi, samples).tolist()
    values, residuals = [], []
    for e in energies:
        value = lam(e)
        shifted = value + e
        residuals.append(lam(shifted) - value if lam.contains(shifted) else -value)
        values.append(value)

    scale = max(abs(v) for v in values)
    if all(abs(r) <= tol * scale for r in residuals):
        kind = "asymptotically-equal-spaced"
    elif residuals[-1] < 0:
        kind = "bounded-spectrum"
    else:
        kind = "widening"
    return Classification(kind, tuple(energies), tuple(values), tuple(residuals))


def oscillation_frequency(lam: LambdaFunction, e: float, epsilon0: float = 1.0) -> float:
    """ε₀λ(e)/ħ with ħ = 1, the frequency of ⟨a⟩ on a shell of energy e."""
    return epsilon0 * lam(e)


def _composed_shift(lam: Callable, e_g, k: int):
    # T^k(e_g) with T(x) = λ(x) + x, recomputed from the ground level
    return reduce(lambda x, _: lam(x) + x, range(k), e_g)


def nested_level(lam: Callable, e_g, n: int):
    """
    e_n as e_g + λ(e_g) + λ(λ(e_g) + e_g) + ..., each nested term evaluated
    from scratch. Accepts any callable, including symbolic ones.
    """
    if n < 0:
        raise DomainError(f"level index must be non-negative, got {n}")
    return e_g + sum((lam(_composed_shift(lam, e_g, k)) for k in range(n)), 0)


def nested_norm_product(lam: Callable, e_g, n: int):
    """A_n as the product of the first n partial nested sums."""
    if n < 0:
        raise DomainError(f"level index must be non-negative, got {n}")
    partials = [sum((lam(_composed_shift(lam, e_g, k)) for k in range(j)), 0) for j in range(1, n + 1)]
    return math.prod(partials) if partials else 1


def periodic_number_sho(e, e_g: float = 0.5, amplitude: float = 0.0):
    """
    SHO number function with a homogeneous period-one term added:
    N(e) = e − e_g + C sin(2π(e − e_g)). Still N(e_n) = n on the ladder.
    """
    d = np.asarray(e, dtype=float) - e_g
    value = d + amplitude * np.sin(2.0 * np.pi * d)
    return float(value) if np.ndim(value) == 0 else value
