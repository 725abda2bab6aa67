"""
Adaptive composite Gauss-Legendre quadrature.

Fixed 15-point panels with recursive bisection. Panels are always visited
left to right and summed with ``math.fsum``, so results do not depend on
evaluation order.
"""

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .error_handling import QuadratureFailure


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for angular/energy quadrature and radial root finding."""

    tolerance: float = 1e-10
    max_depth: int = 40
    root_tolerance: float = 1e-14
    rel_tolerance: float = 1e-14
    points: int = 15
    initial_panels: int = 4

    def __post_init__(self):
        if self.tolerance <= 0 or self.root_tolerance <= 0 or self.rel_tolerance <= 0:
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1 or self.points < 2 or self.initial_panels < 1:
            raise ValueError("quadrature depth, points and panels must be positive")


class GaussLegendre:
    """
    Adaptive Gauss-Legendre integrator.

    Args:
        config: Quadrature configuration
        vectorized: If True the integrand accepts a numpy array of nodes
    """

    def __init__(self, config: QuadratureConfig = None, vectorized: bool = False):
        self.config = config or QuadratureConfig()
        self.vectorized = vectorized
        self.xg, self.wg = np.polynomial.legendre.leggauss(self.config.points)
        self.evaluations = 0

    def panel(self, fun: Callable, lo: float, hi: float) -> float:
        """Fixed-order rule on a single interval."""
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        pts = mid + half * self.xg
        if self.vectorized:
            vals = np.asarray(fun(pts), dtype=float)
        else:
            vals = np.array([fun(float(pt)) for pt in pts], dtype=float)
        self.evaluations += len(pts)
        return float(half * math.fsum(self.wg * vals))

    def integrate(self, fun: Callable, lo: float, hi: float) -> float:
        """
        Integrate ``fun`` over ``[lo, hi]`` to the configured tolerance.

        Args:
            fun: Integrand
            lo: Lower bound
            hi: Upper bound

        Returns:
            Integral value

        Raises:
            QuadratureFailure: if a panel is still unresolved at max depth
        """
        if hi == lo:
            return 0.0
        if hi < lo:
            return -self.integrate(fun, hi, lo)

        n = self.config.initial_panels
        edges = np.linspace(lo, hi, n + 1)
        tol = self.config.tolerance / n
        pieces: List[float] = []
        for a, b in zip(edges[:-1], edges[1:]):
            pieces.append(self._refine(fun, float(a), float(b), self.panel(fun, a, b), tol, 0))
        return math.fsum(pieces)

    def _refine(self, fun: Callable, a: float, b: float, whole: float, tol: float, depth: int) -> float:
        m = 0.5 * (a + b)
        left = self.panel(fun, a, m)
        right = self.panel(fun, m, b)
        total = left + right
        if abs(total - whole) <= max(tol, self.config.rel_tolerance * abs(total)):
            return total
        if depth >= self.config.max_depth:
            raise QuadratureFailure(
                f"tolerance {tol:.3g} unmet on [{a:.6g}, {b:.6g}] at depth {depth}"
            )
        return (self._refine(fun, a, m, left, tol / 2, depth + 1)
                + self._refine(fun, m, b, right, tol / 2, depth + 1))


def integrate(fun: Callable, lo: float, hi: float, config: QuadratureConfig = None) -> float:
    """Convenience wrapper around :class:`GaussLegendre`."""
    return GaussLegendre(config).integrate(fun, lo, hi)
