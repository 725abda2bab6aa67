"""
Finite-difference Lie operator.

For a spacing function λ the operator acts as

    ℒ_λ f(x) = f(x + λ(x)) − f(x)

It is linear but not a derivation: the product rule picks up the extra
term ℒf·ℒg. Its kernel generalizes periodic functions, and λ lies in its
own kernel exactly when the ladder built from λ is equally spaced.

Functions are evaluated pointwise; nothing here interpolates.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np

from .utils.error_handling import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealFunction:
    """
    A real function on a half-open interval ``[lo, hi)``.

    Attributes:
        fn: The map x ↦ f(x)
        lo: Lower end of the domain
        hi: Upper end of the domain (excluded)
        name: Label used in tables
    """

    fn: Callable[[float], float]
    lo: float = -math.inf
    hi: float = math.inf
    name: str = "f"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"{self.name}: empty interval [{self.lo}, {self.hi})")

    def contains(self, x: float) -> bool:
        return self.lo <= x < self.hi

    def __call__(self, x: float) -> float:
        if not self.contains(x):
            raise DomainError(f"{self.name}({x!r}) outside [{self.lo}, {self.hi})")
        return float(self.fn(x))


def constant(value: float, name: str = None) -> RealFunction:
    return RealFunction(lambda x: value, name=name or f"const {value:g}")


def shifted(lam: RealFunction, x: float) -> float:
    """x + λ(x)."""
    return x + lam(x)


def lie_apply(lam: RealFunction, f: RealFunction, x: float) -> float:
    """ℒ_λ f(x) = f(x + λ(x)) − f(x)."""
    return f(shifted(lam, x)) - f(x)


def product_rule_residual(lam: RealFunction, f: RealFunction, g: RealFunction, x: float) -> float:
    """
    ℒ(fg) − (f ℒg + g ℒf + ℒf ℒg) at x; zero up to rounding.

    Both sides are assembled from the same four function values, so the
    residual measures arithmetic only.
    """
    y = shifted(lam, x)
    fx, gx, fy, gy = f(x), g(x), f(y), g(y)
    lf, lg = fy - fx, gy - gx
    return (fy * gy - fx * gx) - (fx * lg + gx * lf + lf * lg)


def lie_commutator(lam: RealFunction, xi: RealFunction, f: RealFunction, x: float) -> float:
    """
    [ℒ_λ-shift, ℒ_ξ-shift] applied to f at x:
    f(x + λ(x) + ξ(x + λ(x))) − f(x + ξ(x) + λ(x + ξ(x))).

    Vanishes for every f exactly when ℒ_λ ξ = ℒ_ξ λ at x.
    """
    left = shifted(xi, shifted(lam, x))
    right = shifted(lam, shifted(xi, x))
    return f(left) - f(right)


def kernel_residual(lam: RealFunction, x: float) -> float:
    """ℒ_λ λ(x) = λ(x + λ(x)) − λ(x); identically zero iff the ladder from x is equally spaced."""
    return lie_apply(lam, lam, x)


def linearity_residual(lam: RealFunction, f: RealFunction, g: RealFunction, a: float, b: float, x: float) -> float:
    """ℒ(af + bg) − (aℒf + bℒg) at x."""
    combo = RealFunction(lambda t: a * f(t) + b * g(t), f.lo, f.hi, f"{a:g}{f.name}+{b:g}{g.name}")
    return lie_apply(lam, combo, x) - (a * lie_apply(lam, f, x) + b * lie_apply(lam, g, x))


def derivative_quotient(lam: RealFunction, f: RealFunction, x: float, scale: float) -> float:
    """ℒ_{sλ} f(x) / (sλ(x)), which tends to f′(x) as s → 0."""
    scaled = RealFunction(lambda t: scale * lam(t), lam.lo, lam.hi, f"{scale:g}{lam.name}")
    return lie_apply(scaled, f, x) / scaled(x)


def _sample_functions(rng: np.random.Generator) -> Tuple[List[RealFunction], List[RealFunction]]:
    c = rng.uniform(-2.0, 2.0, size=4)
    w = rng.uniform(0.5, 3.0, size=2)
    functions = [
        RealFunction(lambda x: c[0] + c[1] * x + c[2] * x * x + c[3] * x ** 3, name="cubic"),
        RealFunction(lambda x: math.sin(w[0] * x) + 0.5 * math.cos(w[1] * x), name="trig"),
        RealFunction(lambda x: math.exp(-0.1 * x * x), name="gauss"),
    ]
    s = rng.uniform(0.2, 1.5, size=2)
    spacings = [
        constant(float(s[0]), name="const"),
        RealFunction(lambda x: s[1] * (1.0 + 0.1 * x * x), name="quadratic"),
        RealFunction(lambda x: 1.0 + 0.25 * math.sin(x), name="periodic"),
    ]
    return functions, spacings


def _scale(*values: float) -> float:
    return max(1.0, max(abs(v) for v in values))


def identity_table(seed: int = 0, samples: int = 4) -> List[Dict[str, object]]:
    """
    Residual rows ``check,x,value,scale`` for the operator identities on
    randomized polynomial and trigonometric samples.

    ``value`` is the raw residual and ``scale`` the magnitude it is
    compared against; a check passes when |value| ≤ 1e−12·scale. The
    sample points depend only on ``seed``.
    """
    rng = np.random.default_rng(seed)
    functions, spacings = _sample_functions(rng)
    xs = np.round(rng.uniform(-2.0, 2.0, size=samples), 6).tolist()
    f, g, h = functions
    a, b = rng.uniform(-3.0, 3.0, size=2).tolist()
    rows: List[Dict[str, object]] = []

    for lam in spacings:
        for x in xs:
            y = shifted(lam, x)
            scale = _scale(f(x), f(y), g(x), g(y))
            rows.append({"check": f"linearity[{lam.name}]", "x": x,
                         "value": linearity_residual(lam, f, g, a, b, x),
                         "scale": scale * max(1.0, abs(a) + abs(b))})
            rows.append({"check": f"product_rule[{lam.name}]", "x": x,
                         "value": product_rule_residual(lam, f, g, x), "scale": scale * scale})

    # commuting pairs: two constants, and any spacing with itself
    pairs = [(spacings[0], constant(0.37, name="const'")), (spacings[1], spacings[1]), (spacings[2], spacings[2])]
    for lam, xi in pairs:
        for x in xs:
            rows.append({"check": f"commutator[{lam.name},{xi.name}]", "x": x,
                         "value": lie_commutator(lam, xi, h, x), "scale": 1.0})

    for x in xs:
        rows.append({"check": "kernel[const]", "x": x, "value": kernel_residual(spacings[0], x),
                     "scale": _scale(spacings[0](x))})
    logger.debug("identity table: %d rows from seed %d", len(rows), seed)
    return rows


def failing_rows(rows: List[Dict[str, object]], rel_tol: float = 1e-12) -> List[Dict[str, object]]:
    """Rows whose |value| exceeds ``rel_tol``·scale."""
    return [row for row in rows if abs(row["value"]) > rel_tol * row["scale"]]
