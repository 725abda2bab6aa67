"""
Normal-ordered polynomials in the ladder operators a, a†.

A term ``k^j * c * ad^r a^s`` stands for c κ^j (a†)^r a^s with c an exact
rational and κ the dimensionless coupling, carried formally so that every
identity can be checked order by order. Products are reduced to normal
order with Wick's contraction formula

    (a†)^r a^s (a†)^t a^u = Σ_j  j! C(s,j) C(t,j) (a†)^(r+t-j) a^(s+u-j),

which is [a, a†] = 1 applied exhaustively.
"""

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Tuple, Union

import numpy as np
import sympy

Key = Tuple[int, int, int]  # (kappa order, creation power r, annihilation power s)
Scalar = Union[int, Fraction]

DEFAULT_MAX_ORDER = 2


class OperatorPoly:
    """
    Immutable normal-ordered ladder-operator polynomial graded by κ.

    Args:
        terms: Mapping ``(k, r, s) -> coefficient``
        max_order: Highest κ power retained; higher terms are dropped
    """

    __slots__ = ("_terms", "max_order", "_hash")

    def __init__(self, terms: Mapping[Key, Scalar] = None, max_order: int = DEFAULT_MAX_ORDER):
        if max_order < 0:
            raise ValueError("max_order must be non-negative")
        clean: Dict[Key, Fraction] = {}
        for (k, r, s), c in (terms or {}).items():
            if k < 0 or r < 0 or s < 0:
                raise ValueError(f"negative power in term {(k, r, s)}")
            if k > max_order:
                continue
            c = Fraction(c)
            if c:
                clean[(k, r, s)] = clean.get((k, r, s), Fraction(0)) + c
        self._terms = MappingProxyType({key: c for key, c in sorted(clean.items()) if c})
        self.max_order = max_order
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def scalar(cls, value: Scalar, order: int = 0, max_order: int = DEFAULT_MAX_ORDER) -> "OperatorPoly":
        """The c-number ``value * κ^order``."""
        return cls({(order, 0, 0): value}, max_order)

    @classmethod
    def monomial(cls, r: int, s: int, coefficient: Scalar = 1, order: int = 0,
                 max_order: int = DEFAULT_MAX_ORDER) -> "OperatorPoly":
        """``coefficient * κ^order * (a†)^r a^s``."""
        return cls({(order, r, s): coefficient}, max_order)

    @classmethod
    def annihilation(cls, max_order: int = DEFAULT_MAX_ORDER) -> "OperatorPoly":
        return cls.monomial(0, 1, max_order=max_order)

    @classmethod
    def creation(cls, max_order: int = DEFAULT_MAX_ORDER) -> "OperatorPoly":
        return cls.monomial(1, 0, max_order=max_order)

    @classmethod
    def number(cls, max_order: int = DEFAULT_MAX_ORDER) -> "OperatorPoly":
        return cls.monomial(1, 1, max_order=max_order)

    # -- inspection ------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, r: int, s: int) -> Tuple[Fraction, ...]:
        """κ-polynomial coefficient of (a†)^r a^s, lowest order first."""
        return tuple(self._terms.get((k, r, s), Fraction(0)) for k in range(self.max_order + 1))

    def order_part(self, k: int) -> "OperatorPoly":
        """The κ^k slice, returned at grade 0."""
        return OperatorPoly({(0, r, s): c for (j, r, s), c in self._terms.items() if j == k},
                            self.max_order)

    def power_pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted({(r, s) for (_, r, s) in self._terms}))

    def at_kappa(self, kappa) -> Dict[Tuple[int, int], object]:
        """Collapse the κ grading at a numeric (or Fraction) coupling."""
        out: Dict[Tuple[int, int], object] = {}
        for (k, r, s), c in self._terms.items():
            out[(r, s)] = out.get((r, s), 0) + c * kappa ** k
        return out

    # -- arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "OperatorPoly":
        if isinstance(other, OperatorPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return OperatorPoly.scalar(other, max_order=self.max_order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return OperatorPoly(terms, min(self.max_order, other.max_order))

    __radd__ = __add__

    def __neg__(self):
        return OperatorPoly({key: -c for key, c in self._terms.items()}, self.max_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OperatorPoly({key: c * other for key, c in self._terms.items()}, self.max_order)
        if isinstance(other, OperatorPoly):
            return normal_order_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = OperatorPoly.scalar(1, max_order=self.max_order)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, j: int) -> "OperatorPoly":
        """Multiply by κ^j."""
        return OperatorPoly({(k + j, r, s): c for (k, r, s), c in self._terms.items()}, self.max_order)

    def truncate(self, max_order: int) -> "OperatorPoly":
        return OperatorPoly(self._terms, max_order)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = OperatorPoly.scalar(other, max_order=self.max_order)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return dict(self._terms) == dict(other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"OperatorPoly({self})"

    def __str__(self):
        return render(self)


def render(p: OperatorPoly) -> str:
    """Stable text form, terms ordered by κ-order, then r, then s."""
    if p.is_zero():
        return "0"
    return " + ".join(f"k^{k} * {c} * ad^{r} a^{s}" for (k, r, s), c in p.terms.items())


def normal_order_product(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    """
    Product p·q rewritten in canonical normal order, exact arithmetic.

    Args:
        p: Left factor
        q: Right factor

    Returns:
        Normal-ordered product truncated at the smaller max_order
    """
    max_order = min(p.max_order, q.max_order)
    out: Dict[Key, Fraction] = {}
    for (k1, r, s), c1 in p.terms.items():
        for (k2, t, u), c2 in q.terms.items():
            k = k1 + k2
            if k > max_order:
                continue
            base = c1 * c2
            for j in range(min(s, t) + 1):
                key = (k, r + t - j, s + u - j)
                out[key] = out.get(key, Fraction(0)) + base * (math.comb(s, j) * math.comb(t, j) * math.factorial(j))
    return OperatorPoly(out, max_order)


def commutator(p: OperatorPoly, q: OperatorPoly) -> OperatorPoly:
    """Normal-ordered p·q − q·p."""
    return normal_order_product(p, q) - normal_order_product(q, p)


def dagger(p: OperatorPoly) -> OperatorPoly:
    """
    Hermitian conjugate with real coefficients.

    (c (a†)^r a^s)† = c (a†)^s a^r, which is already normal ordered, so the
    canonical form is reached by swapping the power pair.
    """
    return OperatorPoly({(k, s, r): c for (k, r, s), c in p.terms.items()}, p.max_order)


def fock_matrix_element(p: OperatorPoly, m: int, n: int, kappa=0, exact: bool = False):
    """
    Harmonic-oscillator matrix element ⟨m|p|n⟩ at coupling ``kappa``.

    A term (a†)^r a^s contributes √(n!/(n−s)!) √(m!/(m−r)!) when
    m − r = n − s ≥ 0.

    Args:
        p: Operator polynomial
        m: Bra occupation
        n: Ket occupation
        kappa: Coupling at which the κ grading is evaluated
        exact: Return a sympy expression built from exact square roots

    Returns:
        Float, or sympy number when ``exact``
    """
    if m < 0 or n < 0:
        raise ValueError("Fock occupations must be non-negative")
    total = sympy.Integer(0) if exact else 0.0
    for (r, s), c in sorted(p.at_kappa(Fraction(kappa) if exact else kappa).items()):
        if n < s or m < r or m - r != n - s:
            continue
        weight = math.perm(n, s) * math.perm(m, r)
        if exact:
            total += sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(sympy.Integer(weight))
        else:
            total += float(c) * math.sqrt(weight)
    return total


def fock_matrix(p: OperatorPoly, dim: int, kappa: float = 0.0) -> np.ndarray:
    """
    Dense matrix of a Hermitian polynomial in the truncated Fock basis.

    Only the upper triangle is accumulated; the lower triangle is its
    mirror image, so the result is symmetric bit for bit.
    """
    matrix = np.zeros((dim, dim), dtype=float)
    for (r, s), c in sorted(p.at_kappa(kappa).items()):
        c = float(c)
        if c == 0.0 or r > s:
            continue
        n = np.arange(s, dim)
        m = n - s + r
        keep = m < dim
        n, m = n[keep], m[keep]
        weight = _falling(n, s) * _falling(m, r)
        matrix[m, n] += c * np.sqrt(weight)
    return np.triu(matrix) + np.triu(matrix, 1).T


def _falling(n: np.ndarray, s: int) -> np.ndarray:
    out = np.ones_like(n, dtype=float)
    for i in range(s):
        out *= n - i
    return out


def sum_polys(polys: Iterable[OperatorPoly], max_order: int = DEFAULT_MAX_ORDER) -> OperatorPoly:
    total = OperatorPoly({}, max_order)
    for p in polys:
        total = total + p
    return total
