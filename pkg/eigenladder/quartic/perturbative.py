"""
Second-order perturbative results for the quartic oscillator.

All functions are plain polynomials with rational coefficients, so they
accept ints, floats, Fractions or sympy symbols alike.
"""

from fractions import Fraction

REGIME = "small kappa, small n"

_HALF = Fraction(1, 2)


def groundstate_pert(kappa):
    """e_g = 1/2 + (3/4)κ − (21/8)κ²."""
    return _HALF + Fraction(3, 4) * kappa - Fraction(21, 8) * kappa ** 2


def lambda_pert(e, kappa):
    """
    λ on an eigenvalue e of H/ε₀:
    1 + 3κ(e + 1/2) − κ²{(69/4)(e + 1/2)² − (9/2)(e + 1/2) + 15/2}.
    """
    p = e + _HALF
    return 1 + 3 * kappa * p - kappa ** 2 * (Fraction(69, 4) * p ** 2 - Fraction(9, 2) * p + Fraction(15, 2))


def energy_pert(n, kappa):
    """e_n = n + 1/2 + (3/4)κ(2n² + 2n + 1) − κ²((17/4)n³ + (51/8)n² + (59/8)n + 21/8)."""
    if isinstance(n, int) and n < 0:
        raise ValueError("level index must be non-negative")
    return (n + _HALF
            + Fraction(3, 4) * kappa * (2 * n ** 2 + 2 * n + 1)
            - kappa ** 2 * (Fraction(17, 4) * n ** 3 + Fraction(51, 8) * n ** 2
                            + Fraction(59, 8) * n + Fraction(21, 8)))


def energy_sc_series(n, kappa):
    """e_n^(sc) = n + 1/2 + (3/2)κ(n² − n) − κ²((17/4)n³ − (33/8)n² − (1/8)n)."""
    if isinstance(n, int) and n < 0:
        raise ValueError("level index must be non-negative")
    return (n + _HALF
            + Fraction(3, 2) * kappa * (n ** 2 - n)
            - kappa ** 2 * (Fraction(17, 4) * n ** 3 - Fraction(33, 8) * n ** 2 - Fraction(1, 8) * n))


def first_order_spacing(n, kappa):
    """e_n − e_{n−1} to first order: 1 + 3nκ."""
    return 1 + 3 * n * kappa
