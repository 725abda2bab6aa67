"""
Bracketed root finding for increasing functions on u >= 0.
"""

import math
from typing import Callable

import numpy as np
from scipy import optimize

from .error_handling import NoConvergence, NoRoot, NonMonotone

MAX_BRACKET_STEPS = 200
MAX_POLISH_STEPS = 200

# brentq rejects relative tolerances below 4 machine epsilons
MIN_RTOL = 4.0 * np.finfo(float).eps


def solve_increasing(fun: Callable[[float], float],
                     target: float,
                     rtol: float = 1e-14,
                     ceiling: float = math.inf,
                     start: float = 1.0) -> float:
    """
    Solve ``fun(u) = target`` for u >= 0 where ``fun`` increases in u.

    The bracket [0, u_hi] is grown geometrically from ``start``; a decrease
    of ``fun`` while growing raises NonMonotone. The root inside the bracket
    is found with Brent's method.

    Args:
        fun: Increasing function of u
        target: Value to reach
        rtol: Relative tolerance on u
        ceiling: Upper end of the monotone domain
        start: First trial upper bracket

    Returns:
        The root u

    Raises:
        NoRoot: if target <= fun(0)
        NonMonotone: if fun decreases during bracketing or target lies above fun(ceiling)
        NoConvergence: if an iteration cap is reached
    """
    lo = 0.0
    f_lo = fun(lo)
    if target <= f_lo:
        raise NoRoot(f"target {target:.15g} is not above the floor {f_lo:.15g}")

    hi = min(start, ceiling)
    f_prev = f_lo
    for _ in range(MAX_BRACKET_STEPS):
        f_hi = fun(hi)
        if f_hi < f_prev:
            raise NonMonotone(f"surface decreases between u={lo:.6g} and u={hi:.6g}")
        if f_hi >= target:
            break
        if hi >= ceiling:
            raise NonMonotone(
                f"target {target:.15g} lies above the monotone domain (max {f_hi:.15g})"
            )
        lo, f_prev = hi, f_hi
        hi = min(2.0 * hi, ceiling)
    else:
        raise NoConvergence("could not bracket root")

    if f_hi == target:
        return hi
    root, info = optimize.brentq(lambda u: fun(u) - target, lo, hi, xtol=1e-300,
                                 rtol=max(rtol, MIN_RTOL), maxiter=MAX_POLISH_STEPS,
                                 full_output=True, disp=False)
    if not info.converged:
        raise NoConvergence(f"root polish did not converge for target {target:.15g}: {info.flag}")
    return root
