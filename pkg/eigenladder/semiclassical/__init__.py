from .surfaces import (
    EnergySurface,
    harmonic_surface,
    degree_two_surface,
    quartic_surface,
    monomial_surface,
    exponential_surface,
    surface_for,
)
from .engine import radial_solve, period_integral, lambda_sc, phase_function, action_area, number_sc
