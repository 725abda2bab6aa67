import cmath
import math

import numpy as np
import pytest

from ..oscillator import OscillatorSpec
from ..quartic import angular_integral, lambda_sc_quartic, lambda_sc_quartic_negative
from ..semiclassical import (
    action_area,
    degree_two_surface,
    exponential_surface,
    harmonic_surface,
    lambda_sc,
    monomial_surface,
    number_sc,
    phase_function,
    quartic_surface,
    radial_solve,
)
from ..utils.error_handling import DomainError, NoRoot, NonMonotone


def fitted_exponent(energies, values):
    slope, _ = np.polyfit(np.log(energies), np.log(values), 1)
    return slope


def test_radial_solve_examples():
    assert radial_solve(harmonic_surface(), 2.5, 1.1) == pytest.approx(2.0, rel=1e-12)
    assert radial_solve(quartic_surface(0.01), 2.5, math.pi / 2) == pytest.approx(2.0, rel=1e-12)
    expected = (math.sqrt(1.0 + 16 * 0.01 * 2.0) - 1.0) / (8 * 0.01)
    assert radial_solve(quartic_surface(0.01), 2.5, 0.0) == pytest.approx(expected, rel=1e-12)


def test_radial_solve_errors():
    with pytest.raises(NoRoot):
        radial_solve(quartic_surface(0.01), 0.5, 0.3)
    with pytest.raises(NonMonotone):
        radial_solve(quartic_surface(-0.05), 3.0, 0.0)


def test_surface_for_spec():
    assert OscillatorSpec.sho().surface().name == "harmonic"
    assert OscillatorSpec.quartic(0.01).surface().energy(1.0, 0.0) == pytest.approx(1.54)
    with pytest.raises(DomainError):
        monomial_surface(5, 0.01)


def test_harmonic_and_degree_two_spacing_constant():
    for e in (0.7, 3.0, 50.0):
        assert lambda_sc(harmonic_surface(), e) == pytest.approx(1.0, rel=1e-12)
        assert lambda_sc(degree_two_surface(0.6), e) == pytest.approx(0.8, rel=1e-9)


@pytest.mark.parametrize("xi", [0.1, 1.0, 10.0, 100.0])
def test_quadrature_matches_quartic_closed_form(xi):
    kappa = 0.01
    e = 0.5 + xi / (16 * kappa)
    assert lambda_sc(quartic_surface(kappa), e) == pytest.approx(lambda_sc_quartic(e, kappa), rel=1e-8)


def test_quadrature_matches_negative_closed_form():
    kappa = -0.05
    e = 0.5 + 0.5 / (16 * 0.05)
    assert lambda_sc(quartic_surface(kappa), e) == pytest.approx(lambda_sc_quartic_negative(e, kappa), rel=1e-8)


def test_symmetry_reduction_is_exact():
    surface = quartic_surface(0.05)
    full = lambda_sc(surface, 3.0, reduce_symmetry=False)
    assert lambda_sc(surface, 3.0) == pytest.approx(full, rel=1e-9)


@pytest.mark.parametrize("degree,expected", [(4, 0.25), (6, 1.0 / 3.0)])
def test_monomial_large_energy_exponent(degree, expected):
    surface = monomial_surface(degree, 1.0)
    energies = [1e3, 1e4, 1e5]
    values = [lambda_sc(surface, e) for e in energies]
    assert fitted_exponent(energies, values) == pytest.approx(expected, abs=0.01)


def test_exponential_large_energy_exponent():
    surface = exponential_surface(1.0, 1.0)
    energies = [1e5, 1e6, 1e7]
    corrected = [lambda_sc(surface, e) * math.sqrt(math.log(e)) for e in energies]
    assert fitted_exponent(energies, corrected) == pytest.approx(0.5, abs=0.02)


@pytest.mark.parametrize("surface", [monomial_surface(6, 0.5), exponential_surface(0.5, 0.5)])
def test_spacing_grows_slower_than_energy(surface):
    low, high = 1e3, 1e6
    assert lambda_sc(surface, high) / high < lambda_sc(surface, low) / low


def test_spacing_positive_for_binding_surfaces():
    for surface in (quartic_surface(0.2), monomial_surface(6, 0.01), exponential_surface(1.0, 0.1)):
        for e in (0.6, 2.0, 30.0):
            assert lambda_sc(surface, e) > 0


def test_phase_function_harmonic():
    assert phase_function(harmonic_surface(), 1.5, math.pi) == pytest.approx(-1.0 + 0j, abs=1e-9)


def test_phase_function_single_valued():
    surface = quartic_surface(0.03)
    start = phase_function(surface, 4.0, 0.0)
    turn = phase_function(surface, 4.0, 2 * math.pi)
    assert abs(turn - start) < 1e-9
    assert abs(turn) ** 2 == pytest.approx(3.5, rel=1e-12)


def test_phase_function_quartic_closed_form():
    kappa, e, theta = 0.01, 2.0, math.pi / 4
    f = phase_function(quartic_surface(kappa), e, theta)
    expected = 0.5 * math.pi * angular_integral(theta, e, kappa) / angular_integral(math.pi / 2, e, kappa)
    assert cmath.phase(f) == pytest.approx(expected, abs=1e-8)


def test_action_area_harmonic():
    for e in (0.5, 1.7, 12.0):
        assert action_area(harmonic_surface(), e) == pytest.approx(e - 0.5, abs=1e-10)


def test_number_derivative_is_inverse_spacing():
    kappa, e, h = 0.01, 8.0, 1e-3
    surface = quartic_surface(kappa)
    closed = lambda x: lambda_sc_quartic(x, kappa)  # noqa: E731
    slope = (number_sc(surface, e + h, lambda_fn=closed) - number_sc(surface, e - h, lambda_fn=closed)) / (2 * h)
    assert slope * lambda_sc_quartic(e, kappa) == pytest.approx(1.0, abs=1e-6)


def test_action_area_quadrature_and_closed_form_agree():
    kappa, e = 0.05, 3.0
    surface = quartic_surface(kappa)
    closed = action_area(surface, e, lambda_fn=lambda x: lambda_sc_quartic(x, kappa))
    assert action_area(surface, e) == pytest.approx(closed, rel=1e-8)
