import math

import numpy as np
import pytest
import sympy

from ..ladder import (
    LambdaFunction,
    Spectrum,
    build_spectrum,
    classify_lambda,
    constant_lambda,
    nested_level,
    nested_norm_product,
    number_on_ladder,
    oscillation_frequency,
    periodic_number_sho,
    perturbative_lambda,
    quadrature_lambda,
    quartic_closed_lambda,
    tabulated_lambda,
)
from ..quartic import energy_pert, groundstate_pert, lambda_pert, lambda_sc_quartic
from ..semiclassical import action_area, degree_two_surface, quartic_surface
from ..utils.error_handling import DomainError, DomainExhausted, NonPositiveLambda


def test_sho_ladder():
    s = build_spectrum(constant_lambda(1.0), 0.5, 15)
    assert s.levels == tuple(n + 0.5 for n in range(16))
    for n in range(16):
        assert s.norms[n] == pytest.approx(math.factorial(n), rel=1e-15)
        assert s.log_norms[n] == pytest.approx(math.lgamma(n + 1), abs=1e-12)
    assert s.next_spacing == 1.0
    assert not s.exhausted


def test_zero_levels_requested():
    s = build_spectrum(constant_lambda(), 0.5, 0)
    assert s.levels == (0.5,)
    assert s.norms == (1.0,)
    with pytest.raises(DomainError):
        build_spectrum(constant_lambda(), 0.5, -1)


def test_perturbative_ladder_tracks_energy_pert():
    gaps = {}
    for kappa in (0.001, 0.01):
        s = build_spectrum(perturbative_lambda(kappa), groundstate_pert(kappa), 5)
        gaps[kappa] = [e - float(energy_pert(n, kappa)) for n, e in enumerate(s.levels)]
    assert s.lambda_source == "perturbative kappa=0.01"
    assert gaps[0.01][0] == pytest.approx(0.0, abs=1e-15)
    for n in range(1, 5):
        assert abs(gaps[0.01][n]) <= 5e-3
    # the recursion and the closed series differ at third order
    for n in range(1, 6):
        assert gaps[0.01][n] / gaps[0.001][n] == pytest.approx(1e3, rel=0.3)


def _truncate(expr, k, order=2):
    expr = sympy.expand(expr)
    return sum(expr.coeff(k, j) * k ** j for j in range(order + 1))


def test_nested_perturbative_ladder_exact_through_second_order():
    k = sympy.Symbol("k")
    lam = lambda e: _truncate(lambda_pert(e, k), k)  # noqa: E731
    for n in (0, 1, 3, 8):
        level = _truncate(nested_level(lam, groundstate_pert(k), n), k)
        assert sympy.expand(level - energy_pert(n, k)) == 0


def test_negative_coupling_ladder_exhausts_below_bound():
    kappa = -0.05
    lam = quartic_closed_lambda(kappa)
    assert lam.provenance == "quartic-negative"
    with pytest.raises(DomainExhausted) as info:
        build_spectrum(lam, groundstate_pert(kappa), 50)
    partial = info.value.spectrum
    assert partial.exhausted
    assert info.value.last_level < 1.75
    assert partial.next_spacing is None

    s = build_spectrum(lam, groundstate_pert(kappa), 50, allow_exhaustion=True)
    assert s.levels == partial.levels


def test_norm_ratio_is_level_rise():
    kappa = 0.05
    s = build_spectrum(quartic_closed_lambda(kappa), groundstate_pert(kappa), 30)
    for n in range(1, len(s)):
        assert s.norms[n] / s.norms[n - 1] == pytest.approx(s.levels[n] - s.e_g, rel=1e-12)
        assert s.levels[n] == pytest.approx(s.levels[n - 1] + s.spacings[n - 1], rel=1e-15)
    assert all(a > 0 for a in s.norms)


def test_log_norms_survive_factorial_growth():
    s = build_spectrum(constant_lambda(), 0.5, 300)
    assert math.isinf(s.norms[-1])
    assert s.log_norms[-1] == pytest.approx(math.lgamma(301), rel=1e-12)


def test_nested_forms_match_recursion():
    kappa = 0.02
    lam = quartic_closed_lambda(kappa)
    e_g = groundstate_pert(kappa)
    s = build_spectrum(lam, e_g, 5)
    for n in range(6):
        assert nested_level(lam, e_g, n) == pytest.approx(s.levels[n], rel=1e-13)
        assert nested_norm_product(lam, e_g, n) == pytest.approx(s.norms[n], rel=1e-12)


def test_nested_norm_product_is_telescoped_product_symbolically():
    lam = sympy.Function("lam")
    e_g = sympy.Symbol("e_g")
    levels = [e_g]
    for _ in range(4):
        levels.append(levels[-1] + lam(levels[-1]))
    for n in range(5):
        telescoped = sympy.Mul(*[levels[k] - e_g for k in range(1, n + 1)])
        assert sympy.expand(nested_norm_product(lam, e_g, n) - telescoped) == 0


def test_non_positive_lambda_rejected():
    with pytest.raises(NonPositiveLambda):
        LambdaFunction(lambda e: 1.0 - e, "tabulated", lo=0.0, hi=5.0)
    flaky = LambdaFunction(lambda e: 1.0 if e < 3.0 else -1.0, "tabulated", lo=0.0, hi=5.0, samples=1)
    with pytest.raises(NonPositiveLambda):
        build_spectrum(flaky, 0.5, 10)


def test_ground_level_outside_domain():
    with pytest.raises(DomainError):
        build_spectrum(quartic_closed_lambda(0.01), 0.4, 3)
    with pytest.raises(DomainError):
        LambdaFunction(lambda e: 1.0, "mystery")


def test_spectrum_from_levels():
    s = Spectrum.from_levels([0.5, 1.5, 2.5, 3.5], "oracle")
    assert s.spacings == (1.0, 1.0, 1.0)
    assert s.norms == (1.0, 1.0, 2.0, 6.0)
    assert s.rows()[0] == {"n": 0, "e_n": 0.5, "lambda_at_prev": None, "A_log": 0.0}
    assert s.rows()[2]["lambda_at_prev"] == 1.0
    with pytest.raises(DomainError):
        Spectrum.from_levels([0.5, 0.4])


def test_number_function_on_ladder():
    s = build_spectrum(constant_lambda(), 0.5, 10)
    number = number_on_ladder(s)
    assert number(0.5) == 0
    for n, e in enumerate(s.levels):
        assert number(e) == n == e - 0.5
    assert number.step_residuals() == [0] * 10
    with pytest.raises(DomainError):
        number(1.0)
    with pytest.raises(DomainError):
        number.smooth_at(1.0)


def test_number_function_quartic_and_bohr_sommerfeld():
    kappa = 0.01
    closed = lambda x: lambda_sc_quartic(x, kappa)  # noqa: E731
    surface = quartic_surface(kappa)
    s = build_spectrum(quartic_closed_lambda(kappa), float(groundstate_pert(kappa)), 100)
    number = number_on_ladder(s, smooth=lambda e: action_area(surface, e, lambda_fn=closed))
    assert number(s.e_g) == 0
    for n in range(50, 101, 10):
        assert number(s.levels[n]) == n
        assert abs(number.smooth_at(s.levels[n]) - n) <= 2.0


def test_classification():
    flat = classify_lambda(constant_lambda(), (0.5, 50.0))
    assert flat.kind == "asymptotically-equal-spaced"
    assert all(r == 0 for r in flat.residuals)

    assert classify_lambda(quartic_closed_lambda(0.01), (0.6, 100.0)).kind == "widening"

    negative = classify_lambda(quartic_closed_lambda(-0.05), (0.6, 1.7))
    assert negative.kind == "bounded-spectrum"
    assert all(r < 0 for r in negative.residuals)


def test_classification_of_constant_quadrature_spacing():
    lam = quadrature_lambda(degree_two_surface(0.6))
    result = classify_lambda(lam, (1.0, 20.0), samples=4)
    assert result.kind == "asymptotically-equal-spaced"
    assert result.values[0] == pytest.approx(0.8, rel=1e-9)


def test_oscillation_frequency():
    assert oscillation_frequency(constant_lambda(), 7.0, epsilon0=2.5) == 2.5
    kappa = 0.01
    assert oscillation_frequency(quartic_closed_lambda(kappa), 10.0) == lambda_sc_quartic(10.0, kappa)
    small = 1e-6
    for n in range(1, 5):
        # first order in kappa the gap below level n is 1 + 3 n kappa
        e_prev = float(energy_pert(n - 1, small))
        assert oscillation_frequency(perturbative_lambda(small), e_prev) == pytest.approx(1 + 3 * n * small, abs=1e-9)


def test_perturbative_domain_ends_at_zero():
    lam = perturbative_lambda(0.1)
    assert lam(lam.hi - 1e-9) == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(DomainError):
        lam(lam.hi)


def test_tabulated_lambda():
    lam = tabulated_lambda([0.5, 1.5, 2.5], [1.0, 2.0, 4.0])
    assert lam(1.0) == pytest.approx(1.5)
    assert lam(2.5) == 4.0
    with pytest.raises(DomainError):
        lam(2.6)
    with pytest.raises(NonPositiveLambda):
        tabulated_lambda([0.5, 1.0], [1.0, 0.0])


def test_periodic_number_sho():
    levels = np.arange(6) + 0.5
    assert np.allclose(periodic_number_sho(levels, amplitude=0.3), np.arange(6), atol=1e-12)
    assert periodic_number_sho(0.75, amplitude=0.0) == 0.25
    assert periodic_number_sho(0.75, amplitude=0.1) == pytest.approx(0.35)
