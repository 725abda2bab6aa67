import math
from fractions import Fraction

import pytest
import sympy
from scipy import special

from ..quartic import (
    EllipticParams,
    agm,
    GAMMA_QUARTER,
    angular_integral,
    e_max_negative,
    elliptic_F,
    elliptic_F_agm,
    elliptic_K,
    energy_pert,
    energy_sc_series,
    first_order_spacing,
    groundstate_pert,
    k_one_over_root_two,
    lambda_pert,
    lambda_sc_quartic,
    lambda_sc_quartic_negative,
    lambda_sc_series,
    wkb_energy,
    wkb_spacing,
    xi_of,
)
from ..utils.error_handling import BeyondBound, DomainError
from ..utils.quadrature import GaussLegendre, QuadratureConfig


def energy_for_xi(xi, kappa):
    return 0.5 + xi / (16.0 * kappa)


# -- elliptic integrals -------------------------------------------------------

def test_elliptic_K_values():
    assert elliptic_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    expected = GAMMA_QUARTER ** 2 / (4 * math.sqrt(math.pi))
    assert elliptic_K(1 / math.sqrt(2)) == pytest.approx(expected, rel=1e-12)
    assert k_one_over_root_two() == pytest.approx(elliptic_K(1 / math.sqrt(2)), rel=1e-12)


def test_agm_stops_on_pair_one_ulp_apart():
    a, b = 0.8472130847939792, 0.847213084793979
    assert agm(a, b) == pytest.approx(a, rel=1e-15)
    assert agm(1.0, 1.0) == 1.0


@pytest.mark.parametrize("k", [0.1, 1 / math.sqrt(2), 0.9, 0.999])
def test_elliptic_K_matches_quadrature_of_its_integral(k):
    assert elliptic_K(k) == pytest.approx(elliptic_F(math.pi / 2, k * k), rel=1e-10)


@pytest.mark.parametrize("xi", [0.1, 1.0, 10.0, 100.0, 1e4])
def test_closed_lambda_finite_across_regimes(xi):
    value = lambda_sc_quartic(energy_for_xi(xi, 0.01), 0.01)
    assert 1.0 < value < 1.0 + xi


def test_elliptic_K_against_series():
    k2 = 0.25
    total, term, n = 0.0, 1.0, 0
    while term > 1e-18:
        total += term
        n += 1
        term *= ((2 * n - 1) / (2 * n)) ** 2 * k2
    assert elliptic_K(0.5) == pytest.approx(0.5 * math.pi * total, rel=1e-12)


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 0.999])
def test_elliptic_K_against_scipy(k):
    assert elliptic_K(k) == pytest.approx(special.ellipk(k * k), rel=1e-13)


def test_elliptic_K_domain():
    with pytest.raises(DomainError):
        elliptic_K(1.0)
    with pytest.raises(DomainError):
        elliptic_K(-0.1)


def test_elliptic_F_limits():
    assert elliptic_F(0.7, 0.0) == 0.7
    for q in (0.25, 0.5, 0.9):
        assert elliptic_F(math.pi / 2, q) == pytest.approx(elliptic_K(math.sqrt(q)), rel=1e-12)


@pytest.mark.parametrize("alpha,q", [(math.pi / 4, 0.25), (1.3, 0.6), (2.5, 0.7), (math.pi, 0.4)])
def test_elliptic_F_two_paths(alpha, q):
    assert elliptic_F(alpha, q) == pytest.approx(elliptic_F_agm(alpha, q), rel=1e-10)
    assert elliptic_F(alpha, q) == pytest.approx(special.ellipkinc(alpha, q), rel=1e-12)


def test_elliptic_F_domain():
    with pytest.raises(DomainError):
        elliptic_F(0.5, 1.0)
    with pytest.raises(DomainError):
        elliptic_F(4.0, 0.2)


def test_gamma_quarter_constant():
    assert GAMMA_QUARTER == pytest.approx(math.gamma(0.25), rel=1e-15)


# -- closed forms ----------------------------------------------------------------

def test_elliptic_params():
    params = EllipticParams.from_energy(2.0, 0.01)
    assert params.xi == pytest.approx(0.24)
    assert 0 <= params.q < 0.5
    assert EllipticParams(1e12).q == pytest.approx(0.5, abs=1e-6)
    assert EllipticParams(-0.25).q_prime == pytest.approx(2 * 0.5 / 1.5)


def test_lambda_closed_harmonic_limit():
    assert lambda_sc_quartic(0.5 + 1e-9, 0.01) == pytest.approx(1.0, abs=1e-9)


def test_lambda_closed_third_order_term():
    # the first neglected term of the small-xi series is (633/4) kappa^3 (e - 1/2)^3
    kappa, e = 1e-4, 1.5
    diff = lambda_sc_quartic(e, kappa) - lambda_sc_series(e, kappa)
    assert diff / (kappa ** 3 * (e - 0.5) ** 3) == pytest.approx(633 / 4, rel=1e-2)
    kappa = 1e-3
    assert abs(lambda_sc_quartic(e, kappa) - lambda_sc_series(e, kappa)) <= 200 * kappa ** 3


def test_lambda_closed_large_xi():
    kappa = 0.01
    e = energy_for_xi(1e4, kappa)
    ratio = lambda_sc_quartic(e, kappa) / wkb_spacing(e, kappa)
    assert 0.99 <= ratio <= 1.01
    assert math.pi / elliptic_K(1 / math.sqrt(2)) == pytest.approx(1.6944, abs=1e-4)


def test_lambda_closed_increasing():
    values = [lambda_sc_quartic(e, 0.01) for e in (0.6, 1.0, 2.0, 5.0, 20.0, 100.0, 1e4)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_lambda_closed_domain():
    with pytest.raises(DomainError):
        lambda_sc_quartic(0.5, 0.01)
    with pytest.raises(DomainError):
        lambda_sc_quartic(2.0, -0.01)


def test_negative_bound():
    assert e_max_negative(-1 / 16) == pytest.approx(1.5)
    assert e_max_negative(-0.01) == pytest.approx(6.75)
    assert abs(xi_of(e_max_negative(-0.03), -0.03)) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        e_max_negative(0.01)


def test_negative_branch_limits():
    kappa = -0.05
    assert lambda_sc_quartic_negative(0.5 + 1e-9, kappa) == pytest.approx(1.0, abs=1e-8)
    assert lambda_sc_quartic_negative(e_max_negative(kappa), kappa) == 0.0
    with pytest.raises(BeyondBound) as info:
        lambda_sc_quartic_negative(2.0, kappa)
    assert info.value.e_max == pytest.approx(1.75)


def test_negative_branch_vanishes_logarithmically():
    kappa = -0.01
    values = [lambda_sc_quartic_negative(energy_for_xi(-x, kappa), kappa)
              for x in (0.5, 0.9, 0.99, 1 - 1e-6)]
    assert all(b < a for a, b in zip(values, values[1:]))
    # K diverges like ln(4/k'), so lambda * ln(4/k') tends to pi/sqrt(2)
    abs_xi = 1 - 1e-6
    s = math.sqrt(abs_xi)
    k_prime = math.sqrt(1 - abs_xi) / (1 + s)
    assert values[-1] * math.log(4 / k_prime) == pytest.approx(math.pi / math.sqrt(2), rel=1e-5)


def test_negative_series_matches_positive_continuation():
    kappa, e = -1e-4, 1.5
    assert lambda_sc_quartic_negative(e, kappa) == pytest.approx(lambda_sc_series(e, kappa), abs=1e-9)


def _direct_angular(theta, xi):
    integrator = GaussLegendre(QuadratureConfig(tolerance=1e-13))
    return integrator.integrate(lambda p: 1.0 / math.sqrt(1.0 + xi * math.cos(p) ** 4), 0.0, theta)


@pytest.mark.parametrize("theta", [0.3, 1.2, math.pi / 2, 2.0, 4.0])
@pytest.mark.parametrize("e,kappa", [(2.0, 0.1), (1.125, -0.05)])
def test_angular_integral_reductions(theta, e, kappa):
    xi = xi_of(e, kappa)
    assert angular_integral(theta, e, kappa) == pytest.approx(_direct_angular(theta, xi), rel=1e-9)


# -- perturbation theory ----------------------------------------------------------

def test_perturbative_values():
    assert groundstate_pert(0) == Fraction(1, 2)
    assert groundstate_pert(Fraction(1, 100)) == Fraction(5072375, 10000000)
    assert groundstate_pert(0.01) == pytest.approx(0.5072375, rel=1e-14)
    assert energy_pert(1, 0.01) == pytest.approx(1.5354375, rel=1e-14)
    assert lambda_pert(3.7, 0) == 1
    for n in range(5):
        assert energy_pert(n, 0) == n + Fraction(1, 2)
        assert energy_sc_series(n, 0) == n + Fraction(1, 2)
        assert energy_pert(0, Fraction(n, 7)) == groundstate_pert(Fraction(n, 7))


def test_ladder_relation_through_second_order():
    n, k = sympy.symbols("n k")
    residual = sympy.expand(energy_pert(n, k) - energy_pert(n - 1, k) - lambda_pert(energy_pert(n - 1, k), k))
    poly = sympy.Poly(residual, k)
    for power in range(3):
        assert sympy.simplify(poly.coeff_monomial(k ** power)) == 0
    first = sympy.expand(energy_pert(n, k) - energy_pert(n - 1, k))
    assert sympy.Poly(first, k).coeff_monomial(k) == sympy.expand(first_order_spacing(n, k) - 1).coeff(k)


def test_series_share_leading_power():
    n, k = sympy.symbols("n k")
    pert = sympy.Poly(sympy.expand(energy_pert(n, k)), n, k)
    sc = sympy.Poly(sympy.expand(energy_sc_series(n, k)), n, k)
    assert pert.coeff_monomial(n ** 3 * k ** 2) == sc.coeff_monomial(n ** 3 * k ** 2) == sympy.Rational(-17, 4)


def test_series_forms_close_at_large_n():
    n, kappa = 100, 1e-4
    gap = abs(energy_sc_series(n, kappa) - energy_pert(n, kappa)) / energy_pert(n, kappa)
    assert gap < 1 / n


def test_wkb_constants():
    assert wkb_energy(1.0, 1.0) == pytest.approx(1.37651, rel=1e-4)
    e, kappa = 40.0, 0.3
    assert wkb_spacing(e, kappa) == pytest.approx(
        math.pi * (e * kappa) ** 0.25 / elliptic_K(1 / math.sqrt(2)), rel=1e-12)


def test_wkb_energy_integrates_spacing():
    n, kappa, h = 1000.0, 0.01, 1e-3
    slope = (wkb_energy(n + h, kappa) - wkb_energy(n - h, kappa)) / (2 * h)
    assert slope == pytest.approx(wkb_spacing(wkb_energy(n, kappa), kappa), rel=1e-6)
