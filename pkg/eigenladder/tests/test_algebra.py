import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from ..algebra import (
    OperatorPoly,
    commutation_residual,
    commutator,
    dagger,
    fock_matrix,
    fock_matrix_element,
    normal_order_product,
    normalization_residual,
    quartic_hamiltonian,
    relation_residual,
    solve_tilde_a,
    verify_power_identity,
)
from ..algebra import eigenoperator
from ..oscillator import OscillatorSpec
from ..utils.error_handling import DomainError, InconsistentSystem

a = OperatorPoly.annihilation()
ad = OperatorPoly.creation()
x = a + ad


def poly(*terms):
    return OperatorPoly({(k, r, s): Fraction(c) for k, r, s, c in terms})


def test_a_adagger_normal_orders_to_number_plus_one():
    assert a * ad == poly((0, 1, 1, 1), (0, 0, 0, 1))
    assert normal_order_product(ad, a) == OperatorPoly.number()


def test_position_square():
    assert x * x == poly((0, 2, 0, 1), (0, 0, 2, 1), (0, 1, 1, 2), (0, 0, 0, 1))


def test_position_fourth_power_normal_form():
    expected = poly(
        (0, 0, 4, 1), (0, 1, 3, 4), (0, 2, 2, 6), (0, 3, 1, 4), (0, 4, 0, 1),
        (0, 0, 2, 6), (0, 1, 1, 12), (0, 2, 0, 6), (0, 0, 0, 3),
    )
    assert x ** 4 == expected
    assert (x ** 4).terms[(0, 0, 0)] == 3


def test_commutators():
    assert commutator(a, ad) == 1
    assert commutator(a, OperatorPoly.number()) == a
    assert commutator(ad, OperatorPoly.number()) == -ad


def test_dagger():
    assert dagger(a) == ad
    assert dagger(OperatorPoly.number()) == OperatorPoly.number()
    assert dagger(a * a) == ad * ad
    p = poly((0, 0, 3, 2), (1, 2, 1, Fraction(-1, 3)), (2, 0, 0, 5))
    assert dagger(dagger(p)) == p


def test_dagger_reverses_products():
    p = poly((0, 0, 2, 1), (1, 1, 0, 3))
    q = poly((0, 1, 1, 2), (0, 3, 0, -1))
    assert dagger(p * q) == dagger(q) * dagger(p)


def test_product_associative_and_distributive():
    p = poly((0, 0, 1, 2), (1, 2, 0, 1))
    q = poly((0, 1, 2, -1), (0, 0, 0, 3))
    r = poly((0, 2, 1, Fraction(1, 2)), (1, 0, 1, 1))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


def test_kappa_grading_truncates():
    p = poly((1, 0, 1, 1))
    assert (p * p * p).is_zero()
    assert dict((p * p).terms) == {(2, 0, 2): Fraction(1)}


def test_render_order_and_format():
    p = poly((1, 1, 0, Fraction(1, 2)), (0, 0, 1, 1))
    assert str(p) == "k^0 * 1 * ad^0 a^1 + k^1 * 1/2 * ad^1 a^0"
    assert str(OperatorPoly()) == "0"


def test_fock_matrix_elements():
    number = OperatorPoly.number()
    for n in range(6):
        assert fock_matrix_element(number, n, n) == pytest.approx(n)
    x4 = x ** 4
    assert fock_matrix_element(x4, 0, 0) == pytest.approx(3.0)
    assert fock_matrix_element(x4, 2, 0) == pytest.approx(6 * math.sqrt(2))
    assert sympy.simplify(fock_matrix_element(x4, 2, 0, exact=True) - 6 * sympy.sqrt(2)) == 0
    assert fock_matrix_element(x4, 3, 0) == 0.0


def test_fock_representation_of_product():
    p = x * x
    q = (x * x * x) + OperatorPoly.number()
    for m in range(4):
        for n in range(4):
            direct = fock_matrix_element(p * q, m, n)
            summed = sum(fock_matrix_element(p, m, k) * fock_matrix_element(q, k, n) for k in range(12))
            assert direct == pytest.approx(summed, abs=1e-10)


def test_fock_matrix_is_symmetric_and_consistent():
    h = quartic_hamiltonian(1)
    m = fock_matrix(h, 12, 0.01)
    assert np.array_equal(m, m.T)
    assert m[0, 0] == pytest.approx(0.5 + 0.0075)
    assert m[2, 0] == pytest.approx(0.01 / 4 * 6 * math.sqrt(2))
    for i in range(12):
        for j in range(12):
            assert m[i, j] == pytest.approx(fock_matrix_element(h, i, j, kappa=0.01), abs=1e-12)


def test_order_zero_is_harmonic():
    solution = solve_tilde_a(0)
    assert solution.tilde_a == OperatorPoly.annihilation(0)
    assert solution.lambda_coefficients == ((Fraction(1),),)
    assert solution.ground_level == (Fraction(1, 2),)


def test_first_order_constants():
    solution = solve_tilde_a(1, OscillatorSpec.quartic(Fraction(1, 100)))
    assert solution.constants == {"f1": 3, "f2": 3}
    assert solution.lambda_coefficients == ((1, 0), (0, 3))
    assert solution.ground_level == (Fraction(1, 2), Fraction(3, 4))
    assert solution.ground_level_at(Fraction(1, 100)) == Fraction(1, 2) + Fraction(3, 400)


def test_second_order_constants():
    solution = solve_tilde_a(2)
    assert solution.constants == {
        "f1": Fraction(3), "f2": Fraction(3),
        "g1": Fraction(75, 4), "g2": Fraction(-135, 8), "g3": Fraction(-135, 4),
        "g4": Fraction(-3, 8), "g5": Fraction(-153, 8), "g6": Fraction(-27, 2),
    }
    assert solution.ground_level == (Fraction(1, 2), Fraction(3, 4), Fraction(-21, 8))
    assert solution.lambda_coefficients == eigenoperator.REFERENCE_LAMBDA
    assert solution.report.discrepancies == {}


@pytest.mark.parametrize("order", [1, 2])
def test_all_residuals_vanish(order):
    solution = solve_tilde_a(order)
    assert relation_residual(solution).is_zero()
    assert normalization_residual(solution).is_zero()
    assert commutation_residual(solution).is_zero()
    assert verify_power_identity(solution, 2).is_zero()


def test_relation_alone_leaves_normalization_constants_free():
    report = solve_tilde_a(2).report
    assert set(report.needs_normalization[1]) == {"f1", "eg1"}
    assert set(report.needs_normalization[2]) == {"g2", "g5", "eg2"}
    assert {"g1", "g3", "g4", "g6"} <= set(report.fixed_by_relation[2])


def test_lambda_matches_perturbative_formula():
    solution = solve_tilde_a(2)
    kappa = Fraction(1, 100)
    for e in (Fraction(1, 2), Fraction(3), Fraction(17, 4)):
        p = e + Fraction(1, 2)
        expected = 1 + 3 * kappa * p - kappa ** 2 * (Fraction(69, 4) * p ** 2 - Fraction(9, 2) * p + Fraction(15, 2))
        assert solution.lambda_at(e, kappa) == expected


def test_wrong_leading_coefficient_is_reported(monkeypatch):
    monkeypatch.setitem(eigenoperator.SECOND_ORDER_LEADING, (0, 5), Fraction(1))
    with pytest.raises(InconsistentSystem):
        solve_tilde_a(2)


def test_unsupported_requests():
    with pytest.raises(DomainError):
        solve_tilde_a(3)
    with pytest.raises(DomainError):
        solve_tilde_a(1, OscillatorSpec.monomial(6, 0.01))
