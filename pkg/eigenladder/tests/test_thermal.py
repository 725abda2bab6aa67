import math

import numpy as np
import pytest

from ..ladder import Spectrum, build_spectrum, constant_lambda, perturbative_lambda, quartic_closed_lambda
from ..oracle import converged_levels
from ..oscillator import OscillatorSpec
from ..quartic import groundstate_pert
from ..thermal import (
    bose_einstein_occupation,
    classical_partition,
    high_temperature_partition,
    partition_function,
    thermal_row,
    verify_avg_energy_identity,
    verify_kms_identity,
    verify_number_identity,
)
from ..utils.error_handling import DomainError, TailNotBounded

KAPPA = 0.01


@pytest.fixture(scope="module")
def sho():
    return build_spectrum(constant_lambda(), 0.5, 200), constant_lambda()


@pytest.fixture(scope="module")
def quartic():
    lam = quartic_closed_lambda(KAPPA)
    return build_spectrum(lam, float(groundstate_pert(KAPPA)), 1000), lam


def test_sho_partition_function(sho):
    spectrum, _ = sho
    state = partition_function(spectrum, 1.0)
    assert state.Z == pytest.approx(math.exp(-0.5) / (1 - math.exp(-1)), rel=1e-12)
    assert state.log_Z == pytest.approx(math.log(state.Z), rel=1e-13)
    for beta in (0.5, 1.0, 2.0):
        state = partition_function(spectrum, beta)
        assert state.avg_energy == pytest.approx(0.5 + bose_einstein_occupation(beta), rel=1e-12)
        assert state.avg_number == pytest.approx(1 / (math.exp(beta) - 1), rel=1e-12)
        assert state.truncation_bound < 1e-12


def test_ground_state_dominates_at_low_temperature(sho):
    spectrum, _ = sho
    state = partition_function(spectrum, 50.0)
    assert state.Z * math.exp(50.0 * spectrum.e_g) == pytest.approx(1.0, rel=1e-12)
    assert state.avg_energy >= spectrum.e_g


def test_sho_identities_exact(sho):
    spectrum, lam = sho
    for beta in (0.3, 1.0, 3.0):
        assert verify_kms_identity(spectrum, lam, beta).residual <= 1e-12
        assert verify_number_identity(spectrum, lam, beta).residual <= 1e-12
        energy = verify_avg_energy_identity(spectrum, lam, beta)
        assert energy.details["energy"] <= 1e-10
        assert energy.details["partition"] <= 1e-12
        assert energy.lhs == pytest.approx(0.5 + bose_einstein_occupation(beta), rel=1e-12)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_quartic_identities(quartic, beta):
    spectrum, lam = quartic
    assert verify_kms_identity(spectrum, lam, beta).residual <= 1e-8
    assert verify_number_identity(spectrum, lam, beta).residual <= 1e-8
    energy = verify_avg_energy_identity(spectrum, lam, beta)
    assert energy.residual <= 1e-6
    assert energy.details["finite_difference"] <= 1e-6


def test_quartic_identities_far_from_unit_beta(quartic):
    spectrum, lam = quartic
    assert verify_kms_identity(spectrum, lam, 0.1).residual <= 1e-8
    assert verify_avg_energy_identity(spectrum, lam, 5.0).residual <= 1e-6


def test_single_level_truncation():
    spectrum = build_spectrum(constant_lambda(), 0.5, 0)
    check = verify_number_identity(spectrum, constant_lambda(), 1.0, tol=1.0)
    assert check.rhs == 0.0
    assert abs(check.lhs - check.rhs) <= check.tail_bound


def test_tail_not_bounded():
    short = build_spectrum(constant_lambda(), 0.5, 5)
    with pytest.raises(TailNotBounded):
        partition_function(short, 1.0)
    # second-order lambda turns over, so its spacings shrink at the top
    shrinking = build_spectrum(perturbative_lambda(KAPPA), float(groundstate_pert(KAPPA)), 40)
    with pytest.raises(TailNotBounded):
        partition_function(shrinking, 1.0)
    with pytest.raises(DomainError):
        partition_function(short, 0.0)


def test_exhausted_ladder_has_no_tail():
    spectrum = build_spectrum(quartic_closed_lambda(-0.05), float(groundstate_pert(-0.05)), 50,
                              allow_exhaustion=True)
    state = partition_function(spectrum, 1.0)
    assert state.truncation_bound == 0.0
    assert state.Z == pytest.approx(math.fsum(math.exp(-e) for e in spectrum.levels), rel=1e-14)


def test_partition_function_over_oracle_levels():
    levels = converged_levels(OscillatorSpec.quartic(KAPPA), 41, tol=1e-8).levels
    state = partition_function(Spectrum.from_levels(levels, "oracle"), 1.0)
    assert state.Z == pytest.approx(float(np.sum(np.exp(-np.asarray(levels)))), rel=1e-6)


def test_average_energy_rises_with_temperature(quartic):
    spectrum, _ = quartic
    energies = [partition_function(spectrum, beta).avg_energy for beta in (2.0, 1.0, 0.5, 0.25)]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_classical_partition_harmonic():
    for beta in (0.5, 2.0):
        assert classical_partition(OscillatorSpec.sho(), beta) == pytest.approx(1 / beta, rel=1e-9)


def test_classical_partition_decreasing_in_beta():
    spec = OscillatorSpec.quartic(KAPPA)
    values = [classical_partition(spec, beta) for beta in (0.5, 1.0, 2.0)]
    assert all(b < a for a, b in zip(values, values[1:]))
    with pytest.raises(DomainError):
        classical_partition(OscillatorSpec.quartic(-0.01), 1.0)


def test_quantum_and_classical_agree_at_high_temperature(quartic):
    spectrum, lam = quartic
    beta = 0.02
    quantum = partition_function(spectrum, beta).Z
    assert quantum / classical_partition(OscillatorSpec.quartic(KAPPA), beta) == pytest.approx(1.0, abs=0.02)
    assert quantum / high_temperature_partition(lam, spectrum.e_g, beta) == pytest.approx(1.0, abs=0.02)


def test_harmonic_high_temperature_limit(sho):
    spectrum, lam = sho
    deviations = []
    for beta in (0.2, 0.02):
        quantum = partition_function(build_spectrum(lam, 0.5, 4000), beta).Z
        deviations.append(abs(quantum / classical_partition(OscillatorSpec.sho(), beta) - 1))
        expected = math.exp(-beta / 2) * (1 / beta + 0.5)
        assert high_temperature_partition(lam, 0.5, beta) == pytest.approx(expected, rel=1e-10)
    assert deviations[1] < deviations[0] < 0.01


def test_thermal_row(quartic):
    spectrum, lam = quartic
    row = thermal_row(spectrum, lam, 1.0)
    assert list(row) == ["beta", "Z", "avg_energy", "avg_number", "tail_bound", "res_kms", "res_energy", "res_number"]
    assert max(row["res_kms"], row["res_energy"], row["res_number"]) <= 1e-6


def test_bose_einstein():
    assert bose_einstein_occupation(1.0) == pytest.approx(1 / (math.e - 1), rel=1e-15)
