"""
Verification suites run by ``eigenladder verify``.

Each suite returns a list of :class:`Check` values plus free-form notes.
Every check is a non-negative discrepancy compared against a limit, so a
report reads the same way for exact and floating-point comparisons.
Nothing here depends on timing or randomness without a fixed seed, so
two runs produce the same report.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .algebra import (
    commutation_residual,
    normalization_residual,
    relation_residual,
    solve_tilde_a,
    verify_power_identity,
)
from .algebra.eigenoperator import REFERENCE_GROUND, REFERENCE_LAMBDA
from .fdlie import identity_table
from .ladder import build_spectrum, constant_lambda, quartic_closed_lambda
from .oracle import converged_levels
from .oscillator import OscillatorSpec
from .quartic import (
    elliptic_K,
    energy_pert,
    groundstate_pert,
    lambda_sc_quartic,
    lambda_sc_quartic_negative,
    lambda_sc_series,
    wkb_spacing,
)
from .semiclassical import action_area, exponential_surface, lambda_sc, monomial_surface, quartic_surface
from .thermal import bose_einstein_occupation, classical_partition, partition_function, thermal_row
from .utils.error_handling import DomainError
from .utils.output import format_value

logger = logging.getLogger(__name__)

SUITE_NAMES = ("algebra", "semiclassical", "thermal", "fdlie")

# leading neglected coefficient of the small-ξ expansion of the closed form
SERIES_CUBIC = 633.0 / 4.0


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    value: float
    limit: float

    @property
    def passed(self) -> bool:
        return self.value <= self.limit


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def _third_order_coefficient(n: int) -> float:
    return (375 * n ** 4 + 750 * n ** 3 + 1416 * n ** 2 + 1041 * n + 333) / 16


def _slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


def algebra_checks() -> Tuple[List[Check], List[str]]:
    solution = solve_tilde_a(2)
    checks = []
    for label, residual in (
        ("relation residual", relation_residual(solution)),
        ("normalization residual", normalization_residual(solution)),
        ("commutation residual", commutation_residual(solution)),
        ("power identity n=2", verify_power_identity(solution, 2)),
    ):
        checks.append(Check("algebra", label, 0.0 if residual.is_zero() else 1.0, 0.0))
    checks.append(Check("algebra", "ground level coefficients",
                        0.0 if solution.ground_level == REFERENCE_GROUND else 1.0, 0.0))
    checks.append(Check("algebra", "lambda coefficients",
                        0.0 if solution.lambda_coefficients == REFERENCE_LAMBDA else 1.0, 0.0))

    notes = [f"{name} = {value}" for name, value in solution.constants.items()]
    notes.append("e_g = " + " + ".join(f"({c})k^{k}" for k, c in enumerate(solution.ground_level)))
    notes.append(f"lambda = {solution.render_lambda()}")
    # a reference constant that disagrees with zero residuals is reported, not failed
    notes.extend(solution.report.lines())

    errors = {}
    for kappa in (0.001, 0.01):
        levels = converged_levels(OscillatorSpec.quartic(kappa), 6).levels
        errors[kappa] = [abs(levels[n] - float(energy_pert(n, kappa))) for n in range(6)]
        for n, err in enumerate(errors[kappa]):
            checks.append(Check("algebra", f"pert vs oracle n={n} kappa={kappa:g} (units of c3 kappa^3)",
                                err / (_third_order_coefficient(n) * kappa ** 3), 1.1))
    for n in range(6):
        checks.append(Check("algebra", f"cubic error scaling n={n}",
                            abs(errors[0.01][n] / errors[0.001][n] / 1e3 - 1.0), 0.3))
    return checks, notes


def semiclassical_checks() -> Tuple[List[Check], List[str]]:
    checks = []
    notes = []
    kappa = 0.01
    surface = quartic_surface(kappa)
    for xi in (0.1, 1.0, 10.0, 100.0):
        e = 0.5 + xi / (16.0 * kappa)
        closed, quad = lambda_sc_quartic(e, kappa), lambda_sc(surface, e)
        notes.append(f"xi={format_value(xi)} e={format_value(e)} closed={format_value(closed)} "
                     f"quadrature={format_value(quad)}")
        checks.append(Check("semiclassical", f"closed vs quadrature xi={xi:g}", _rel(closed, quad), 1e-8))

    negative = -0.05
    e = 0.5 + 0.5 / (16.0 * abs(negative))
    checks.append(Check("semiclassical", "negative closed vs quadrature |xi|=0.5",
                        _rel(lambda_sc_quartic_negative(e, negative), lambda_sc(quartic_surface(negative), e)), 1e-8))
    # λ vanishes like 1/ln(4/k′) at the ceiling
    abs_xi = 1.0 - 1e-6
    root = math.sqrt(abs_xi)
    k_prime = math.sqrt(1.0 - abs_xi) / (1.0 + root)
    edge = lambda_sc_quartic_negative(0.5 + abs_xi / (16.0 * abs(negative)), negative)
    checks.append(Check("semiclassical", "negative lambda*ln(4/k') at |xi|=1-1e-6",
                        _rel(edge * math.log(4.0 / k_prime), math.pi / math.sqrt(2.0)), 0.01))
    e_max = 0.5 + 1.0 / (16.0 * abs(negative))
    bounded = build_spectrum(quartic_closed_lambda(negative), float(groundstate_pert(negative)), 50,
                             allow_exhaustion=True)
    notes.append(f"kappa={format_value(negative)} ladder stops after {len(bounded.levels)} levels, "
                 f"e_max={format_value(e_max)}")
    checks.append(Check("semiclassical", "negative ladder exhausted below e_max",
                        0.0 if bounded.exhausted and bounded.levels[-1] < e_max else 1.0, 0.0))

    small = 1e-3
    checks.append(Check("semiclassical", "closed minus series at kappa=1e-3, e=1.5",
                        abs(lambda_sc_quartic(1.5, small) - lambda_sc_series(1.5, small)),
                        1.1 * SERIES_CUBIC * small ** 3))

    e = 0.5 + 1e4 / (16.0 * kappa)
    checks.append(Check("semiclassical", "closed over wkb at xi=1e4",
                        abs(lambda_sc_quartic(e, kappa) / wkb_spacing(e, kappa) - 1.0), 0.01))
    k_exact = math.gamma(0.25) ** 2 / (4.0 * math.sqrt(math.pi))
    checks.append(Check("semiclassical", "K(1/sqrt2) against gamma", _rel(elliptic_K(1.0 / math.sqrt(2.0)), k_exact),
                        1e-12))

    closed_fn = lambda x: lambda_sc_quartic(x, kappa)  # noqa: E731
    ladder = build_spectrum(quartic_closed_lambda(kappa), float(groundstate_pert(kappa)), 100)
    worst = max(abs(action_area(surface, ladder.levels[n], lambda_fn=closed_fn) - n) for n in range(50, 101, 10))
    checks.append(Check("semiclassical", "Bohr-Sommerfeld |N(e_n) - n|, n=50..100", worst, 2.0))

    e, h = 10.0, 1e-3
    dn = (action_area(surface, e + h, lambda_fn=closed_fn) - action_area(surface, e - h, lambda_fn=closed_fn)) / (2 * h)
    checks.append(Check("semiclassical", "dN/de * lambda at e=10", abs(dn * closed_fn(e) - 1.0), 1e-6))

    energies = [1e3, 1e4, 1e5]
    for degree in (4, 6):
        monomial = monomial_surface(degree, 1.0)
        slope = _slope(energies, [lambda_sc(monomial, x) for x in energies])
        checks.append(Check("semiclassical", f"large-e exponent l={degree}", abs(slope - (0.5 - 1.0 / degree)), 0.01))
    exponential = exponential_surface(1.0, 1.0)
    energies = [1e5, 1e6, 1e7]
    corrected = [lambda_sc(exponential, x) * math.sqrt(math.log(x)) for x in energies]
    checks.append(Check("semiclassical", "log-corrected exponent, exponential", abs(_slope(energies, corrected) - 0.5),
                        0.02))
    return checks, notes


def thermal_checks() -> Tuple[List[Check], List[str]]:
    checks = []
    notes = []
    sho = build_spectrum(constant_lambda(), 0.5, 200)
    state = partition_function(sho, 1.0)
    checks.append(Check("thermal", "sho Z at beta=1", _rel(state.Z, math.exp(-0.5) / -math.expm1(-1.0)), 1e-12))
    checks.append(Check("thermal", "sho <N> at beta=1", _rel(state.avg_number, bose_einstein_occupation(1.0)), 1e-12))

    kappa = 0.01
    lam = quartic_closed_lambda(kappa)
    ladder = build_spectrum(lam, float(groundstate_pert(kappa)), 1000)
    for beta in (0.5, 1.0, 2.0):
        row = thermal_row(ladder, lam, beta)
        notes.append(f"beta={format_value(beta)} Z={format_value(row['Z'])} "
                     f"<H>={format_value(row['avg_energy'])}")
        for key in ("res_kms", "res_energy", "res_number"):
            checks.append(Check("thermal", f"{key} at beta={beta:g}", row[key], 1e-6))

    beta = 0.02
    ratio = partition_function(ladder, beta).Z / classical_partition(OscillatorSpec.quartic(kappa), beta)
    notes.append(f"quantum/classical Z at beta=0.02: {format_value(ratio)}")
    checks.append(Check("thermal", "quantum/classical Z at beta=0.02", abs(ratio - 1.0), 0.02))
    return checks, notes


def fdlie_checks() -> Tuple[List[Check], List[str]]:
    worst: Dict[str, float] = {}
    rows = identity_table(seed=0)
    for row in rows:
        kind = row["check"].split("[")[0]
        worst[kind] = max(worst.get(kind, 0.0), abs(row["value"]) / row["scale"])
    checks = [Check("fdlie", f"{kind} relative residual", value, 1e-12) for kind, value in sorted(worst.items())]
    return checks, [f"{len(rows)} sampled rows, seed 0"]


SUITES: Dict[str, Callable[[], Tuple[List[Check], List[str]]]] = {
    "algebra": algebra_checks,
    "semiclassical": semiclassical_checks,
    "thermal": thermal_checks,
    "fdlie": fdlie_checks,
}


def run_suites(suite: str = "all") -> Tuple[List[Check], List[str]]:
    """
    Run one suite, or every suite for ``"all"``.

    Raises:
        DomainError: for an unknown suite name
    """
    names = SUITE_NAMES if suite == "all" else (suite,)
    checks: List[Check] = []
    notes: List[str] = []
    for name in names:
        if name not in SUITES:
            raise DomainError(f"unknown suite '{name}', choose from {', '.join(SUITE_NAMES)} or all")
        logger.info("Running %s suite", name)
        suite_checks, suite_notes = SUITES[name]()
        checks.extend(suite_checks)
        notes.extend(f"{name}: {note}" for note in suite_notes)
    return checks, notes


def render_report(checks: Sequence[Check], notes: Sequence[str], header_lines: Sequence[str] = ()) -> str:
    """Plain-text report: header, notes, one PASS/FAIL line per check, then a summary."""
    lines = [f"# {line}" for line in header_lines]
    lines.extend(f"note {note}" for note in notes)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{status} [{check.suite}] {check.name}: {format_value(float(check.value))} "
                     f"<= {format_value(float(check.limit))}")
    failed = sum(not check.passed for check in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
