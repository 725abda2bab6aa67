"""
Order-by-order construction of the quartic eigenoperator ã.

The ansatz is

    ã = a + (κ/4)(F₀ + f₁ a + f₂ a†) + (κ²/2)(G₀ + g₁ a³ + g₂ a†a² + g₃ a†²a
                                             + g₄ a†³ + g₅ a + g₆ a†)

where F₀ and G₀ carry the coefficients fixed by the semiclassical
expansion and the f's and g's absorb the ordering ambiguity. At each order
the eigenoperator relation [ã, H] = λ(H) ã and the normalization
H = ã†ã + e_g are linear in the unknowns of that order (the ordering
constants, the new λ coefficients over powers of H + 1/2, and the new e_g
coefficient). The system is assembled column by column and solved exactly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import sympy

from ..utils.error_handling import DomainError, InconsistentSystem
from .operator_poly import OperatorPoly, commutator, dagger, render

logger = logging.getLogger(__name__)

MAX_SOLVED_ORDER = 2

# unknown name -> monomial (r, s) it multiplies, per κ-order
ORDERING_CONSTANTS: Dict[int, Tuple[Tuple[str, Tuple[int, int]], ...]] = {
    1: (("f1", (0, 1)), ("f2", (1, 0))),
    2: (("g1", (0, 3)), ("g2", (1, 2)), ("g3", (2, 1)),
        ("g4", (3, 0)), ("g5", (0, 1)), ("g6", (1, 0))),
}

PREFACTOR = {1: Fraction(1, 4), 2: Fraction(1, 2)}

# leading second-order coefficients from the semiclassical expansion
SECOND_ORDER_LEADING = {
    (0, 5): Fraction(3, 2),
    (1, 4): Fraction(39, 4),
    (2, 3): Fraction(-25, 8),
    (3, 2): Fraction(-12),
    (4, 1): Fraction(-3, 8),
    (5, 0): Fraction(1, 4),
}

# tabulated values, used only for the discrepancy report
REFERENCE_CONSTANTS = {
    "f1": Fraction(3), "f2": Fraction(3),
    "g1": Fraction(75, 4), "g2": Fraction(-135, 8), "g3": Fraction(-135, 4),
    "g4": Fraction(-3, 8), "g5": Fraction(-153, 8), "g6": Fraction(-27, 2),
}
REFERENCE_GROUND = (Fraction(1, 2), Fraction(3, 4), Fraction(-21, 8))
# [power of (H + 1/2)][κ-order]
REFERENCE_LAMBDA = (
    (Fraction(1), Fraction(0), Fraction(-15, 2)),
    (Fraction(0), Fraction(3), Fraction(9, 2)),
    (Fraction(0), Fraction(0), Fraction(-69, 4)),
)


def quartic_hamiltonian(max_order: int = MAX_SOLVED_ORDER, harmonic: bool = False) -> OperatorPoly:
    """H/ε₀ = a†a + 1/2 + (κ/4)(a + a†)⁴, normal ordered and κ-graded."""
    h = OperatorPoly.number(max_order) + Fraction(1, 2)
    if harmonic:
        return h
    x = OperatorPoly.annihilation(max_order) + OperatorPoly.creation(max_order)
    return h + ((x ** 4) * Fraction(1, 4)).shift(1)


def _fixed_part(k: int, max_order: int) -> OperatorPoly:
    a = OperatorPoly.annihilation(max_order)
    ad = OperatorPoly.creation(max_order)
    if k == 1:
        return (a * a - ad * ad) * a * (-3) + (a + ad) ** 3
    return OperatorPoly({(0, r, s): c for (r, s), c in SECOND_ORDER_LEADING.items()}, max_order)


def unknowns_for_order(k: int) -> List[str]:
    names = [name for name, _ in ORDERING_CONSTANTS[k]]
    names += [f"l{k}_{j}" for j in range(k + 1)]
    names.append(f"eg{k}")
    return names


def build_tilde_a(values: Mapping[str, Fraction], max_order: int) -> OperatorPoly:
    """ã from a (possibly partial) assignment of the ordering constants."""
    tilde_a = OperatorPoly.annihilation(max_order)
    for k in range(1, max_order + 1):
        part = _fixed_part(k, max_order)
        for name, (r, s) in ORDERING_CONSTANTS[k]:
            part = part + OperatorPoly.monomial(r, s, values.get(name, 0), max_order=max_order)
        tilde_a = tilde_a + (part * PREFACTOR[k]).shift(k)
    return tilde_a


def lambda_coefficients(values: Mapping[str, Fraction], max_order: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Coefficients ``[j][k]`` of κ^k (H + 1/2)^j in λ(H)."""
    return tuple(
        tuple(Fraction(values.get(f"l{k}_{j}", 0)) for k in range(max_order + 1))
        for j in range(max_order + 1)
    )


def lambda_operator(coefficients: Sequence[Sequence[Fraction]], hamiltonian: OperatorPoly) -> OperatorPoly:
    """λ(H) as a normal-ordered polynomial."""
    max_order = hamiltonian.max_order
    shifted = hamiltonian + Fraction(1, 2)
    total = OperatorPoly({}, max_order)
    power = OperatorPoly.scalar(1, max_order=max_order)
    for row in coefficients:
        weight = OperatorPoly({(k, 0, 0): c for k, c in enumerate(row)}, max_order)
        total = total + weight * power
        power = power * shifted
    return total


def _residuals(values: Mapping[str, Fraction], hamiltonian: OperatorPoly) -> Dict[str, OperatorPoly]:
    max_order = hamiltonian.max_order
    tilde_a = build_tilde_a(values, max_order)
    lam = lambda_operator(lambda_coefficients(values, max_order), hamiltonian)
    ground = OperatorPoly({(k, 0, 0): values.get(f"eg{k}", 0) for k in range(max_order + 1)}, max_order)
    return {
        "relation": commutator(tilde_a, hamiltonian) - lam * tilde_a,
        "normalization": dagger(tilde_a) * tilde_a + ground - hamiltonian,
    }


def _to_rational(x) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


@dataclass
class SolveReport:
    """Per-order bookkeeping of the constraint solve."""

    fixed_by_relation: Dict[int, List[str]] = field(default_factory=dict)
    needs_normalization: Dict[int, List[str]] = field(default_factory=dict)
    equations: Dict[int, int] = field(default_factory=dict)
    discrepancies: Dict[str, Tuple[Fraction, Fraction]] = field(default_factory=dict)

    def lines(self) -> List[str]:
        out = []
        for k in sorted(self.equations):
            out.append(
                f"order {k}: {self.equations[k]} equations; relation fixes "
                f"{', '.join(self.fixed_by_relation[k]) or '-'}; normalization fixes "
                f"{', '.join(self.needs_normalization[k]) or '-'}"
            )
        for name, (solved, reference) in sorted(self.discrepancies.items()):
            out.append(f"discrepancy {name}: solved {solved}, reference {reference}")
        return out


@dataclass(frozen=True)
class EigenoperatorSolution:
    """
    Result of :func:`solve_tilde_a`.

    Attributes:
        order: Highest solved κ-order
        tilde_a: The eigenoperator ã
        hamiltonian: H/ε₀ truncated at ``order``
        lambda_coefficients: ``[j][k]`` coefficients of κ^k (H/ε₀ + 1/2)^j
        ground_level: κ-coefficients of e_g
        constants: Solved ordering constants by name
        report: Which condition fixed which unknown
    """

    order: int
    tilde_a: OperatorPoly
    hamiltonian: OperatorPoly
    lambda_coefficients: Tuple[Tuple[Fraction, ...], ...]
    ground_level: Tuple[Fraction, ...]
    constants: Dict[str, Fraction]
    report: SolveReport

    def lambda_operator(self) -> OperatorPoly:
        return lambda_operator(self.lambda_coefficients, self.hamiltonian)

    def ground_level_at(self, kappa):
        """e_g at a numeric coupling; exact when ``kappa`` is a Fraction or int."""
        return sum(c * kappa ** k for k, c in enumerate(self.ground_level))

    def lambda_at(self, e, kappa):
        """λ evaluated on an eigenvalue e of H/ε₀."""
        p = e + Fraction(1, 2) if isinstance(e, (int, Fraction)) else e + 0.5
        return sum(c * kappa ** k * p ** j
                   for j, row in enumerate(self.lambda_coefficients)
                   for k, c in enumerate(row))

    def as_triple(self):
        return self.tilde_a, self.lambda_coefficients, self.ground_level

    def render_lambda(self) -> str:
        terms = []
        for j, row in enumerate(self.lambda_coefficients):
            for k, c in enumerate(row):
                if c:
                    terms.append(f"k^{k} * {c} * (h+1/2)^{j}")
        return " + ".join(terms) or "0"


def solve_tilde_a(order: int, spec=None) -> EigenoperatorSolution:
    """
    Solve for ã, λ(H) and e_g of the quartic oscillator through κ^order.

    Args:
        order: 0, 1 or 2
        spec: Optional OscillatorSpec; must be quartic when given

    Returns:
        EigenoperatorSolution with all residuals identically zero through ``order``

    Raises:
        DomainError: for unsupported order or potential
        InconsistentSystem: if an order's constraint system is unsolvable or underdetermined
    """
    if order not in range(MAX_SOLVED_ORDER + 1):
        raise DomainError(f"order must be 0..{MAX_SOLVED_ORDER}, got {order}")
    if spec is not None and spec.potential != "quartic":
        raise DomainError(f"eigenoperator solve needs the quartic oscillator, got {spec.potential}")

    hamiltonian = quartic_hamiltonian(order)
    values: Dict[str, Fraction] = {"l0_0": Fraction(1), "eg0": Fraction(1, 2)}
    report = SolveReport()

    for k in range(1, order + 1):
        names = unknowns_for_order(k)
        solution = _solve_order(k, names, values, hamiltonian, report)
        values.update(solution)
        logger.debug("order %d solved: %s", k, ", ".join(f"{n}={solution[n]}" for n in names))

    final = _residuals(values, hamiltonian)
    final["commutation"] = _commutation(values, hamiltonian)
    for label, poly in final.items():
        if not poly.is_zero():
            raise InconsistentSystem(f"{label} residual does not vanish: {render(poly)}", residual=poly)

    constants = {name: values[name] for k in range(1, order + 1) for name, _ in ORDERING_CONSTANTS[k]}
    for name, solved in constants.items():
        if solved != REFERENCE_CONSTANTS[name]:
            report.discrepancies[name] = (solved, REFERENCE_CONSTANTS[name])
            logger.warning("%s solved as %s, published %s", name, solved, REFERENCE_CONSTANTS[name])

    result = EigenoperatorSolution(
        order=order,
        tilde_a=build_tilde_a(values, order),
        hamiltonian=hamiltonian,
        lambda_coefficients=lambda_coefficients(values, order),
        ground_level=tuple(values[f"eg{k}"] for k in range(order + 1)),
        constants=constants,
        report=report,
    )
    logger.info("Eigenoperator solved through order %d", order)
    return result


def _solve_order(k: int, names: List[str], known: Dict[str, Fraction],
                 hamiltonian: OperatorPoly, report: SolveReport) -> Dict[str, Fraction]:
    def residual_vector(trial: Dict[str, Fraction]) -> Dict[Tuple[str, int, int], Fraction]:
        out = {}
        for label, poly in _residuals(trial, hamiltonian).items():
            for (_, r, s), c in poly.order_part(k).terms.items():
                out[(label, r, s)] = c
        return out

    base_values = dict(known)
    base_values.update({name: Fraction(0) for name in names})
    base = residual_vector(base_values)
    columns = []
    for name in names:
        trial = dict(base_values)
        trial[name] = Fraction(1)
        columns.append(residual_vector(trial))

    keys = sorted(set(base).union(*columns))
    matrix = sympy.Matrix([[_to_rational(col.get(key, 0) - base.get(key, 0)) for col in columns] for key in keys])
    rhs = sympy.Matrix([-_to_rational(base.get(key, 0)) for key in keys])
    report.equations[k] = len(keys)

    rank = matrix.rank()
    if rank < matrix.row_join(rhs).rank():
        residual = OperatorPoly({(k, r, s): c for (_, r, s), c in base.items()}, hamiltonian.max_order)
        raise InconsistentSystem(f"order {k} constraints are unsolvable; base residual {render(residual)}",
                                 residual=residual)
    if rank < len(names):
        raise InconsistentSystem(f"order {k} constraints leave {len(names) - rank} unknowns free")

    relation_rows = [i for i, key in enumerate(keys) if key[0] == "relation"]
    null = matrix.extract(relation_rows, list(range(len(names)))).nullspace()
    fixed = [name for i, name in enumerate(names) if all(v[i] == 0 for v in null)]
    report.fixed_by_relation[k] = fixed
    report.needs_normalization[k] = [name for name in names if name not in fixed]

    solution, _ = matrix.gauss_jordan_solve(rhs)
    return {name: Fraction(int(x.p), int(x.q)) for name, x in zip(names, solution)}


def _commutation(values: Mapping[str, Fraction], hamiltonian: OperatorPoly) -> OperatorPoly:
    tilde_a = build_tilde_a(values, hamiltonian.max_order)
    lam = lambda_operator(lambda_coefficients(values, hamiltonian.max_order), hamiltonian)
    return commutator(tilde_a, dagger(tilde_a)) - lam


def relation_residual(solution: EigenoperatorSolution) -> OperatorPoly:
    """[ã, H] − λ(H) ã."""
    return commutator(solution.tilde_a, solution.hamiltonian) - solution.lambda_operator() * solution.tilde_a


def normalization_residual(solution: EigenoperatorSolution) -> OperatorPoly:
    """ã†ã + e_g − H."""
    ground = OperatorPoly({(k, 0, 0): c for k, c in enumerate(solution.ground_level)}, solution.order)
    return dagger(solution.tilde_a) * solution.tilde_a + ground - solution.hamiltonian


def commutation_residual(solution: EigenoperatorSolution) -> OperatorPoly:
    """[ã, ã†] − λ(H)."""
    return commutator(solution.tilde_a, dagger(solution.tilde_a)) - solution.lambda_operator()


def verify_power_identity(solution: EigenoperatorSolution, n: int = 2) -> OperatorPoly:
    """
    [ã, Hⁿ] − {(λ(H) + H)ⁿ − Hⁿ} ã, zero through the solved order.
    """
    if n < 1:
        raise DomainError("power identity needs n >= 1")
    h = solution.hamiltonian
    shifted = solution.lambda_operator() + h
    return commutator(solution.tilde_a, h ** n) - (shifted ** n - h ** n) * solution.tilde_a
