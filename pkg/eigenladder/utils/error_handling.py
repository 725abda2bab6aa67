"""
Error handling utilities.

All failures raised by eigenladder derive from :class:`EigenladderError`.
Each class carries a ``kind`` key into :data:`ERROR_SOLUTIONS` and an
``exit_code`` used by the command-line interface.
"""

import logging
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class EigenladderError(Exception):
    """Base class for every eigenladder failure."""

    kind = "general"
    exit_code = 3


class ConfigError(EigenladderError):
    """Invalid or unreadable run configuration."""

    kind = "config_error"
    exit_code = 2


class ComputationError(EigenladderError):
    """A numerical or algebraic computation could not be completed."""

    kind = "computation_error"
    exit_code = 3


class DomainError(ComputationError):
    """Argument outside the domain of a special function or formula."""

    kind = "domain_error"


class NoRoot(ComputationError):
    """Requested energy lies at or below the surface floor."""

    kind = "no_root"


class NonMonotone(ComputationError):
    """Energy surface is not increasing along the radial direction."""

    kind = "non_monotone"


class QuadratureFailure(ComputationError):
    """Adaptive quadrature could not meet its tolerance."""

    kind = "quadrature_failure"


class BeyondBound(DomainError):
    """Negative coupling evaluated above the bounded-spectrum ceiling."""

    kind = "beyond_bound"

    def __init__(self, message: str, e_max: float):
        super().__init__(f"{message} (e_max = {e_max:.15g})")
        self.e_max = e_max


class DomainExhausted(ComputationError):
    """The ladder left the domain of its lambda function.

    This is an expected outcome for bounded spectra; ``spectrum`` holds
    every level computed before the domain ran out.
    """

    kind = "domain_exhausted"

    def __init__(self, message: str, spectrum: Any = None):
        super().__init__(message)
        self.spectrum = spectrum

    @property
    def last_level(self) -> Optional[float]:
        if self.spectrum is None:
            return None
        return self.spectrum.levels[-1]


class NonPositiveLambda(ComputationError):
    """A lambda function returned a non-positive spacing."""

    kind = "non_positive_lambda"


class TailNotBounded(ComputationError):
    """Level sum could not be certified to the requested tolerance."""

    kind = "tail_not_bounded"


class NoConvergence(ComputationError):
    """Iteration cap reached without convergence."""

    kind = "no_convergence"


class BasisNotConverged(NoConvergence):
    """Oracle levels still moving when the Fock basis reached its size cap."""

    kind = "basis_not_converged"


class NegativeCouplingRefused(ComputationError):
    """Oracle diagonalization requested for a coupling unbounded below."""

    kind = "negative_coupling"


class InconsistentSystem(ComputationError):
    """The ordering-constant equations have no (unique) solution."""

    kind = "inconsistent_system"

    def __init__(self, message: str, residual: Any = None):
        if residual is not None:
            message = f"{message}; residual: {residual}"
        super().__init__(message)
        self.residual = residual


class VerificationFailure(EigenladderError):
    """A verification suite found a check outside its tolerance."""

    kind = "verification_failure"
    exit_code = 4


# Error solutions database
ERROR_SOLUTIONS: Dict[str, Dict[str, Any]] = {
    "config_error": {
        "message": "Configuration file error",
        "solutions": [
            "Check YAML syntax in config file",
            "Write rationals as quoted strings, e.g. kappa: \"1/100\"",
            "Use `eigenladder --dump-config` output as a template",
            "Negative kappa with method 'oracle' needs --allow-negative-oracle",
        ],
    },
    "domain_error": {
        "message": "Argument outside the domain of the formula",
        "solutions": [
            "Closed forms need e > 1/2 and a coupling of the right sign",
            "Elliptic K needs modulus k < 1",
        ],
    },
    "beyond_bound": {
        "message": "Energy above the negative-coupling ceiling",
        "solutions": [
            "Keep e below e_max = 1/2 + 1/(16|kappa|)",
            "Lower n-max; the spectrum is bounded for kappa < 0",
        ],
    },
    "no_root": {
        "message": "Energy at or below the energy surface floor",
        "solutions": ["Request an energy above e(0, theta) = 1/2"],
    },
    "non_monotone": {
        "message": "Energy surface is not increasing in |z|^2",
        "solutions": [
            "Negative couplings are only valid below their bound",
            "Check the potential definition",
        ],
    },
    "quadrature_failure": {
        "message": "Adaptive quadrature did not converge",
        "solutions": [
            "Relax quadrature.tolerance",
            "Raise quadrature.max_depth",
        ],
    },
    "domain_exhausted": {
        "message": "Ladder ran past the domain of lambda",
        "solutions": ["Expected for bounded spectra; the partial ladder is kept"],
    },
    "non_positive_lambda": {
        "message": "Lambda is not positive on the ladder",
        "solutions": [
            "A ground state needs lambda > 0",
            "Perturbative lambda is only valid for small kappa * e",
        ],
    },
    "tail_not_bounded": {
        "message": "Partition sum tail could not be certified",
        "solutions": [
            "Increase ladder.n_max",
            "Increase beta or relax thermal.tolerance",
        ],
    },
    "no_convergence": {
        "message": "Iteration did not converge",
        "solutions": [
            "Relax quadrature.root_tolerance or the tolerance of the failing step",
            "Check that the energy lies inside the method's domain",
        ],
    },
    "basis_not_converged": {
        "message": "Fock basis too small for the requested levels",
        "solutions": [
            "Raise oracle.max_dim",
            "Relax oracle.tolerance or lower n-max",
        ],
    },
    "negative_coupling": {
        "message": "Truncated Fock matrix is not physical for kappa < 0",
        "solutions": ["Pass --allow-negative-oracle to diagonalize anyway"],
    },
    "inconsistent_system": {
        "message": "Ordering-constant equations are unsolvable",
        "solutions": [
            "Check the fixed leading coefficients of the ansatz",
            "The residual polynomial names the offending terms",
        ],
    },
    "verification_failure": {
        "message": "Verification suite failed",
        "solutions": ["Inspect the FAIL rows of the report"],
    },
}


def handle_error(error: Exception, context: str = "", show_traceback: bool = False) -> None:
    """
    Log an error with its known remediation hints.

    Args:
        error: The exception that occurred
        context: Additional context about where the error occurred
        show_traceback: Whether to log the full traceback
    """
    logger.error("%s: %s", type(error).__name__, error, exc_info=show_traceback)
    if context:
        logger.error("context: %s", context)

    kind = getattr(error, "kind", None)
    solution_info = ERROR_SOLUTIONS.get(kind)
    if solution_info is None:
        return
    logger.info("%s", solution_info["message"])
    for i, solution in enumerate(solution_info["solutions"], 1):
        logger.info("  %d. %s", i, solution)


def exit_code_for(error: Exception) -> int:
    """Map an exception to the CLI exit code (config 2, computation 3, verification 4)."""
    if isinstance(error, EigenladderError):
        return error.exit_code
    return 3


def validate_config(config: Dict[str, Any]) -> List[str]:
    """
    Validate a run configuration mapping.

    Args:
        config: Configuration dictionary (already merged with defaults)

    Returns:
        List of problems; empty when the configuration is usable
    """
    errors = []
    required_sections = ["oscillator", "method", "ladder", "thermal", "oracle", "quadrature"]
    for section in required_sections:
        if section not in config:
            errors.append(f"Missing required section: {section}")
    if errors:
        return errors

    osc = config["oscillator"]
    if osc.get("potential") not in ("quartic", "monomial", "exponential", "none"):
        errors.append(f"Unknown potential: {osc.get('potential')}")
    if osc.get("potential") == "monomial":
        degree = osc.get("degree")
        if not isinstance(degree, int) or degree < 4 or degree % 2:
            errors.append("Monomial degree must be an even integer >= 4")

    if config["method"].get("name") not in ("pert", "sc-closed", "sc-quadrature", "oracle"):
        errors.append(f"Unknown method: {config['method'].get('name')}")

    n_max = config["ladder"].get("n_max")
    if not isinstance(n_max, int) or n_max < 0:
        errors.append("ladder.n_max must be a non-negative integer")

    for section, key in (("quadrature", "tolerance"), ("thermal", "tolerance"), ("oracle", "tolerance")):
        value = config[section].get(key)
        if not isinstance(value, (int, float)) or value <= 0:
            errors.append(f"{section}.{key} must be positive")

    return errors
