"""
Unified entry point for eigenladder computations.
"""

import logging
import math
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from .ladder import (
    LambdaFunction,
    Spectrum,
    build_spectrum,
    constant_lambda,
    perturbative_lambda,
    quadrature_lambda,
    quartic_closed_lambda,
    tabulated_lambda,
)
from .oracle import ConvergedLevels, converged_levels
from .oscillator import OscillatorSpec
from .quartic import REGIME, energy_pert, groundstate_pert
from .thermal import classical_partition, thermal_row
from .utils.config import METHODS, RunConfig, load_config, merge_configs
from .utils.error_handling import DomainError, NegativeCouplingRefused
from .utils.quadrature import QuadratureConfig

logger = logging.getLogger(__name__)

# κn² above which the second-order series is flagged as unreliable
PERTURBATIVE_LIMIT = 0.1


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


class EigenLadder:
    """
    Spectrum, λ and thermal pipeline for one oscillator.

    This class owns the oscillator definition and run configuration and
    hands out λ functions, ladders, oracle levels and thermal rows for
    each method: ``pert``, ``sc-closed``, ``sc-quadrature`` or ``oracle``.

    Args:
        config: RunConfig, or a mapping of configuration sections
    """

    def __init__(self, config: Union[RunConfig, Mapping[str, Any], None] = None):
        if not isinstance(config, RunConfig):
            config = RunConfig.from_mapping(config or {})
        self.config = config
        self.spec = OscillatorSpec(
            epsilon0=config.epsilon0,
            potential=config.potential,
            kappa=config.kappa,
            degree=config.degree,
            alpha2=config.alpha2,
        )
        self.quadrature = QuadratureConfig(
            tolerance=config.quad_tolerance,
            max_depth=config.quad_max_depth,
            root_tolerance=config.root_tolerance,
        )
        self._oracle_cache: Dict[int, ConvergedLevels] = {}
        logger.debug("Initialized for %s", self.spec.describe())

    @classmethod
    def from_file(cls, path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> "EigenLadder":
        """Load a YAML file (when given), apply overrides and build the pipeline."""
        base = load_config(path) if path else {}
        return cls(RunConfig.from_mapping(merge_configs(base, dict(overrides or {}))))

    @property
    def kappa(self) -> float:
        return self.spec.kappa_float

    @property
    def has_ladder_polynomial(self) -> bool:
        return self.spec.potential in ("quartic", "none")

    def ground_level(self) -> float:
        """
        Ground level e_g.

        Quartic: the second-order series. Other interactions: 1/2 plus the
        first-order shift ⟨0|V|0⟩/ε₀, which is as far as they are solved.
        """
        if self.spec.is_harmonic:
            return 0.5
        kappa = self.kappa
        if self.spec.potential == "quartic":
            return float(groundstate_pert(self.spec.kappa))
        if self.spec.potential == "monomial":
            l = self.spec.degree
            return 0.5 + kappa * _double_factorial(l - 1) / l
        alpha2 = self.spec.alpha2
        if not alpha2 < 0.5:
            raise DomainError(f"vacuum average of exp(alpha2 x^2) diverges for alpha2 = {alpha2} >= 1/2")
        return 0.5 + kappa * (1.0 / math.sqrt(1.0 - 2.0 * alpha2) - 1.0)

    def lambda_function(self, method: Optional[str] = None, n_levels: Optional[int] = None) -> LambdaFunction:
        """
        λ for the given method.

        ``oracle`` tabulates the spacings of the first ``n_levels + 1``
        diagonalized levels, so it is defined on every level up to e_{n_levels}.

        Raises:
            DomainError: if the method has no λ for this oscillator
        """
        method = method or self.config.method
        if method not in METHODS:
            raise DomainError(f"unknown method '{method}', choose from {', '.join(METHODS)}")
        if method == "sc-quadrature":
            return quadrature_lambda(self.spec.surface(), self.quadrature)
        if method == "oracle":
            n = self.config.n_max if n_levels is None else n_levels
            levels = self.oracle_levels(n + 2).levels
            rises = [b - a for a, b in zip(levels, levels[1:])]
            return tabulated_lambda(levels[:-1], rises, label=f"oracle {self.spec.describe()}")
        if self.spec.is_harmonic:
            return constant_lambda(1.0)
        if self.spec.potential != "quartic":
            raise DomainError(f"method '{method}' exists for the quartic oscillator only; use sc-quadrature")
        if method == "pert":
            return perturbative_lambda(self.kappa)
        return quartic_closed_lambda(self.kappa)

    def spectrum(self, method: Optional[str] = None, n_max: Optional[int] = None,
                 allow_exhaustion: bool = True) -> Spectrum:
        """Levels e_0..e_{n_max}, shorter when a bounded spectrum runs out."""
        method = method or self.config.method
        n_max = self.config.n_max if n_max is None else n_max
        if method == "oracle":
            return Spectrum.from_levels(self.oracle_levels(n_max + 1).levels, "oracle")
        return build_spectrum(self.lambda_function(method), self.ground_level(), n_max,
                              allow_exhaustion=allow_exhaustion)

    def oracle_levels(self, n_levels: int) -> ConvergedLevels:
        """Lowest ``n_levels`` eigenvalues of the truncated Fock matrix, cached per count."""
        if n_levels not in self._oracle_cache:
            self._oracle_cache[n_levels] = converged_levels(
                self.spec,
                n_levels,
                tol=self.config.oracle_tolerance,
                start_dim=self.config.oracle_start_dim,
                max_dim=self.config.oracle_max_dim,
                allow_negative=self.config.allow_negative_oracle,
            )
        return self._oracle_cache[n_levels]

    def oracle_available(self) -> bool:
        if not self.has_ladder_polynomial:
            return False
        return self.spec.kappa >= 0 or self.config.allow_negative_oracle

    def spectrum_rows(self) -> Tuple[List[Dict[str, Any]], List[str]]:
        """
        Rows ``n,e_pert,e_sc,e_oracle,delta_pert_oracle,delta_sc_oracle``.

        Columns with nothing to show for this oscillator are dropped.
        """
        n_max = self.config.n_max
        quartic = self.has_ladder_polynomial
        sc_method = "sc-closed" if quartic else "sc-quadrature"
        sc = self.spectrum(sc_method, n_max)
        oracle = self.oracle_levels(n_max + 1).levels if self.oracle_available() else None

        columns = ["n"]
        if quartic:
            columns.append("e_pert")
        columns.append("e_sc")
        if oracle is not None:
            columns.append("e_oracle")
            if quartic:
                columns.append("delta_pert_oracle")
            columns.append("delta_sc_oracle")

        rows = []
        for n in range(n_max + 1):
            row: Dict[str, Any] = {"n": n}
            if quartic:
                row["e_pert"] = float(energy_pert(n, self.spec.kappa))
            row["e_sc"] = sc.levels[n] if n < len(sc) else None
            if oracle is not None:
                row["e_oracle"] = oracle[n]
                if quartic:
                    row["delta_pert_oracle"] = row["e_pert"] - oracle[n]
                if row["e_sc"] is not None:
                    row["delta_sc_oracle"] = row["e_sc"] - oracle[n]
            rows.append(row)
        if len(sc) <= n_max:
            logger.info("semiclassical ladder ends at n=%d below e_max", sc.n_max)
        return rows, columns

    def lambda_rows(self, energies: Optional[List[float]] = None) -> Tuple[List[Dict[str, Any]], List[str]]:
        """Rows ``e,lambda_closed,lambda_quadrature,lambda_pert``; cells outside a domain stay empty."""
        energies = self.config.e_grid if energies is None else energies
        sources: List[Tuple[str, LambdaFunction]] = []
        if self.has_ladder_polynomial:
            sources.append(("lambda_closed", self.lambda_function("sc-closed")))
        sources.append(("lambda_quadrature", self.lambda_function("sc-quadrature")))
        if self.has_ladder_polynomial:
            sources.append(("lambda_pert", self.lambda_function("pert")))

        rows = []
        for e in energies:
            row: Dict[str, Any] = {"e": e}
            for name, lam in sources:
                row[name] = lam(e) if lam.contains(e) else None
            rows.append(row)
        return rows, ["e"] + [name for name, _ in sources]

    def thermal_spectrum(self, method: Optional[str] = None) -> Tuple[Spectrum, LambdaFunction]:
        """
        Ladder and λ used for thermal sums.

        Ladder methods climb ``thermal.n_max`` levels; the oracle
        diagonalizes ``ladder.n_max`` + 1 levels.
        """
        method = method or self.config.method
        if method == "oracle":
            n = self.config.n_max
            lam = self.lambda_function("oracle", n)
            return Spectrum.from_levels(self.oracle_levels(n + 2).levels[:n + 1], "oracle"), lam
        lam = self.lambda_function(method)
        return build_spectrum(lam, self.ground_level(), self.config.thermal_n_max, allow_exhaustion=True), lam

    def classical_partition(self, beta: float) -> Optional[float]:
        """Classical phase-space Z, or None for a surface that is not binding."""
        if self.spec.surface().ceiling is not None:
            return None
        return classical_partition(self.spec, beta, self.quadrature)

    def thermal_rows(self, method: Optional[str] = None) -> Tuple[List[Dict[str, Any]], List[str]]:
        """Thermal rows for each configured β, with the classical Z alongside."""
        spectrum, lam = self.thermal_spectrum(method)
        rows = []
        for beta in self.config.betas:
            row = thermal_row(spectrum, lam, beta, self.config.thermal_tolerance)
            z_classical = self.classical_partition(beta)
            row["Z_classical"] = z_classical
            row["Z_ratio"] = row["Z"] / z_classical if z_classical else None
            rows.append(row)
        columns = ["beta", "Z", "avg_energy", "avg_number", "tail_bound",
                   "res_kms", "res_energy", "res_number", "Z_classical", "Z_ratio"]
        return rows, columns

    def regime_warnings(self, method: Optional[str] = None) -> List[str]:
        """Applicability notes for the perturbative and WKB formulas at this run's settings."""
        method = method or self.config.method
        warnings = []
        if self.spec.potential == "quartic" and self.kappa != 0:
            strength = abs(self.kappa) * self.config.n_max ** 2
            note = f"pert valid for {REGIME['pert']}; kappa*n_max^2 = {strength:.3g}"
            if strength > PERTURBATIVE_LIMIT or method == "pert":
                warnings.append(note)
            warnings.append(f"wkb asymptote valid for {REGIME['wkb']}")
        if self.spec.kappa < 0:
            warnings.append("negative coupling: semiclassical ladder is bounded")
        return warnings

    def require_oracle(self):
        if not self.has_ladder_polynomial:
            raise DomainError(f"no Fock matrix for potential '{self.spec.potential}'")
        if self.spec.kappa < 0 and not self.config.allow_negative_oracle:
            raise NegativeCouplingRefused("oracle refuses kappa < 0 without --allow-negative-oracle")
