"""
Truncated Fock-basis diagonalization, the reference for every quartic
comparison.

The Hamiltonian matrix ⟨m|H|n⟩ is assembled from the normal-ordered
operator polynomial and diagonalized densely with ``scipy.linalg.eigh``.
Truncation only raises eigenvalues (interlacing), so levels converge from
above as the basis dimension is doubled.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg

from .algebra.operator_poly import fock_matrix
from .oscillator import OscillatorSpec
from .utils.error_handling import BasisNotConverged, DomainError, NegativeCouplingRefused, NoConvergence

logger = logging.getLogger(__name__)

RESIDUAL_FACTOR = 1e-10
PARITY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class FockMatrix:
    """Dense symmetric matrix of H/ε₀ in the first ``dim`` Fock states."""

    dim: int
    values: np.ndarray
    spec: OscillatorSpec

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True)
class EigenResult:
    values: Tuple[float, ...]
    vectors: np.ndarray
    residuals: Tuple[float, ...]


@dataclass(frozen=True)
class ConvergedLevels:
    """
    Attributes:
        levels: Lowest eigenvalues, ascending
        dim: Basis dimension at which they converged
        residuals: ‖Mv − λv‖₂ of each returned pair at that dimension
        parities: "even"/"odd" (or "mixed") support of each eigenvector
        history: (dim, levels) for every dimension tried
    """

    levels: Tuple[float, ...]
    dim: int
    residuals: Tuple[float, ...]
    parities: Tuple[str, ...]
    history: List[Tuple[int, Tuple[float, ...]]] = field(default_factory=list)


def build_hamiltonian_matrix(spec: OscillatorSpec, dim: int) -> FockMatrix:
    """
    ⟨m|H/ε₀|n⟩ for m, n < dim.

    Raises:
        DomainError: for dim < 2 or a potential without a ladder polynomial
    """
    if dim < 2:
        raise DomainError(f"Fock matrix needs dim >= 2, got {dim}")
    hamiltonian = spec.hamiltonian(max_order=1)
    values = fock_matrix(hamiltonian, dim, spec.kappa_float)
    return FockMatrix(dim, values, spec)


def eigenvalues_symmetric(matrix: FockMatrix, n_wanted: int) -> EigenResult:
    """
    Lowest ``n_wanted`` eigenpairs of a symmetric matrix, ascending.

    Every pair is checked against ‖Mv − λv‖₂ ≤ 1e−10 ‖M‖_F.

    Raises:
        DomainError: if n_wanted is not in 1..dim
        NoConvergence: if LAPACK fails or a residual check does not hold
    """
    if not 1 <= n_wanted <= matrix.dim:
        raise DomainError(f"n_wanted must lie in 1..{matrix.dim}, got {n_wanted}")
    try:
        values, vectors = linalg.eigh(matrix.values, subset_by_index=[0, n_wanted - 1])
    except linalg.LinAlgError as e:
        raise NoConvergence(f"eigh failed at dim {matrix.dim}: {e}") from e

    bound = RESIDUAL_FACTOR * max(matrix.frobenius, 1.0)
    residuals = np.linalg.norm(matrix.values @ vectors - vectors * values, axis=0)
    if np.any(residuals > bound):
        worst = int(np.argmax(residuals))
        raise NoConvergence(f"eigenpair {worst} residual {residuals[worst]:.3g} exceeds {bound:.3g}")
    return EigenResult(tuple(float(v) for v in values), vectors, tuple(float(r) for r in residuals))


def parity_of(vector: np.ndarray, tol: float = PARITY_TOLERANCE) -> str:
    """'even' or 'odd' if the vector lives on even or odd Fock states only, else 'mixed'."""
    v = np.asarray(vector, dtype=float)
    scale = max(float(np.max(np.abs(v))), 1e-300)
    even = float(np.max(np.abs(v[0::2]))) / scale
    odd = float(np.max(np.abs(v[1::2]))) / scale if len(v) > 1 else 0.0
    if odd <= tol:
        return "even"
    if even <= tol:
        return "odd"
    return "mixed"


def converged_levels(spec: OscillatorSpec, n_levels: int, tol: float = 1e-10, start_dim: int = 64,
                     max_dim: int = 4096, allow_negative: bool = False) -> ConvergedLevels:
    """
    Double the basis from ``start_dim`` until each of the lowest ``n_levels``
    eigenvalues moves by less than ``tol``.

    The harmonic oscillator is diagonal and returns at the first dimension.

    Raises:
        NegativeCouplingRefused: for κ < 0 unless ``allow_negative``
        BasisNotConverged: if ``max_dim`` is reached first
    """
    if spec.kappa < 0 and not allow_negative:
        raise NegativeCouplingRefused(
            f"kappa = {spec.kappa} < 0: the truncated spectrum is not bounded below in the full basis")
    if n_levels < 1:
        raise DomainError(f"n_levels must be positive, got {n_levels}")
    dim = max(start_dim, 2 * n_levels)
    history: List[Tuple[int, Tuple[float, ...]]] = []
    previous: Optional[EigenResult] = None
    while dim <= max_dim:
        result = eigenvalues_symmetric(build_hamiltonian_matrix(spec, dim), n_levels)
        history.append((dim, result.values))
        if spec.is_harmonic:
            return _finish(result, dim, history)
        if previous is not None:
            change = max(abs(a - b) for a, b in zip(result.values, previous.values))
            logger.debug("dim=%d max level change %.3g", dim, change)
            if change < tol:
                logger.info("dim=%d converged (%d levels, change %.3g)", dim, n_levels, change)
                return _finish(result, dim, history)
        previous = result
        dim *= 2
    raise BasisNotConverged(f"{n_levels} levels not converged to {tol:g} by dim {max_dim}")


def _finish(result: EigenResult, dim: int, history) -> ConvergedLevels:
    parities = tuple(parity_of(result.vectors[:, i]) for i in range(result.vectors.shape[1]))
    return ConvergedLevels(result.values, dim, result.residuals, parities, history)


def oracle_rows(levels: ConvergedLevels) -> List[dict]:
    """CSV rows ``n,e_oracle,dim,residual``."""
    return [
        {"n": n, "e_oracle": e, "dim": levels.dim, "residual": r}
        for n, (e, r) in enumerate(zip(levels.levels, levels.residuals))
    ]
