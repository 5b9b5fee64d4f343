import math
from typing import Dict, Iterable, Optional, Sequence

import numpy as np
from scipy.special import entr

from .basics import PSD_TOL, InvalidStateError, QubitDensity, bloch_from_density


EIGENVALUE_SUM_TOL = 1e-8

MEASURES = ("l1", "rel_entropy", "skew", "frobenius")


def _clipped_eigenvalues(eigenvalues: Iterable[float]) -> np.ndarray:
    values = np.asarray(list(eigenvalues), dtype=float)
    if values.ndim != 1 or len(values) < 2:
        raise InvalidStateError(f"Expected at least 2 eigenvalues, got {values}")
    if abs(values.sum() - 1.0) > EIGENVALUE_SUM_TOL:
        raise InvalidStateError(f"Eigenvalues sum to {values.sum()!r}, not 1")
    if values.min() < -PSD_TOL:
        raise InvalidStateError(f"Negative eigenvalue {values.min():.3e}")
    return np.clip(values, 0.0, 1.0)


def von_neumann_entropy(eigenvalues: Iterable[float]) -> float:
    """S = -Σ λ ln λ in nats, with 0 ln 0 = 0."""
    return float(np.sum(entr(_clipped_eigenvalues(eigenvalues))))


def coherence_l1(rho: QubitDensity) -> float:
    """Sum of the moduli of the off-diagonal entries, 2|ρ12| for a qubit."""
    return 2.0 * abs(rho.rho12)


def coherence_rel_entropy(rho: QubitDensity) -> float:
    """
    Relative entropy of coherence S(ρ_diag) - S(ρ), in nats.

    The spectrum is taken from the Bloch length, (1 ± |n⃗|)/2, so no
    eigensolver runs per grid cell.
    """
    length = min(bloch_from_density(rho).length, 1.0)
    s_diag = von_neumann_entropy([rho.rho11, rho.rho22])
    s_rho = von_neumann_entropy([0.5 * (1.0 + length), 0.5 * (1.0 - length)])
    return max(s_diag - s_rho, 0.0)


def skew_information(rho: QubitDensity) -> float:
    """
    Skew information -½ Tr([√ρ, Σ₃]²) of a qubit, in closed form.

    With √ρ = a 1 + b n̂·Σ one gets 4b² (n1² + n2²)/|n⃗|² and
    4b² = 1 - √(1 - |n⃗|²), which is rewritten as

        (n1² + n2²) / (1 + √(1 - |n⃗|²))

    so that the maximally mixed limit needs no division by |n⃗|.
    |n⃗| is clamped to 1.
    """
    n = bloch_from_density(rho)
    transverse = n.n1**2 + n.n2**2
    gap = max(1.0 - min(n.length, 1.0) ** 2, 0.0)
    return transverse / (1.0 + math.sqrt(gap))


def coherence_frobenius(eigenvalues: Sequence[float]) -> float:
    """
    Basis-independent coherence from the spectrum of a d-level state.

    Args:
        eigenvalues (sequence of float):
            The d eigenvalues. They must sum to 1 within 1e-8 and be
            >= -1e-10; small negatives are clamped to 0.

    Returns:
        float: √(d/(d-1) Σ (λ_j - 1/d)²), in [0, 1]. Equals |n⃗| for d = 2.

    Raises:
        InvalidStateError: If the eigenvalues do not describe a state.
    """
    values = _clipped_eigenvalues(eigenvalues)
    d = len(values)
    return math.sqrt(d / (d - 1) * float(np.sum((values - 1.0 / d) ** 2)))


def coherence_frobenius_density(rho: QubitDensity) -> float:
    return coherence_frobenius(rho.eigenvalues)


def coherence_frobenius_matrix(matrix) -> float:
    """
    √(d/(d-1)) ‖ρ - 1/d‖_F for a d x d density matrix, without diagonalizing.
    """
    rho = np.asarray(matrix, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
        raise InvalidStateError(f"Expected a square matrix, got shape {rho.shape}")
    d = rho.shape[0]
    if abs(np.trace(rho) - 1.0) > EIGENVALUE_SUM_TOL:
        raise InvalidStateError(f"Density matrix trace is {np.trace(rho)!r}, not 1")
    distance = np.linalg.norm(rho - np.eye(d) / d, ord="fro")
    return math.sqrt(d / (d - 1)) * float(distance)


def frobenius_deficit(delta: float) -> float:
    """
    1 - 𝒞_F of a diagonal qubit state with n_z = 1 - delta.

    𝒞_F = |n_z| there, so the deficit is delta itself as long as n_z >= 0,
    and 2 - delta once the population has crossed over.
    """
    if delta < 0:
        raise InvalidStateError(f"n_z deficit must be >= 0, got {delta}")
    if delta > 2.0 + PSD_TOL:
        raise InvalidStateError(f"n_z deficit must be <= 2, got {delta}")
    return delta if delta <= 1.0 else 2.0 - delta


def all_measures(
    rho: QubitDensity, measures: Optional[Iterable[str]] = None
) -> Dict[str, float]:
    """
    Evaluate the requested coherence measures of one state.

    Args:
        rho (QubitDensity): The state.
        measures (iterable of str, optional):
            Subset of "l1", "rel_entropy", "skew", "frobenius". Defaults to all.

    Returns:
        dict: Measure name to value, in the order of MEASURES.
    """
    selected = set(MEASURES if measures is None else measures)
    unknown = selected - set(MEASURES)
    if unknown:
        raise ValueError(f"Unknown coherence measures: {sorted(unknown)}")
    functions = {
        "l1": coherence_l1,
        "rel_entropy": coherence_rel_entropy,
        "skew": skew_information,
        "frobenius": coherence_frobenius_density,
    }
    return {name: functions[name](rho) for name in MEASURES if name in selected}
