"""Finite-s Pegg-Barnett phase states and the Hermitian phase operator."""

import math
from dataclasses import dataclass
from typing import Any, Iterable, List, Tuple

import numpy as np
import numpy.typing as npt

from pb_oscillator.errors import DimensionError, DomainError, NormalizationError
from pb_oscillator.linalg import (
    CMatrix,
    DEFAULT_TOLERANCE,
    Tolerance,
    commutator,
    freeze,
    matrix_exponential,
)
from pb_oscillator.pb_operators import require_cutoff

# Probabilities below this are reported as 0.
PROBABILITY_FLOOR = 1e-15


def phase_state(s: int, theta: float) -> npt.NDArray[np.complex128]:
    """
    |θ> = (s+1)^(-1/2) Σ_n exp(inθ)|n>, n = 0..s.

    Every number-state component has magnitude 1/sqrt(s+1).
    """
    s = require_cutoff(s)
    n = np.arange(s + 1)
    return np.exp(1j * n * theta) / math.sqrt(s + 1)


@dataclass(frozen=True, eq=False)
class PhaseBasis:
    """
    The s+1 orthonormal phase states on the grid θ_m = θ₀ + 2πm/(s+1).

    Attributes:
        s (int): Cutoff.
        theta0 (float): Reference phase.
        thetas (np.ndarray): Grid phases θ_m.
        states (CMatrix): Column m is |θ_m> in the number basis.
        phase_op (CMatrix): Σ_m θ_m |θ_m><θ_m|, Hermitian.
    """

    s: int
    theta0: float
    thetas: npt.NDArray[np.float64]
    states: CMatrix
    phase_op: CMatrix

    @property
    def dim(self) -> int:
        return self.s + 1

    def __repr__(self):
        return f"<PhaseBasis(s={self.s}, theta0={self.theta0})>"


def build_phase_basis(s: int, theta0: float = 0.0) -> PhaseBasis:
    """
    Phase states and phase operator at cutoff s.

    Args:
        s (int): Maximum occupation number.
        theta0 (float): Reference phase (radians).

    Returns:
        PhaseBasis: Immutable basis record.
    """
    s = require_cutoff(s)
    thetas = theta0 + 2 * np.pi * np.arange(s + 1) / (s + 1)
    states = np.stack([phase_state(s, theta) for theta in thetas], axis=1)
    phase_op = (states * thetas) @ states.conj().T
    phase_op = (phase_op + phase_op.conj().T) / 2
    thetas = np.array(thetas, dtype=np.float64)
    thetas.setflags(write=False)
    return PhaseBasis(
        s=s,
        theta0=float(theta0),
        thetas=thetas,
        states=freeze(states),
        phase_op=freeze(phase_op),
    )


def number_operator(s: int) -> CMatrix:
    return np.diag(np.arange(require_cutoff(s) + 1, dtype=np.complex128))


def number_phase_commutator(basis: PhaseBasis) -> CMatrix:
    """
    C = [φ̂, N̂].

    C is anti-Hermitian and its number-basis diagonal vanishes, so
    <n|[φ̂, N̂]|n> = 0 is a consistent statement about a bounded Hermitian
    phase operator rather than a contradiction.
    """
    return commutator(basis.phase_op, number_operator(basis.s))


def completeness_defect(basis: PhaseBasis) -> float:
    """max-abs of Σ_m |θ_m><θ_m| − I."""
    resolution = basis.states @ basis.states.conj().T
    return float(np.max(np.abs(resolution - np.eye(basis.dim))))


def phase_exponential(basis: PhaseBasis) -> CMatrix:
    """exp(iφ̂), unitary on the truncated space."""
    return matrix_exponential(1j * basis.phase_op)


def _require_state(
    state: Any, dim: int, tol: Tolerance
) -> npt.NDArray[np.complex128]:
    vector = np.asarray(state, dtype=np.complex128).ravel()
    if vector.shape[0] != dim:
        raise DimensionError(f"State has {vector.shape[0]} components, expected {dim}.")
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > tol.bound(1.0):
        raise NormalizationError(norm)
    return vector


def phase_distribution(
    state: Any,
    basis: PhaseBasis,
    tol: Tolerance = DEFAULT_TOLERANCE,
    floor: float = PROBABILITY_FLOOR,
) -> npt.NDArray[np.float64]:
    """
    p_m = |<θ_m|ψ>|² over the phase grid.

    Args:
        state: Unit-norm amplitude vector of length s+1.
        basis (PhaseBasis): Phase basis.
        tol (Tolerance): Allowed deviation of the norm from 1.
        floor (float): Probabilities below this are clamped to 0.

    Raises:
        DimensionError: If the state length is not s+1.
        NormalizationError: If the state is not normalized.
    """
    vector = _require_state(state, basis.dim, tol)
    probabilities = np.abs(basis.states.conj().T @ vector) ** 2
    probabilities[probabilities < floor] = 0.0
    return probabilities


def number_state(s: int, n: int) -> npt.NDArray[np.complex128]:
    s = require_cutoff(s)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 0 <= n <= s:
        raise DomainError(f"Number state |{n}> does not exist at s={s}.")
    vector = np.zeros(s + 1, dtype=np.complex128)
    vector[n] = 1.0
    return vector


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float


def phase_moments(
    state: Any, basis: PhaseBasis, tol: Tolerance = DEFAULT_TOLERANCE
) -> Moments:
    """Mean and variance of the phase operator in `state`, measured on the grid."""
    probabilities = phase_distribution(state, basis, tol, floor=0.0)
    mean = float(probabilities @ basis.thetas)
    variance = float(probabilities @ (basis.thetas - mean) ** 2)
    return Moments(mean, variance)


def number_moments(state: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> Moments:
    vector = np.asarray(state, dtype=np.complex128).ravel()
    _require_state(vector, vector.shape[0], tol)
    probabilities = np.abs(vector) ** 2
    n = np.arange(vector.shape[0])
    mean = float(probabilities @ n)
    return Moments(mean, float(probabilities @ (n - mean) ** 2))


def symmetric_theta0(s: int) -> float:
    """θ₀ = −πs/(s+1), which centres the grid on 0."""
    s = require_cutoff(s)
    return -math.pi * s / (s + 1)


@dataclass(frozen=True)
class RandomPhaseRow:
    s: int
    variance: float
    gap: float


def random_phase_report(s_list: Iterable[int]) -> Tuple[RandomPhaseRow, ...]:
    """
    Vacuum phase variance on the symmetric grid for each s.

    The vacuum is uniformly distributed over the grid, so its variance is
    (π²/3)(1 − 1/(s+1)²), approaching the continuous random-phase value π²/3.
    `gap` is π²/3 minus the measured variance.
    """
    rows: List[RandomPhaseRow] = []
    for s in s_list:
        basis = build_phase_basis(s, symmetric_theta0(s))
        variance = phase_moments(number_state(basis.s, 0), basis).variance
        rows.append(RandomPhaseRow(basis.s, variance, math.pi**2 / 3 - variance))
    return tuple(rows)
