"""
Supersymmetric sector: block operators, the multiphoton Jaynes-Cummings
Hamiltonian and the N′ eigenvalue law.

Block layout (each block is D×D, number states 0..D−1):

    top    = atomic excited state, σ_z = +1
    bottom = atomic ground state,  σ_z = −1

σ₊ maps bottom to top, so Q = a^k σ₊ / √k! lives in the top-right block and
Q† = (a†)^k σ₋ / √k! in the bottom-left block.

k = 0 is outside this construction: the supersymmetric P-B oscillator is then
the plain Fermionic (two-level) case, with C = 1 for every m.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from pb_oscillator.errors import DomainError, HermiticityError
from pb_oscillator.linalg import (
    CMatrix,
    DEFAULT_TOLERANCE,
    Tolerance,
    anticommutator,
    block_diagonal,
    commutator,
    embed_blocks,
    freeze,
    hermiticity_defect,
    hermitian_eigensystem,
    identity,
    max_abs,
)
from pb_oscillator.pb_operators import annihilation_operator
from pb_oscillator.relations import FULL, WINDOW, RelationReport, RelationSet

logger = logging.getLogger(__name__)

WINDOW_TOL = 1e-10
EXACT_TOL = 1e-12


def default_block_dim(k: int) -> int:
    """Per-block truncation used by reports when D is not given: 4k + 8."""
    return 4 * int(k) + 8


def _require_positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}.")
    return int(value)


def _require_transition(k: Any, D: Any) -> Tuple[int, int]:
    k = _require_positive_int(k, "Photon number k")
    D = _require_positive_int(D, "Block dimension D")
    if D <= k:
        raise DomainError(f"Block dimension D={D} leaves no room for a {k}-photon transition.")
    return k, D


@dataclass(frozen=True, eq=False)
class SusyRep:
    """
    Block operators N, N′, Q, Q†, σ_z at photon multiplicity k and block size D.

    N is assembled from its operator form a†a + ((k−1)/2)σ_z + ½, whose
    blocks are a†a + k/2 and a†a − k/2 + 1. The second block equals
    aa† − k/2 wherever aa† = a†a + 1 holds, i.e. everywhere but the top
    truncated state.

    Attributes:
        k (int): Photons per transition.
        D (int): Per-block truncation dimension.
        window (int): Boundary-safe states per block (W <= D − k).
        projector_W (CMatrix): Projects each block onto its first W number states.
    """

    k: int
    D: int
    N: CMatrix
    Nprime: CMatrix
    Q: CMatrix
    Q_dag: CMatrix
    sigma_z: CMatrix
    window: int
    projector_W: CMatrix

    @property
    def dim(self) -> int:
        return 2 * self.D

    def top(self, n: int) -> np.ndarray:
        """|n> ⊗ excited."""
        vector = np.zeros(self.dim, dtype=np.complex128)
        vector[n] = 1.0
        return vector

    def bottom(self, n: int) -> np.ndarray:
        """|n> ⊗ ground."""
        vector = np.zeros(self.dim, dtype=np.complex128)
        vector[self.D + n] = 1.0
        return vector

    def operators(self) -> Dict[str, CMatrix]:
        return {
            "N": self.N,
            "Nprime": self.Nprime,
            "Q": self.Q,
            "Q_dag": self.Q_dag,
            "sigma_z": self.sigma_z,
        }

    def __repr__(self):
        return f"<SusyRep(k={self.k}, D={self.D}, window={self.window})>"


def build_susy_rep(k: int, D: int, window: Optional[int] = None) -> SusyRep:
    """
    Builds the SUSY block operators from the truncated a of dimension D.

    Args:
        k (int): Photons per transition (k >= 1).
        D (int): Block dimension (D > k).
        window (int, optional): Safe window W, default D − k.

    Returns:
        SusyRep: The representation.

    Raises:
        DomainError: If D <= k, k < 1, or the window exceeds D − k.
    """
    k, D = _require_transition(k, D)
    if window is None:
        window = D - k
    if isinstance(window, bool) or not isinstance(window, (int, np.integer)) or not 0 <= window <= D - k:
        raise DomainError(f"Window must lie in 0..{D - k}, got {window!r}.")

    a = annihilation_operator(D - 1)
    a_dag = a.conj().T
    a_k = np.linalg.matrix_power(a, k)
    a_dag_k = np.linalg.matrix_power(a_dag, k)
    k_factorial = math.factorial(k)
    number = a_dag @ a
    I_D = identity(D)

    Q = embed_blocks(a_k / math.sqrt(k_factorial), np.zeros((D, D)))
    sigma_z = block_diagonal(I_D, -I_D)
    N = block_diagonal(number + (k / 2) * I_D, number + (1 - k / 2) * I_D)
    Nprime = block_diagonal(a_k @ a_dag_k / k_factorial, a_dag_k @ a_k / k_factorial)
    P_W = np.diag((np.arange(D) < window).astype(np.complex128))
    logger.debug("SusyRep k=%d D=%d window=%d", k, D, window)
    return SusyRep(
        k=k,
        D=D,
        N=freeze(N),
        Nprime=freeze(Nprime),
        Q=freeze(Q),
        Q_dag=freeze(Q.conj().T),
        sigma_z=freeze(sigma_z),
        window=int(window),
        projector_W=freeze(block_diagonal(P_W, P_W)),
    )


def verify_susy_algebra(
    rep: SusyRep, tolerance: float = WINDOW_TOL, exact_tolerance: float = EXACT_TOL
) -> RelationReport:
    """
    Residuals of the SUSY algebra.

    Nilpotence and the σ_z grading relations are checked on the full
    truncated space (nilpotence with tolerance 0); the relations that involve
    N or N′ are compressed onto the boundary-safe window with projector_W on
    both sides, and are also reported on the full space under a "(full)"
    suffix when they hold there exactly.

    Args:
        rep (SusyRep): The truncated representation.
        tolerance (float): Bound for the N and N′ relations.
        exact_tolerance (float): Bound for the σ_z grading relations.

    Returns:
        RelationReport: One result per relation, tagged "full" or "window".
    """
    rel = RelationSet(rep.operators(), tolerance=tolerance, projector=rep.projector_W)

    @rel.relation("Q^2=0", tolerance=0.0)
    def _q_squared(get):
        return get("Q") @ get("Q")

    @rel.relation("(Q_dag)^2=0", tolerance=0.0)
    def _q_dag_squared(get):
        return get("Q_dag") @ get("Q_dag")

    rel.add_relation(
        "{Q,sigma_z}=0",
        lambda get: anticommutator(get("Q"), get("sigma_z")),
        FULL,
        exact_tolerance,
    )
    rel.add_relation(
        "{Q_dag,sigma_z}=0",
        lambda get: anticommutator(get("Q_dag"), get("sigma_z")),
        FULL,
        exact_tolerance,
    )
    rel.add_relation(
        "[Q,sigma_z]=-2Q",
        lambda get: commutator(get("Q"), get("sigma_z")) + 2 * get("Q"),
        FULL,
        exact_tolerance,
    )
    rel.add_relation(
        "[Q_dag,sigma_z]=2Q_dag",
        lambda get: commutator(get("Q_dag"), get("sigma_z")) - 2 * get("Q_dag"),
        FULL,
        exact_tolerance,
    )

    windowed = {
        "[Q,Q_dag]=N'sigma_z": lambda get: commutator(get("Q"), get("Q_dag"))
        - get("Nprime") @ get("sigma_z"),
        "{Q,Q_dag}=N'": lambda get: anticommutator(get("Q"), get("Q_dag")) - get("Nprime"),
        "[N,N']=0": lambda get: commutator(get("N"), get("Nprime")),
        "[N,Q]=-Q": lambda get: commutator(get("N"), get("Q")) + get("Q"),
        "[N,Q_dag]=Q_dag": lambda get: commutator(get("N"), get("Q_dag")) - get("Q_dag"),
        "(Q_dag-Q)^2=-N'": lambda get: (get("Q_dag") - get("Q")) @ (get("Q_dag") - get("Q"))
        + get("Nprime"),
    }
    for key, residual_fn in windowed.items():
        rel.add_relation(key, residual_fn, WINDOW, tolerance)
    for key, residual_fn in windowed.items():
        rel.add_relation(f"{key} (full)", residual_fn, FULL, tolerance)

    rel.note("window", rep.window)
    return rel.evaluate()


@dataclass(frozen=True)
class JcParams:
    """
    Multiphoton Jaynes-Cummings parameters.

    Attributes:
        omega (float): Mode frequency ω > 0.
        omega0 (float): Atomic transition frequency ω₀.
        g (complex): Coupling in front of (a†)^k σ₋.
        k (int): Photons per transition.
    """

    omega: float
    omega0: float
    g: complex
    k: int

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"Mode frequency omega must be positive, got {self.omega!r}.")
        _require_positive_int(self.k, "Photon number k")
        object.__setattr__(self, "g", complex(self.g))

    @property
    def delta(self) -> float:
        """Detuning δ = kω − ω₀."""
        return self.k * self.omega - self.omega0

    @property
    def supercharge_coupling(self) -> complex:
        """g·√k!, the coupling of Q† = (a†)^k σ₋ / √k! that reproduces g(a†)^k σ₋."""
        return self.g * math.sqrt(math.factorial(self.k))


def jc_hamiltonian_direct(
    p: JcParams, D: int, tol: Tolerance = DEFAULT_TOLERANCE
) -> CMatrix:
    """
    H = ω a†a + (ω₀/2)σ_z + g(a†)^k σ₋ + g* a^k σ₊ on the truncated 2D space.

    Raises:
        DomainError: If D <= k.
        HermiticityError: If the assembled matrix is not Hermitian.
    """
    k, D = _require_transition(p.k, D)
    a = annihilation_operator(D - 1)
    a_dag = a.conj().T
    number = a_dag @ a
    I_D = identity(D)
    H = block_diagonal(
        p.omega * number + (p.omega0 / 2) * I_D,
        p.omega * number - (p.omega0 / 2) * I_D,
    )
    H = H + embed_blocks(
        np.conj(p.g) * np.linalg.matrix_power(a, k),
        p.g * np.linalg.matrix_power(a_dag, k),
    )
    defect = hermiticity_defect(H)
    if defect > tol.bound(max_abs(H)):
        raise HermiticityError(defect)
    return H


def jc_hamiltonian_susy_form(p: JcParams, rep: SusyRep) -> CMatrix:
    """
    H = ωN + ((ω − δ)/2)σ_z + G Q† + G* Q − ω/2, with G = p.supercharge_coupling.

    Raises:
        DomainError: If rep.k != p.k.
    """
    if rep.k != p.k:
        raise DomainError(f"SusyRep has k={rep.k} but parameters have k={p.k}.")
    G = p.supercharge_coupling
    return (
        p.omega * rep.N
        + ((p.omega - p.delta) / 2) * rep.sigma_z
        + G * rep.Q_dag
        + np.conj(G) * rep.Q
        - (p.omega / 2) * identity(rep.dim)
    )


def _require_safe(k: int, m: Any, D: int) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"m must be a non-negative integer, got {m!r}.")
    if m + k > D - 1 - k:
        raise DomainError(
            f"Subspace m={m}, k={k} does not fit the safe window of D={D} (need m + 2k <= D − 1)."
        )
    return int(m)


@dataclass(frozen=True)
class QuasiAlgebraCell:
    """
    The N′ eigenvalue C = (m+k)!/(m!k!) labelling span{|m>⊗e, |m+k>⊗g}.

    C is computed with exact integer arithmetic.
    """

    m: int
    k: int
    C: int = field(init=False)

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)) or self.m < 0:
            raise DomainError(f"m must be a non-negative integer, got {self.m!r}.")
        _require_positive_int(self.k, "Photon number k")
        object.__setattr__(self, "C", math.comb(int(self.m) + int(self.k), int(self.k)))


def _subspace(rep: SusyRep, m: int) -> CMatrix:
    """2D×2 isometry onto span{|m>⊗e, |m+k>⊗g}."""
    return np.stack([rep.top(m), rep.bottom(m + rep.k)], axis=1)


def restrict(rep: SusyRep, X: CMatrix, m: int) -> CMatrix:
    V = _subspace(rep, m)
    return V.conj().T @ X @ V


@dataclass(frozen=True)
class EigenCheck:
    k: int
    m: int
    D: int
    expected: int
    observed: Tuple[float, float]
    residual: float
    tolerance: float = EXACT_TOL

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def nprime_eigen_check(k: int, m: int, D: int, tolerance: float = EXACT_TOL) -> EigenCheck:
    """
    Checks N′|m>⊗e = C|m>⊗e and N′|m+k>⊗g = C|m+k>⊗g with C = (m+k)!/(m!k!).

    Raises:
        DomainError: If m + k > D − 1 − k.
    """
    k, D = _require_transition(k, D)
    m = _require_safe(k, m, D)
    rep = build_susy_rep(k, D)
    expected = math.comb(m + k, k)
    observed = []
    residual = 0.0
    for vector in (rep.top(m), rep.bottom(m + k)):
        image = rep.Nprime @ vector
        observed.append(float(np.vdot(vector, image).real))
        residual = max(residual, max_abs(image - expected * vector))
    return EigenCheck(k, m, D, expected, (observed[0], observed[1]), residual, tolerance)


def quasialgebra_check(
    cell: QuasiAlgebraCell, D: int, tolerance: float = EXACT_TOL
) -> RelationReport:
    """
    The quasialgebra on the invariant 2-subspace of N′ with eigenvalue C:

        [Q, Q†] = C σ_z,   {Q, Q†} = C,   (Q† − Q)² = −C

    as exact 2×2 identities, plus zero leakage of Q, Q†, σ_z and N′ out of
    the subspace. Residuals are compared with tolerance·max(1, C), since the
    entries themselves grow like C.

    Raises:
        DomainError: If the subspace does not fit the safe window.
    """
    k, D = _require_transition(cell.k, D)
    m = _require_safe(k, cell.m, D)
    rep = build_susy_rep(k, D)
    V = _subspace(rep, m)
    complement = identity(rep.dim) - V @ V.conj().T
    operators = {f"{name}_r": restrict(rep, X, m) for name, X in rep.operators().items()}
    operators["I2"] = identity(2)
    C = cell.C

    rel = RelationSet(operators, tolerance=tolerance * max(1, C))
    rel.add_relation(
        "[Q,Q_dag]=C*sigma_z",
        lambda get: commutator(get("Q_r"), get("Q_dag_r")) - C * get("sigma_z_r"),
    )
    rel.add_relation(
        "{Q,Q_dag}=C", lambda get: anticommutator(get("Q_r"), get("Q_dag_r")) - C * get("I2")
    )
    rel.add_relation(
        "(Q_dag-Q)^2=-C",
        lambda get: (get("Q_dag_r") - get("Q_r")) @ (get("Q_dag_r") - get("Q_r")) + C * get("I2"),
    )
    rel.add_relation("N'=C", lambda get: get("Nprime_r") - C * get("I2"))
    for name in ("Q", "Q_dag", "sigma_z", "Nprime"):
        X = rep.operators()[name]
        rel.add_relation(f"leakage({name})", lambda get, X=X: complement @ X @ V)
    rel.note("C", C)
    return rel.evaluate()


@dataclass(frozen=True, eq=False)
class SusyEnergy:
    cell: QuasiAlgebraCell
    Omega: float
    energy: float
    restricted_H: CMatrix
    residual: float


def susy_pb_hamiltonian(
    cell: QuasiAlgebraCell, Omega: float, D: Optional[int] = None
) -> SusyEnergy:
    """
    H = ½{Q, Q†}Ω restricted to the cell's subspace, equal to (CΩ/2)·I₂.

    Args:
        cell (QuasiAlgebraCell): The (m, k) cell.
        Omega (float): Oscillator frequency Ω > 0.
        D (int, optional): Block dimension, default max(4k + 8, m + 2k + 1).

    Raises:
        DomainError: If Omega <= 0 or D is too small for the cell.
    """
    if not Omega > 0:
        raise DomainError(f"Omega must be positive, got {Omega!r}.")
    if D is None:
        D = max(default_block_dim(cell.k), cell.m + 2 * cell.k + 1)
    k, D = _require_transition(cell.k, D)
    m = _require_safe(k, cell.m, D)
    rep = build_susy_rep(k, D)
    energy = cell.C * Omega / 2
    restricted_H = (Omega / 2) * restrict(rep, anticommutator(rep.Q, rep.Q_dag), m)
    residual = max_abs(restricted_H - energy * identity(2))
    return SusyEnergy(cell, float(Omega), float(energy), freeze(restricted_H), residual)


def safe_cells(k: int, D: int) -> List[QuasiAlgebraCell]:
    """Every cell (m, k) whose subspace lies in the safe window, m ascending."""
    k, D = _require_transition(k, D)
    return [QuasiAlgebraCell(m, k) for m in range(0, max(D - 2 * k, 0))]


@dataclass(frozen=True)
class PairingCheck:
    m: int
    eigenvalues: Tuple[float, float]
    expected: Tuple[float, float]
    residual: float


def supercharge_pairing(rep: SusyRep, m: int, g: complex) -> PairingCheck:
    """Eigenvalues of gQ† + g*Q on the cell subspace, expected ±|g|√C."""
    m = _require_safe(rep.k, m, rep.D)
    coupling = g * rep.Q_dag + np.conj(g) * rep.Q
    values = hermitian_eigensystem(restrict(rep, coupling, m)).values
    root = abs(g) * math.sqrt(math.comb(m + rep.k, rep.k))
    residual = float(np.max(np.abs(values - np.array([-root, root]))))
    return PairingCheck(m, (float(values[0]), float(values[1])), (-root, root), residual)


def jc_dressed_energies(p: JcParams, m: int) -> Tuple[float, float]:
    """
    Closed-form eigenvalues of the JC Hamiltonian on span{|m>⊗e, |m+k>⊗g}:

        E± = ω(m + k/2) ± sqrt(δ²/4 + |g|² (m+k)!/m!)
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"m must be a non-negative integer, got {m!r}.")
    mean = p.omega * (m + p.k / 2)
    falling = math.perm(m + p.k, p.k)
    split = math.sqrt(p.delta**2 / 4 + abs(p.g) ** 2 * falling)
    return mean - split, mean + split


@dataclass(frozen=True)
class SpectrumRow:
    m: int
    expected: Tuple[float, float]
    observed: Tuple[float, float]
    residual: float


def jc_spectrum_check(
    p: JcParams, D: int, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[SpectrumRow, ...]:
    """Numerical 2×2 dressed energies of the direct Hamiltonian against the closed form."""
    H = jc_hamiltonian_direct(p, D, tol)
    rep = build_susy_rep(p.k, D)
    rows = []
    for cell in safe_cells(p.k, D):
        values = hermitian_eigensystem(restrict(rep, H, cell.m), tol).values
        expected = jc_dressed_energies(p, cell.m)
        residual = float(np.max(np.abs(values - np.array(expected))))
        rows.append(
            SpectrumRow(cell.m, expected, (float(values[0]), float(values[1])), residual)
        )
    return tuple(rows)
