"""
Lie closure engine, su(n) certificate and Gell-Mann bases.

The closure works in the compact real form: every input generator G is split
into its Hermitian part H and anti-Hermitian part K, and the engine closes the
real span of {iH, K} under the commutator. On anti-Hermitian matrices the
Hilbert-Schmidt product tr(X†Y) is real, so the span is orthonormalized with
real QR on the vectors (Re X, Im X).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from pb_oscillator.errors import (
    CertificationFailure,
    ClosureNotReached,
    DimensionError,
    DomainError,
    NumericError,
    TraceError,
)
from pb_oscillator.linalg import (
    CMatrix,
    DEFAULT_TOLERANCE,
    Tolerance,
    as_cmatrix,
    commutator,
    freeze,
    hermiticity_defect,
    matrix_exponential,
    max_abs,
    require_hermitian,
    unitarity_defect,
)
from pb_oscillator.pb_operators import OscillatorFamily

logger = logging.getLogger(__name__)

SPAN_TOL = 1e-8
TRACE_TOL = 1e-10
UNITARITY_TOL = 1e-9
ANTISYMMETRY_TOL = 1e-9
DEFAULT_MAX_ROUNDS = 16

LAMBDA8_NOTE = (
    "lambda_8 is printed in the source as (1/sqrt(3)) lambda_8, which refers to itself; "
    "implemented as A/sqrt(3) = diag(1, 1, -2)/sqrt(3)."
)


def _to_real(X: CMatrix) -> np.ndarray:
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def _from_real(v: np.ndarray, n: int) -> CMatrix:
    half = n * n
    return (v[:half] + 1j * v[half:]).reshape(n, n)


def _anti_hermitian_parts(X: Any) -> Tuple[CMatrix, CMatrix]:
    """(i·H, K) for X = H + K with H Hermitian and K anti-Hermitian."""
    X = as_cmatrix(X)
    X_dag = X.conj().T
    return 1j * (X + X_dag) / 2, (X - X_dag) / 2


@dataclass(frozen=True)
class BasisOrigin:
    """Where a basis element came from: the round and the source expression."""

    round: int
    source: str


@dataclass(frozen=True, eq=False)
class LieBasis:
    """
    Orthonormal basis of a closed real Lie algebra of anti-Hermitian matrices.

    `basis` holds anti-Hermitian matrices b_j with tr(b_i† b_j) = δ_ij; the
    Hermitian elements −i·b_j are returned by `hermitian_basis`.

    Attributes:
        dim_space (int): Matrix size n.
        basis (Tuple[CMatrix, ...]): Orthonormal anti-Hermitian elements, in the order added.
        generated_from (Tuple[BasisOrigin, ...]): One origin per element.
        closure_rounds (int): Commutator rounds used, including the final empty one.
        span_tol (float): Relative residual above which a candidate counts as new.
    """

    dim_space: int
    basis: Tuple[CMatrix, ...]
    generated_from: Tuple[BasisOrigin, ...]
    closure_rounds: int
    span_tol: float = SPAN_TOL

    def __repr__(self):
        return (
            f"<LieBasis(n={self.dim_space}, dimension={self.dimension}, "
            f"rounds={self.closure_rounds})>"
        )

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _rows(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, 2 * self.dim_space**2))
        return np.stack([_to_real(b) for b in self.basis])

    def hermitian_basis(self) -> List[CMatrix]:
        return [freeze(-1j * b) for b in self.basis]

    def coefficients(self, X: Any) -> np.ndarray:
        """Real coordinates of the anti-Hermitian matrix X in this basis."""
        return self._rows() @ _to_real(as_cmatrix(X))

    def span_residual(self, X: Any) -> float:
        """
        Max-abs entry of what is left of X after projecting it onto the span.

        X is split into i·(Hermitian part) and its anti-Hermitian part, and the
        larger of the two residuals is returned, so Hermitian operators such as
        Gell-Mann matrices can be tested directly.
        """
        X = as_cmatrix(X)
        if X.shape[0] != self.dim_space:
            raise DimensionError(f"Expected dimension {self.dim_space}, got {X.shape[0]}.")
        rows = self._rows()
        worst = 0.0
        for part in _anti_hermitian_parts(X):
            v = _to_real(part)
            residual = v - rows.T @ (rows @ v)
            worst = max(worst, max_abs(_from_real(residual, self.dim_space)))
        return worst

    def closure_residual(self) -> float:
        """Largest span residual of [b_i, b_j] over all pairs."""
        if self.dimension < 2:
            return 0.0
        n = self.dim_space
        stack = np.stack(self.basis)
        rows = self._rows()
        worst = 0.0
        for i in range(self.dimension - 1):
            others = stack[i + 1 :]
            brackets = stack[i] @ others - others @ stack[i]
            vectors = np.concatenate(
                [brackets.real.reshape(len(others), -1), brackets.imag.reshape(len(others), -1)],
                axis=1,
            )
            residual = vectors - (vectors @ rows.T) @ rows
            complex_residual = residual[:, : n * n] + 1j * residual[:, n * n :]
            worst = max(worst, max_abs(complex_residual))
        return worst


def _su_part(X: CMatrix) -> CMatrix:
    """Anti-Hermitian traceless part of a bracket; the exact bracket has no other."""
    X = (X - X.conj().T) / 2
    n = X.shape[0]
    return X - (np.trace(X) / n) * np.eye(n, dtype=np.complex128)


class _SpanBuilder:
    """
    Blockwise real orthonormalization over anti-Hermitian matrices.

    Each batch is divided by the size of its operands, projected off the
    current span and rank-revealed with a column-pivoted QR. A candidate is new
    only when its pivoted residual exceeds `span_tol` on that operand scale.
    Accepted candidates keep their batch order.
    """

    def __init__(self, n: int, span_tol: float):
        self.n = n
        self.span_tol = span_tol
        self.rows = np.zeros((0, 2 * n * n))
        self.elements: List[CMatrix] = []
        self.origins: List[BasisOrigin] = []

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def _project_out(self, block: np.ndarray) -> np.ndarray:
        # Two passes keep the block orthogonal to the span at working precision.
        for _ in range(2):
            block = block - self.rows.T @ (self.rows @ block)
        return block

    def offer_batch(
        self, candidates: Sequence[Tuple[CMatrix, BasisOrigin, float]]
    ) -> int:
        columns = []
        origins = []
        for X, origin, scale in candidates:
            v = _to_real(X)
            if np.linalg.norm(v) <= self.span_tol * scale:
                continue
            columns.append(v / scale)
            origins.append(origin)
        if not columns:
            return 0

        block = self._project_out(np.stack(columns, axis=1))
        _, R, pivots = scipy.linalg.qr(block, mode="economic", pivoting=True)
        pivot_norms = np.abs(np.diag(R))
        rank = int(np.count_nonzero(pivot_norms > self.span_tol))
        if rank == 0:
            return 0

        chosen = sorted(int(p) for p in pivots[:rank])
        Q, _ = scipy.linalg.qr(block[:, chosen], mode="economic")
        Q, _ = scipy.linalg.qr(self._project_out(Q), mode="economic")
        for column, index in zip(Q.T, chosen):
            self.rows = np.vstack([self.rows, column])
            self.elements.append(freeze(_from_real(column, self.n)))
            self.origins.append(origins[index])
        return rank


def close_algebra(
    generators: Sequence[Any],
    tol: Tolerance = DEFAULT_TOLERANCE,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    labels: Optional[Sequence[str]] = None,
    span_tol: float = SPAN_TOL,
    max_workers: int = 1,
) -> LieBasis:
    """
    Closes the real span of the generators' anti-Hermitian parts under [·,·].

    Breadth-first: round r brackets every element added in round r−1 with
    every element present, offers the results in a fixed order and stops when
    a whole round adds nothing. The output order is (round added, pair order),
    so it is deterministic for a given generator order.

    With max_workers > 1 the brackets of a round are evaluated on a thread
    pool; they are still offered in the sequential order, so the result is
    identical.

    Args:
        generators (Sequence[CMatrix]): Square matrices of a common size.
        tol (Tolerance): Only `abs_tol` is used, as a floor for zero generators.
        max_rounds (int): Commutator rounds allowed, including the final empty one.
        labels (Sequence[str], optional): Names used in provenance; default g0, g1, ...
        span_tol (float): Relative independence threshold.
        max_workers (int): Thread pool size for bracket evaluation.

    Returns:
        LieBasis: The closed orthonormal basis.

    Raises:
        DimensionError: On an empty list or mismatched dimensions.
        DomainError: If max_rounds < 1 or labels do not match generators.
        ClosureNotReached: If max_rounds are exhausted while the span still grows.

    Example:
        >>> family = build_family(2)
        >>> close_algebra([family.a, family.a_dag, family.A]).dimension
        8
    """
    matrices = [as_cmatrix(G) for G in generators]
    if not matrices:
        raise DimensionError("close_algebra needs at least one generator.")
    n = matrices[0].shape[0]
    for G in matrices[1:]:
        if G.shape[0] != n:
            raise DimensionError(f"Dimension mismatch: {n} vs {G.shape[0]}.")
    if max_rounds < 1:
        raise DomainError(f"max_rounds must be >= 1, got {max_rounds}.")
    if labels is None:
        labels = [f"g{i}" for i in range(len(matrices))]
    if len(labels) != len(matrices):
        raise DomainError("labels must match generators one to one.")

    builder = _SpanBuilder(n, span_tol)
    seeds = []
    for label, G in zip(labels, matrices):
        scale = max(max_abs(G), tol.abs_tol)
        i_herm, anti_herm = _anti_hermitian_parts(G)
        seeds.append((i_herm, BasisOrigin(0, f"i*herm({label})"), scale))
        seeds.append((anti_herm, BasisOrigin(0, f"antiherm({label})"), scale))
    builder.offer_batch(seeds)

    frontier = range(0, builder.dimension)
    rounds = 0
    executor = None
    if max_workers > 1:
        executor = ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="pb_closure")
    try:
        while True:
            if rounds >= max_rounds:
                raise ClosureNotReached(builder.dimension, rounds)
            rounds += 1
            fresh = set(frontier)
            pairs = [
                (i, j)
                for i in frontier
                for j in range(builder.dimension)
                if not (j in fresh and j <= i)
            ]
            elements = list(builder.elements)

            def bracket(pair: Tuple[int, int]) -> CMatrix:
                return _su_part(commutator(elements[pair[0]], elements[pair[1]]))

            if executor is not None:
                candidates = list(executor.map(bracket, pairs))
            else:
                candidates = [bracket(pair) for pair in pairs]

            before = builder.dimension
            builder.offer_batch(
                [
                    (candidate, BasisOrigin(rounds, f"[b{i},b{j}]"), 1.0)
                    for (i, j), candidate in zip(pairs, candidates)
                ]
            )
            logger.debug(
                "closure round %d: %d brackets, dimension %d -> %d",
                rounds,
                len(pairs),
                before,
                builder.dimension,
            )
            if builder.dimension == before:
                break
            frontier = range(before, builder.dimension)
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    return LieBasis(
        dim_space=n,
        basis=tuple(builder.elements),
        generated_from=tuple(builder.origins),
        closure_rounds=rounds,
        span_tol=span_tol,
    )


def close_family(family: OscillatorFamily, **kwargs: Any) -> LieBasis:
    """close_algebra over {a, a†, 𝒜} of a family, labelled by generator name."""
    return close_algebra(
        [family.a, family.a_dag, family.A], labels=["a", "a_dag", "A"], **kwargs
    )


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "residual", float(self.residual))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "pass": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class SuCertificate:
    """
    Outcome of `certify_su`.

    Clauses, in check order: "dimension" (n²−1), "traceless", "closure"
    (brackets stay in the span), "hermitian_recombination" (−i·b_j are
    Hermitian traceless generators of the same real algebra) and
    "group_elements" (exp(iH) unitary with unit determinant).
    """

    n: int
    dimension: int
    expected_dimension: int
    clauses: Tuple[Clause, ...]
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses)

    def failed_clauses(self) -> List[str]:
        return [clause.name for clause in self.clauses if not clause.passed]

    def clause(self, name: str) -> Clause:
        for clause in self.clauses:
            if clause.name == name:
                return clause
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "clauses": [clause.to_dict() for clause in self.clauses],
            "notes": list(self.notes),
            "pass": self.passed,
        }


def _group_defect(H: CMatrix) -> float:
    U = matrix_exponential(1j * H)
    return max(unitarity_defect(U), abs(np.linalg.det(U) - 1.0))


def build_certificate(
    basis: LieBasis,
    tol: Tolerance = DEFAULT_TOLERANCE,
    notes: Sequence[str] = (),
    trace_tol: float = TRACE_TOL,
    span_tol: float = SPAN_TOL,
    unitarity_tol: float = UNITARITY_TOL,
) -> SuCertificate:
    """Evaluates every su(n) clause without raising."""
    n = basis.dim_space
    expected = n * n - 1
    hermitian = basis.hermitian_basis()

    clauses = [
        Clause(
            "dimension",
            basis.dimension == expected,
            float(abs(basis.dimension - expected)),
            0.0,
            f"dimension {basis.dimension}, expected {expected}",
        )
    ]

    trace = max((abs(np.trace(b)) for b in basis.basis), default=0.0)
    clauses.append(Clause("traceless", trace <= trace_tol, trace, trace_tol))

    closure = basis.closure_residual()
    clauses.append(Clause("closure", closure <= span_tol, closure, span_tol))

    recombination = max((hermiticity_defect(H) for H in hermitian), default=0.0)
    clauses.append(
        Clause(
            "hermitian_recombination",
            recombination <= tol.bound(1.0),
            recombination,
            tol.bound(1.0),
        )
    )

    combos = list(hermitian)
    if hermitian:
        combos.append(sum(hermitian[1:], hermitian[0]))
    group = max((_group_defect(H) for H in combos), default=0.0)
    clauses.append(Clause("group_elements", group <= unitarity_tol, group, unitarity_tol))

    return SuCertificate(n, basis.dimension, expected, tuple(clauses), tuple(notes))


def certify_su(
    basis: LieBasis,
    tol: Tolerance = DEFAULT_TOLERANCE,
    notes: Sequence[str] = (),
    **clause_tols: float,
) -> SuCertificate:
    """
    Certifies that a closed basis is su(n) for n = basis.dim_space.

    Args:
        basis (LieBasis): Output of close_algebra.
        tol (Tolerance): Hermiticity tolerance for the recombination clause.
        notes (Sequence[str]): Free-form notes carried on the certificate.
        **clause_tols: `trace_tol`, `span_tol` or `unitarity_tol` overrides.

    Returns:
        SuCertificate: Every clause passed.

    Raises:
        CertificationFailure: Names every failed clause; `.certificate` holds the rest.
    """
    certificate = build_certificate(basis, tol, notes, **clause_tols)
    if not certificate.passed:
        logger.warning("su(%d) certification failed: %s", basis.dim_space, certificate.failed_clauses())
        raise CertificationFailure(certificate.failed_clauses(), certificate)
    return certificate


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """
    Real f with [T_a, T_b] = i Σ_c f[a, b, c] T_c.

    Attributes:
        f (np.ndarray): Three-index real array.
        antisymmetric (bool): f[a,b,c] == −f[b,a,c] within ANTISYMMETRY_TOL.
        antisymmetry_residual (float): max |f[a,b,c] + f[b,a,c]|.
        reconstruction_residual (float): max-abs of [T_a,T_b] − iΣ f T_c.
        jacobi_residual (float): max-abs of the cyclic f·f contraction.
        normalization (float): tr(T_a T_b) = normalization·δ_ab.
    """

    f: np.ndarray
    antisymmetric: bool
    antisymmetry_residual: float
    reconstruction_residual: float
    jacobi_residual: float
    normalization: float

    @property
    def dimension(self) -> int:
        return self.f.shape[0]

    def nonzero(self, cutoff: float = 1e-12) -> List[Tuple[int, int, int, float]]:
        """Every (a, b, c, f_abc) with |f_abc| > cutoff, in lexicographic index order."""
        return [
            (int(a), int(b), int(c), float(self.f[a, b, c]))
            for a, b, c in np.argwhere(np.abs(self.f) > cutoff)
        ]


def _jacobi_residual(f: np.ndarray) -> float:
    jacobi = (
        np.einsum("abd,dce->abce", f, f)
        + np.einsum("bcd,dae->abce", f, f)
        + np.einsum("cad,dbe->abce", f, f)
    )
    return max_abs(jacobi)


def structure_constants_from_hermitian(
    matrices: Sequence[Any], rounds: int = 0
) -> StructureConstants:
    """
    f_abc = −i tr([T_a, T_b] T_c) / tr(T_c T_c) for an HS-orthogonal Hermitian basis T.

    Raises:
        DomainError: If the matrices are not pairwise HS-orthogonal.
        ClosureNotReached: If some [T_a, T_b] leaves the span.
    """
    stack = np.stack([require_hermitian(T) for T in matrices])
    gram = np.einsum("aij,bji->ab", stack, stack).real
    norms = np.diag(gram).copy()
    off_diagonal = gram - np.diag(norms)
    if max_abs(off_diagonal) > TRACE_TOL * max(1.0, max_abs(norms)):
        raise DomainError("Structure constants need an HS-orthogonal basis.")

    products = np.einsum("aij,bjk->abik", stack, stack)
    brackets = products - products.transpose(1, 0, 2, 3)
    f = (-1j * np.einsum("abik,cki->abc", brackets, stack) / norms[None, None, :]).real

    rebuilt = 1j * np.einsum("abc,cij->abij", f, stack)
    reconstruction = max_abs(brackets - rebuilt)
    if reconstruction > SPAN_TOL:
        raise ClosureNotReached(
            len(matrices),
            rounds,
            f"Basis is not closed: bracket reconstruction residual {reconstruction:.3e}.",
        )
    antisymmetry = max_abs(f + f.transpose(1, 0, 2))
    f.setflags(write=False)
    return StructureConstants(
        f=f,
        antisymmetric=antisymmetry <= ANTISYMMETRY_TOL,
        antisymmetry_residual=antisymmetry,
        reconstruction_residual=reconstruction,
        jacobi_residual=_jacobi_residual(f),
        normalization=float(norms.mean()) if norms.size else 0.0,
    )


def structure_constants(basis: LieBasis, normalization: float = 0.5) -> StructureConstants:
    """
    Structure constants of a closed basis, with T_a scaled so tr(T_a T_b) = normalization·δ_ab.

    The default 0.5 is the Pauli/2 and Gell-Mann/2 convention, under which an
    su(2) basis gives ±ε_abc.

    Raises:
        ClosureNotReached: If the basis is not closed.
    """
    if not normalization > 0:
        raise DomainError(f"normalization must be positive, got {normalization!r}.")
    scale = math.sqrt(normalization)
    return structure_constants_from_hermitian(
        [scale * H for H in basis.hermitian_basis()], rounds=basis.closure_rounds
    )


def gellmann_from_family(family: OscillatorFamily) -> List[CMatrix]:
    """
    The eight Gell-Mann matrices written in terms of the s=2 generators.

        λ₁ = a + a† + √2(ℳ + ℳ†)          λ₂ = i[a† − a + √2(ℳ† − ℳ)]
        λ₃ = 𝒜 + 2𝒦                       λ₄ = ℱ + ℱ†
        λ₅ = i(ℱ† − ℱ)                    λ₆ = −(ℳ + ℳ†)
        λ₇ = −i(ℳ† − ℳ)                   λ₈ = 𝒜/√3

    See LAMBDA8_NOTE for λ₈.

    Raises:
        DomainError: If family.s != 2 or the ladder is missing.
    """
    if family.s != 2 or not family.has_ladder:
        raise DomainError(f"Gell-Mann reconstruction needs the s=2 ladder, got s={family.s}.")
    a, a_dag, A = family.a, family.a_dag, family.A
    M, M_dag, K = family.derived["M"], family.derived["M_dag"], family.derived["K"]
    F, F_dag = family.derived["F"], family.derived["F_dag"]
    root2 = math.sqrt(2)
    lambdas = [
        a + a_dag + root2 * (M + M_dag),
        1j * (a_dag - a + root2 * (M_dag - M)),
        A + 2 * K,
        F + F_dag,
        1j * (F_dag - F),
        -(M + M_dag),
        -1j * (M_dag - M),
        A / math.sqrt(3),
    ]
    return [freeze(lam) for lam in lambdas]


def generalized_gellmann(n: int) -> List[CMatrix]:
    """
    The n²−1 generalized Gell-Mann matrices.

    Order: symmetric E_jk + E_kj for j < k, then antisymmetric −i(E_jk − E_kj)
    for j < k, then diagonal √(2/(l(l+1)))·diag(1, ..., 1, −l, 0, ...) for
    l = 1..n−1. All are Hermitian and traceless with tr(Λ_a Λ_b) = 2δ_ab; at
    n=2 they are the Pauli matrices.

    Raises:
        DomainError: If n < 2.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise DomainError(f"Generalized Gell-Mann matrices need n >= 2, got {n!r}.")
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    out: List[CMatrix] = []
    for j, k in pairs:
        sym = np.zeros((n, n), dtype=np.complex128)
        sym[j, k] = sym[k, j] = 1
        out.append(freeze(sym))
    for j, k in pairs:
        anti = np.zeros((n, n), dtype=np.complex128)
        anti[j, k] = -1j
        anti[k, j] = 1j
        out.append(freeze(anti))
    for level in range(1, n):
        diagonal = np.zeros(n, dtype=np.complex128)
        diagonal[:level] = 1
        diagonal[level] = -level
        out.append(freeze(math.sqrt(2 / (level * (level + 1))) * np.diag(diagonal)))
    return out


def projection_rank(
    first: Sequence[Any], second: Sequence[Any], span_tol: float = SPAN_TOL
) -> int:
    """Rank of the real HS-overlap matrix Re tr(X_i† Y_j) between two Hermitian sets."""
    left = np.stack([as_cmatrix(X) for X in first])
    right = np.stack([as_cmatrix(Y) for Y in second])
    overlap = np.einsum("aij,bij->ab", left.conj(), right).real
    if overlap.size == 0:
        return 0
    return int(np.linalg.matrix_rank(overlap, tol=span_tol * max(1.0, max_abs(overlap))))


def group_element(hermitian_combo: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> CMatrix:
    """
    U = exp(i𝒢) for Hermitian traceless 𝒢, checked to be special unitary.

    Since det U = exp(tr(i𝒢)), tracelessness gives det U = 1.

    Raises:
        HermiticityError: If 𝒢 is not Hermitian within `tol`.
        TraceError: If |tr 𝒢| exceeds `tol` at the scale of 𝒢.
        NumericError: If U†U ≠ I or det U ≠ 1 within UNITARITY_TOL.
    """
    G = require_hermitian(hermitian_combo, tol)
    trace = np.trace(G)
    if abs(trace) > tol.bound(max_abs(G) * G.shape[0]):
        raise TraceError(trace)
    U = matrix_exponential(1j * G)
    unitarity = unitarity_defect(U)
    determinant = np.linalg.det(U)
    if unitarity > UNITARITY_TOL or abs(determinant - 1.0) > UNITARITY_TOL:
        raise NumericError(
            f"exp(iG) is not special unitary: |U†U − I| = {unitarity:.3e}, det U = {determinant}."
        )
    return U


def random_algebra_element(
    basis: LieBasis, rng: np.random.Generator, scale: float = 1.0
) -> CMatrix:
    """A Hermitian traceless combination Σ c_j H_j with c_j ~ N(0, scale²)."""
    coefficients = rng.normal(0.0, scale, size=basis.dimension)
    G = np.zeros((basis.dim_space, basis.dim_space), dtype=np.complex128)
    for c, H in zip(coefficients, basis.hermitian_basis()):
        G += c * H
    return (G + G.conj().T) / 2
