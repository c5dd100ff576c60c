"""
Truncated Pegg-Barnett oscillator operators and their commutator ladder.

At cutoff s the number-state space is {|0>, ..., |s>} and

    a_mn  = sqrt(n)   δ_{m,n-1}
    a†_mn = sqrt(n+1) δ_{m,n+1}
    𝒜_mn  = δ_mn − (s+1) δ_ms δ_ns

so that [a, a†] = 𝒜 replaces the Bosonic [a, a†] = 1.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

from pb_oscillator.errors import DomainError, LadderNotApplicable
from pb_oscillator.linalg import (
    CMatrix,
    anticommutator,
    commutator,
    freeze,
    hs_inner,
    identity,
    max_abs,
)
from pb_oscillator.relations import RelationReport, RelationSet

# Canonical generator order, also the key order of the JSON family schema.
GENERATOR_NAMES: Tuple[str, ...] = ("a", "a_dag", "A", "M", "M_dag", "K", "F", "F_dag")
LADDER_NAMES: Tuple[str, ...] = GENERATOR_NAMES[3:]

LADDER_TOL = 1e-12

PAULI = {
    "sigma_1": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "sigma_2": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "sigma_3": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class Provenance:
    """
    How a derived generator was obtained: bracket = coefficient * generator.

    Attributes:
        name (str): Generator name, e.g. "M".
        bracket (Tuple[str, str]): The commutator [left, right] that produced it.
        coefficient (float): Scalar c with [left, right] = c * generator.
    """

    name: str
    bracket: Tuple[str, str]
    coefficient: float

    @property
    def formula(self) -> str:
        left, right = self.bracket
        return f"[{left},{right}] = {self.coefficient:.15g} * {self.name}"

    def to_dict(self) -> Dict[str, object]:
        return {
            "bracket": list(self.bracket),
            "coefficient": self.coefficient,
            "formula": self.formula,
        }


@dataclass(frozen=True, eq=False)
class OscillatorFamily:
    """
    The generator set of the P-B oscillator at cutoff s.

    `derived` holds the ladder generators ℳ, ℳ†, 𝒦, ℱ, ℱ† (empty at s=1,
    where {a, a†, 𝒜} already close). The number operator N̂ = a†a is not a
    generator of the algebra (it has a trace) and is exposed separately as
    `number_operator`, also reachable as `generator("N")`.

    All matrices are read-only.
    """

    s: int
    a: CMatrix
    a_dag: CMatrix
    A: CMatrix
    derived: Mapping[str, CMatrix] = field(default_factory=dict)
    provenance: Mapping[str, Provenance] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.s + 1

    @property
    def number_operator(self) -> CMatrix:
        return freeze(np.diag(np.arange(self.dim, dtype=np.complex128)))

    @property
    def has_ladder(self) -> bool:
        return bool(self.derived)

    def generator(self, name: str) -> CMatrix:
        if name == "N":
            return self.number_operator
        base = {"a": self.a, "a_dag": self.a_dag, "A": self.A}
        if name in base:
            return base[name]
        try:
            return self.derived[name]
        except KeyError:
            raise KeyError(f"Family at s={self.s} has no generator '{name}'.") from None

    def generators(self) -> Dict[str, CMatrix]:
        """All algebra generators in canonical order."""
        out = {"a": self.a, "a_dag": self.a_dag, "A": self.A}
        out.update((name, self.derived[name]) for name in LADDER_NAMES if name in self.derived)
        return out

    def __repr__(self):
        return f"<OscillatorFamily(s={self.s}, generators={list(self.generators())})>"


def require_cutoff(s: int) -> int:
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 1:
        raise DomainError(f"Cutoff s must be a positive integer, got {s!r}.")
    return int(s)


def annihilation_operator(s: int) -> CMatrix:
    """
    The truncated annihilation operator a on {|0>, ..., |s>}.

    Args:
        s (int): Maximum occupation number (s >= 1).

    Returns:
        CMatrix: (s+1)×(s+1) matrix with a[n-1, n] = sqrt(n).

    Raises:
        DomainError: If s < 1.
    """
    s = require_cutoff(s)
    return np.diag(np.sqrt(np.arange(1, s + 1, dtype=np.float64)), k=1).astype(np.complex128)


def build_family(s: int) -> OscillatorFamily:
    """
    Builds a, a†, 𝒜 at cutoff s and, for s >= 2, the derived ladder.

    Args:
        s (int): Maximum occupation number.

    Returns:
        OscillatorFamily: The generator family.

    Raises:
        DomainError: If s < 1.

    Example:
        >>> family = build_family(2)
        >>> family.A.real.diagonal().tolist()
        [1.0, 1.0, -2.0]
    """
    s = require_cutoff(s)
    a = annihilation_operator(s)
    A = identity(s + 1)
    A[s, s] -= s + 1
    family = OscillatorFamily(s=s, a=freeze(a), a_dag=freeze(a.conj().T), A=freeze(A))
    if s == 1:
        return family
    return derive_ladder(family)


def derive_ladder(family: OscillatorFamily) -> OscillatorFamily:
    """
    Populates ℳ, ℳ†, 𝒦, ℱ, ℱ† from the commutator ladder.

        ℳ  =  [a, 𝒜]  / ((s+1)√s)        ℳ† = −[a†, 𝒜] / ((s+1)√s)
        𝒦  = −[ℳ, ℳ†]
        ℱ  = −[a, ℳ]  / √(s−1)           ℱ† =  [a†, ℳ†] / √(s−1)

    Scalar prefactors live in the provenance records, so ℳ carries the single
    entry −1 at (s−1, s).

    Raises:
        LadderNotApplicable: At s=1.
    """
    s = family.s
    if s < 2:
        raise LadderNotApplicable(
            "The s=1 family closes as su(2) on {a, a†, 𝒜}; no ladder generators exist."
        )
    a, a_dag, A = family.a, family.a_dag, family.A
    c_m = (s + 1) * math.sqrt(s)
    c_f = math.sqrt(s - 1)

    M = commutator(a, A) / c_m
    M_dag = -commutator(a_dag, A) / c_m
    K = -commutator(M, M_dag)
    F = -commutator(a, M) / c_f
    F_dag = commutator(a_dag, M_dag) / c_f

    derived = {
        "M": freeze(M),
        "M_dag": freeze(M_dag),
        "K": freeze(K),
        "F": freeze(F),
        "F_dag": freeze(F_dag),
    }
    provenance = {
        "M": Provenance("M", ("a", "A"), c_m),
        "M_dag": Provenance("M_dag", ("a_dag", "A"), -c_m),
        "K": Provenance("K", ("M", "M_dag"), -1.0),
        "F": Provenance("F", ("a", "M"), -c_f),
        "F_dag": Provenance("F_dag", ("a_dag", "M_dag"), c_f),
    }
    return OscillatorFamily(
        s=s, a=family.a, a_dag=family.a_dag, A=family.A, derived=derived, provenance=provenance
    )


def observed_coefficient(X: CMatrix, target: CMatrix) -> complex:
    """Coefficient of the HS projection of X onto `target`."""
    return hs_inner(target, X) / hs_inner(target, target)


def check_ladder_relations(
    family: OscillatorFamily, tolerance: float = LADDER_TOL
) -> RelationReport:
    """
    Residuals of the displayed commutator relations among the ladder generators.

    The general-s relations hold for every s >= 2; the s=2-only lines
    [a†,ℳ] = −√2 𝒦 and [a,ℳ†] = √2 𝒦 are asserted at s=2 only. For every s
    the observed coefficients of [a†,ℳ] and [a,ℳ†] along 𝒦 are attached as
    notes rather than asserted.

    Args:
        family (OscillatorFamily): Family with the derived ladder.
        tolerance (float): Max residual per relation.

    Returns:
        RelationReport: One entry per relation, plus coefficient notes.

    Raises:
        LadderNotApplicable: If the family has no ladder (s=1).
    """
    if not family.has_ladder:
        raise LadderNotApplicable("check_ladder_relations needs the derived ladder (s >= 2).")
    s = family.s
    c_m = (s + 1) * math.sqrt(s)
    c_f = math.sqrt(s - 1)
    rel = RelationSet(family.generators(), tolerance=tolerance)

    rel.add_relation("[a,a_dag]=A", lambda get: commutator(get("a"), get("a_dag")) - get("A"))
    rel.add_relation(
        "[a,A]=(s+1)sqrt(s)M", lambda get: commutator(get("a"), get("A")) - c_m * get("M")
    )
    rel.add_relation(
        "[a_dag,A]=-(s+1)sqrt(s)M_dag",
        lambda get: commutator(get("a_dag"), get("A")) + c_m * get("M_dag"),
    )
    rel.add_relation("[M,M_dag]=-K", lambda get: commutator(get("M"), get("M_dag")) + get("K"))
    rel.add_relation(
        "[A,M]=(1+s)M", lambda get: commutator(get("A"), get("M")) - (1 + s) * get("M")
    )
    rel.add_relation(
        "[A,M_dag]=-(1+s)M_dag",
        lambda get: commutator(get("A"), get("M_dag")) + (1 + s) * get("M_dag"),
    )
    rel.add_relation(
        "[a,M]=-sqrt(s-1)F", lambda get: commutator(get("a"), get("M")) + c_f * get("F")
    )
    rel.add_relation(
        "[a_dag,M_dag]=sqrt(s-1)F_dag",
        lambda get: commutator(get("a_dag"), get("M_dag")) - c_f * get("F_dag"),
    )
    rel.add_relation("[K,F]=-F", lambda get: commutator(get("K"), get("F")) + get("F"))
    rel.add_relation(
        "[K,F_dag]=F_dag", lambda get: commutator(get("K"), get("F_dag")) - get("F_dag")
    )
    rel.add_relation("[M,K]=2M", lambda get: commutator(get("M"), get("K")) - 2 * get("M"))
    rel.add_relation(
        "[M_dag,K]=-2M_dag", lambda get: commutator(get("M_dag"), get("K")) + 2 * get("M_dag")
    )
    if s == 2:
        root2 = math.sqrt(2)
        rel.add_relation(
            "[a_dag,M]=-sqrt(2)K",
            lambda get: commutator(get("a_dag"), get("M")) + root2 * get("K"),
        )
        rel.add_relation(
            "[a,M_dag]=sqrt(2)K",
            lambda get: commutator(get("a"), get("M_dag")) - root2 * get("K"),
        )

    K = family.derived["K"]
    rel.note(
        "coefficient [a_dag,M] along K",
        observed_coefficient(commutator(family.a_dag, family.derived["M"]), K).real,
    )
    rel.note(
        "coefficient [a,M_dag] along K",
        observed_coefficient(commutator(family.a, family.derived["M_dag"]), K).real,
    )
    return rel.evaluate()


def check_su2_relations(
    family: OscillatorFamily, tolerance: float = LADDER_TOL
) -> RelationReport:
    """
    The s=1 identities: a = (σ₁+iσ₂)/2, a† = (σ₁−iσ₂)/2, 𝒜 = σ₃ and the
    Fermionic aa† + a†a = 𝕀, plus the sl(2) brackets [𝒜,a] = 2a, [𝒜,a†] = −2a†.

    Raises:
        DomainError: If family.s != 1.
    """
    if family.s != 1:
        raise DomainError(f"check_su2_relations needs s=1, got s={family.s}.")
    operators = dict(family.generators())
    operators.update(PAULI)
    operators["I"] = identity(2)
    rel = RelationSet(operators, tolerance=tolerance)
    rel.add_relation(
        "a=(sigma_1+i*sigma_2)/2",
        lambda get: get("a") - (get("sigma_1") + 1j * get("sigma_2")) / 2,
    )
    rel.add_relation(
        "a_dag=(sigma_1-i*sigma_2)/2",
        lambda get: get("a_dag") - (get("sigma_1") - 1j * get("sigma_2")) / 2,
    )
    rel.add_relation("A=sigma_3", lambda get: get("A") - get("sigma_3"))
    rel.add_relation(
        "{a,a_dag}=I", lambda get: anticommutator(get("a"), get("a_dag")) - get("I")
    )
    rel.add_relation("[A,a]=2a", lambda get: commutator(get("A"), get("a")) - 2 * get("a"))
    rel.add_relation(
        "[A,a_dag]=-2a_dag", lambda get: commutator(get("A"), get("a_dag")) + 2 * get("a_dag")
    )
    return rel.evaluate()


@dataclass(frozen=True)
class LimitRow:
    s: int
    window: int
    A_residual: float
    derived_residual: float

    @property
    def passed(self) -> bool:
        return bool(self.A_residual == 0.0 and self.derived_residual == 0.0)


@dataclass(frozen=True)
class LimitReport:
    """Bosonic-limit residuals on a fixed top-left window, one row per cutoff."""

    rows: Tuple[LimitRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def bosonic_limit_report(s_list: Iterable[int], window: int) -> LimitReport:
    """
    Shows 𝒜 → 𝕀 and derived generators → 0 on any fixed window as s grows.

    For each s, reports the max-abs entry of (𝒜 − 𝕀) and of every derived
    generator restricted to the top-left window×window block. Both are
    exactly zero whenever window < s, since every correction lives at the top
    states s−2..s.

    Raises:
        DomainError: If window < 1, s_list is empty, or window >= min(s_list).
    """
    cutoffs: List[int] = [require_cutoff(s) for s in s_list]
    if not cutoffs:
        raise DomainError("bosonic_limit_report needs at least one cutoff.")
    if isinstance(window, bool) or not isinstance(window, (int, np.integer)) or window < 1:
        raise DomainError(f"Window must be a positive integer, got {window!r}.")
    if window >= min(cutoffs):
        raise DomainError(f"Window {window} must be smaller than every cutoff (min {min(cutoffs)}).")

    rows = []
    for s in cutoffs:
        family = build_family(s)
        block = slice(0, window)
        a_residual = max_abs((family.A - identity(family.dim))[block, block])
        derived_residual = max(
            (max_abs(G[block, block]) for G in family.derived.values()), default=0.0
        )
        rows.append(LimitRow(s, int(window), a_residual, derived_residual))
    return LimitReport(tuple(rows))


def oscillator_hamiltonian(family: OscillatorFamily, omega: float) -> CMatrix:
    """
    H = ½{a, a†}ω.

    At s=1 this is ½ω𝕀 (the Fermionic case). For n < s the number states are
    eigenstates with energy ω(n + ½); the top state |s> has energy ωs/2.

    Raises:
        DomainError: If omega <= 0.
    """
    if not omega > 0:
        raise DomainError(f"Mode frequency must be positive, got {omega!r}.")
    return 0.5 * omega * anticommutator(family.a, family.a_dag)


def traceless_defect(family: OscillatorFamily) -> float:
    """Largest |tr G| over the family's generators."""
    return float(max(abs(np.trace(G)) for G in family.generators().values()))
