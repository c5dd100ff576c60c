import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from pb_oscillator.linalg import CMatrix, as_cmatrix, max_abs

logger = logging.getLogger(__name__)

Getter = Callable[[str], CMatrix]
ResidualFn = Callable[[Getter], Any]

FULL = "full"
WINDOW = "window"


@dataclass(frozen=True)
class RelationResult:
    """
    Outcome of one named relation.

    Attributes:
        name (str): Relation key, e.g. "[K,F]=-F".
        residual (float): max-abs entry of LHS − RHS (compressed for window scope).
        tolerance (float): Declared tolerance for this relation.
        scope (str): "full" or "window".
    """

    name: str
    residual: float
    tolerance: float
    scope: str = FULL

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "scope": self.scope,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class RelationReport:
    """An ordered collection of relation results plus free-form notes."""

    results: Tuple[RelationResult, ...]
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.results), default=0.0)

    def failures(self) -> List[RelationResult]:
        return [result for result in self.results if not result.passed]

    def __getitem__(self, name: str) -> RelationResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(result.name == name for result in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relations": [result.to_dict() for result in self.results],
            "notes": dict(self.notes),
            "pass": self.passed,
        }


class RelationSet:
    """
    A registry of named operators and of relations among them.

    Operators play the role of stored values and relations the role of derived
    ones: each relation is a function that receives `get(name)` and returns
    the residual matrix LHS − RHS. Evaluating the set turns every residual
    into a max-abs number and compares it with the relation's tolerance.

    Example:
        rel = RelationSet({"K": K, "F": F}, tolerance=1e-12)

        @rel.relation("[K,F]=-F")
        def k_f(get):
            return commutator(get("K"), get("F")) + get("F")

        report = rel.evaluate()

    Attributes:
        _operators (Dict[str, CMatrix]): Registered operators.
        _relations (Dict[str, Tuple]): Residual function, scope and tolerance by key.
        _projector (Optional[CMatrix]): Two-sided compression used by "window" scope.
    """

    def __init__(
        self,
        operators: Optional[Mapping[str, Any]] = None,
        tolerance: float = 1e-12,
        projector: Optional[Any] = None,
    ):
        self._operators: Dict[str, CMatrix] = {}
        self._relations: Dict[str, Tuple[ResidualFn, str, float]] = {}
        self._notes: Dict[str, Any] = {}
        self._tolerance = float(tolerance)
        self._projector = None if projector is None else as_cmatrix(projector)
        for key, value in (operators or {}).items():
            self.operator(key, value)

    def __repr__(self):
        return f"<RelationSet(operators={list(self._operators)}, relations={list(self._relations)})>"

    def operator(self, key: str, value: Optional[Any] = None) -> CMatrix:
        """
        Returns the operator for a key, registering `value` first if given.

        Raises:
            ValueError: If the key is already used by a relation.
        """
        if key in self._relations:
            raise ValueError(f"Key '{key}' is already registered as a relation.")
        if value is not None:
            self._operators[key] = as_cmatrix(value)
        return self.get(key)

    def get(self, key: str) -> CMatrix:
        try:
            return self._operators[key]
        except KeyError:
            raise KeyError(f"Unknown operator '{key}'.") from None

    def has(self, key: str) -> bool:
        return key in self._operators or key in self._relations

    def add_relation(
        self,
        key: str,
        residual_fn: ResidualFn,
        scope: str = FULL,
        tolerance: Optional[float] = None,
    ) -> None:
        """
        Registers a relation.

        Args:
            key (str): Unique relation name.
            residual_fn (Callable): Receives `get` and returns LHS − RHS.
            scope (str): "full" or "window"; window needs a projector.
            tolerance (float, optional): Overrides the set's default tolerance.

        Raises:
            ValueError: If the key is taken or the scope cannot be evaluated.
        """
        if key in self._operators:
            raise ValueError(f"Key '{key}' is already registered as an operator.")
        if key in self._relations:
            raise ValueError(f"Relation '{key}' is already registered.")
        if scope not in (FULL, WINDOW):
            raise ValueError(f"Unknown relation scope '{scope}'.")
        if scope == WINDOW and self._projector is None:
            raise ValueError(f"Relation '{key}' needs a projector for window scope.")
        self._relations[key] = (
            residual_fn,
            scope,
            self._tolerance if tolerance is None else float(tolerance),
        )

    def relation(self, key: str, scope: str = FULL, tolerance: Optional[float] = None):
        """
        Decorator form of `add_relation`.

        Example:
            @rel.relation("Q^2=0", tolerance=0.0)
            def nilpotent(get):
                return get("Q") @ get("Q")
        """

        def decorator(func: ResidualFn) -> ResidualFn:
            self.add_relation(key, func, scope, tolerance)
            return func

        return decorator

    def note(self, key: str, value: Any) -> None:
        """Attaches a non-asserted observation (e.g. a measured coefficient) to the report."""
        self._notes[key] = value

    def residual(self, key: str) -> float:
        residual_fn, scope, _ = self._relations[key]
        matrix = np.asarray(residual_fn(self.get), dtype=np.complex128)
        if scope == WINDOW:
            matrix = self._projector @ matrix @ self._projector
        return max_abs(matrix)

    def evaluate(self) -> RelationReport:
        results = []
        for key, (_, scope, tolerance) in self._relations.items():
            result = RelationResult(key, self.residual(key), tolerance, scope)
            if not result.passed:
                logger.warning(
                    "Relation %s failed: residual %.3e > %.3e (%s)",
                    key,
                    result.residual,
                    tolerance,
                    scope,
                )
            results.append(result)
        return RelationReport(tuple(results), dict(self._notes))
