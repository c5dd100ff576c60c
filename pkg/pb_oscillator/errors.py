from typing import Any, Optional, Sequence


class PBOscillatorError(Exception):
    """Base class for every error raised by pb_oscillator."""


class DimensionError(PBOscillatorError, ValueError):
    """Operands are not square or do not share a dimension."""


class DomainError(PBOscillatorError, ValueError):
    """A parameter lies outside the domain of the requested construction."""


class LadderNotApplicable(DomainError):
    """
    Raised when the derived ladder is requested at s=1.

    The su(2) case closes on {a, a†, 𝒜} alone, so there is nothing to derive.
    """


class HermiticityError(PBOscillatorError, ValueError):
    """
    A matrix that must be Hermitian is not.

    Attributes:
        asymmetry (float): max-abs entry of X − X†.
    """

    def __init__(self, asymmetry: float, message: Optional[str] = None):
        self.asymmetry = float(asymmetry)
        super().__init__(
            message or f"Matrix is not Hermitian (max asymmetry {self.asymmetry:.3e})."
        )


class TraceError(PBOscillatorError, ValueError):
    """A matrix that must be traceless is not."""

    def __init__(self, trace: complex, message: Optional[str] = None):
        self.trace = complex(trace)
        super().__init__(message or f"Matrix is not traceless (trace {self.trace}).")


class NumericError(PBOscillatorError, ArithmeticError):
    """Non-finite entries, or a numerical postcondition that did not hold."""


class NormalizationError(PBOscillatorError, ValueError):
    """A state vector that must have unit norm does not."""

    def __init__(self, norm: float, message: Optional[str] = None):
        self.norm = float(norm)
        super().__init__(
            message or f"State is not normalized (norm {self.norm:.15g})."
        )


class ClosureNotReached(PBOscillatorError, RuntimeError):
    """
    Lie closure did not converge, or a basis is not closed under the bracket.

    Attributes:
        dimension (int): Dimension of the span when the engine gave up.
        rounds (int): Commutator rounds performed.
    """

    def __init__(self, dimension: int, rounds: int, message: Optional[str] = None):
        self.dimension = int(dimension)
        self.rounds = int(rounds)
        super().__init__(
            message
            or f"Closure not reached after {self.rounds} rounds (dimension {self.dimension})."
        )


class CertificationFailure(PBOscillatorError):
    """
    One or more su(n) certificate clauses failed.

    Attributes:
        clauses (Sequence[str]): Names of the failed clauses, in check order.
        certificate (Any): The full certificate, so callers can still report it.
    """

    def __init__(self, clauses: Sequence[str], certificate: Any):
        self.clauses = tuple(clauses)
        self.certificate = certificate
        super().__init__(f"su(n) certification failed: {', '.join(self.clauses)}")
