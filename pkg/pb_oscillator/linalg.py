"""Dense complex matrix primitives shared by every other module."""

import math
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from pb_oscillator.errors import DimensionError, HermiticityError, NumericError

CMatrix = npt.NDArray[np.complex128]

# Components below this magnitude are skipped when fixing eigenvector phases.
PHASE_FIX_CUTOFF = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """
    Absolute and relative tolerance used for every tolerance-parameterized check.

    A check against a quantity of size `scale` passes when the residual is at
    most `abs_tol + rel_tol * scale` (see `bound`).

    Attributes:
        abs_tol (float): Absolute floor (default 1e-12).
        rel_tol (float): Relative part, multiplied by the scale of the operands.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-9

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"Tolerance.{name} must be finite and >= 0, got {value!r}.")

    def bound(self, scale: float = 0.0) -> float:
        return self.abs_tol + self.rel_tol * abs(scale)


DEFAULT_TOLERANCE = Tolerance()


class EigenSystem(NamedTuple):
    """Ascending real eigenvalues and the matching orthonormal eigenvector columns."""

    values: npt.NDArray[np.float64]
    vectors: CMatrix


def as_cmatrix(X: Any) -> CMatrix:
    """
    Converts `X` to a square complex128 array.

    Raises:
        DimensionError: If `X` is not a non-empty square 2-D array.
    """
    arr = np.asarray(X, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"Expected a non-empty square matrix, got shape {arr.shape}.")
    return arr


def _pair(X: Any, Y: Any):
    X, Y = as_cmatrix(X), as_cmatrix(Y)
    if X.shape != Y.shape:
        raise DimensionError(f"Dimension mismatch: {X.shape[0]} vs {Y.shape[0]}.")
    return X, Y


def identity(n: int) -> CMatrix:
    return np.eye(n, dtype=np.complex128)


def dagger(X: Any) -> CMatrix:
    return as_cmatrix(X).conj().T


def max_abs(X: Any) -> float:
    """Max-abs entry norm, the matrix norm used for every tolerance in this package."""
    arr = np.asarray(X)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def matrices_close(X: Any, Y: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Tolerance-parameterized equality: max-abs entry difference within `tol`.

    Args:
        X (CMatrix): First matrix.
        Y (CMatrix): Second matrix.
        tol (Tolerance): Scale is the larger max-abs entry of the two operands.

    Returns:
        bool: True if every entry agrees within the bound.
    """
    X, Y = _pair(X, Y)
    return max_abs(X - Y) <= tol.bound(max(max_abs(X), max_abs(Y)))


def commutator(X: Any, Y: Any) -> CMatrix:
    """
    Returns [X, Y] = XY − YX.

    Raises:
        DimensionError: If X and Y differ in dimension.
    """
    X, Y = _pair(X, Y)
    return X @ Y - Y @ X


def anticommutator(X: Any, Y: Any) -> CMatrix:
    """
    Returns {X, Y} = XY + YX.

    Raises:
        DimensionError: If X and Y differ in dimension.
    """
    X, Y = _pair(X, Y)
    return X @ Y + Y @ X


def hs_inner(X: Any, Y: Any) -> complex:
    """
    Hilbert-Schmidt inner product tr(X†Y).

    Conjugate-linear in X, so hs_inner(X, Y) == conj(hs_inner(Y, X)).

    Raises:
        DimensionError: If X and Y differ in dimension.
    """
    X, Y = _pair(X, Y)
    return complex(np.vdot(X, Y))


def hermiticity_defect(X: Any) -> float:
    X = as_cmatrix(X)
    return max_abs(X - X.conj().T)


def is_hermitian(X: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    X = as_cmatrix(X)
    return hermiticity_defect(X) <= tol.bound(max_abs(X))


def require_hermitian(X: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> CMatrix:
    """
    Returns `X` as a CMatrix, or raises if it is not Hermitian within `tol`.

    Raises:
        HermiticityError: Carries the max asymmetry |X − X†|.
    """
    X = as_cmatrix(X)
    defect = hermiticity_defect(X)
    if defect > tol.bound(max_abs(X)):
        raise HermiticityError(defect)
    return X


def unitarity_defect(U: Any) -> float:
    U = as_cmatrix(U)
    return max_abs(U.conj().T @ U - identity(U.shape[0]))


def hermitian_eigensystem(X: Any, tol: Tolerance = DEFAULT_TOLERANCE) -> EigenSystem:
    """
    Deterministic Hermitian eigendecomposition.

    Eigenvalues come back ascending. Each eigenvector column is rescaled so its
    first component with magnitude above PHASE_FIX_CUTOFF is real and positive,
    which makes repeated runs produce identical output.

    Args:
        X (CMatrix): Hermitian matrix.
        tol (Tolerance): Hermiticity tolerance.

    Returns:
        EigenSystem: (values, vectors) with X @ vectors[:, i] == values[i] * vectors[:, i].

    Raises:
        HermiticityError: If X is not Hermitian within `tol`.
    """
    X = require_hermitian(X, tol)
    values, vectors = scipy.linalg.eigh((X + X.conj().T) / 2)
    vectors = np.array(vectors, dtype=np.complex128)
    for col in range(vectors.shape[1]):
        column = vectors[:, col]
        pivot = np.flatnonzero(np.abs(column) > PHASE_FIX_CUTOFF)
        if pivot.size:
            lead = column[pivot[0]]
            vectors[:, col] = column * (abs(lead) / lead)
    return EigenSystem(np.asarray(values, dtype=np.float64), vectors)


def matrix_exponential(X: Any) -> CMatrix:
    """
    exp(X) by scaling and squaring (scipy.linalg.expm).

    Raises:
        NumericError: If X has non-finite entries.
    """
    X = as_cmatrix(X)
    if not np.all(np.isfinite(X)):
        raise NumericError("matrix_exponential received non-finite entries.")
    return np.asarray(scipy.linalg.expm(X), dtype=np.complex128)


def block_diagonal(*blocks: Any) -> CMatrix:
    return np.asarray(scipy.linalg.block_diag(*blocks), dtype=np.complex128)


def embed_blocks(top_right: Any, bottom_left: Any) -> CMatrix:
    """2D×2D matrix with the given D×D off-diagonal blocks and zero diagonal blocks."""
    top_right, bottom_left = _pair(top_right, bottom_left)
    D = top_right.shape[0]
    out = np.zeros((2 * D, 2 * D), dtype=np.complex128)
    out[:D, D:] = top_right
    out[D:, :D] = bottom_left
    return out


def freeze(X: Any) -> CMatrix:
    """Returns a read-only complex copy, used for matrices held by immutable records."""
    arr = np.array(X, dtype=np.complex128)
    arr.setflags(write=False)
    return arr
