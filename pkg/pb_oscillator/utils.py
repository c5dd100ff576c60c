import numbers
from typing import Any

import numpy as np


def deep_close(a: Any, b: Any, atol: float = 1e-12) -> bool:
    """
    Performs a deep, tolerance-aware comparison between two values.

    Used to compare decoded report and family payloads with the objects they
    were written from, where floats may pick up representation error and
    matrices arrive as nested lists.

    Handles:
    - Exact types (str, bool, int, None), compared with ==
    - Real and complex scalars, compared within `atol`
    - numpy arrays, compared entrywise within `atol` (shapes must agree)
    - Collections (dict, list, tuple), compared recursively

    Args:
        a (Any): First value to compare.
        b (Any): Second value to compare.
        atol (float): Absolute tolerance for numeric leaves.

    Returns:
        bool: True if values are deeply equal within `atol`, False otherwise.

    Examples:
        >>> deep_close({"a": [1.0, 2.0]}, {"a": [1.0, 2.0 + 1e-15]})
        True
        >>> deep_close([1, [2, 3]], [1, [2, 4]])
        False
    """
    if a is b:
        return True

    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        try:
            left = np.asarray(a, dtype=np.complex128)
            right = np.asarray(b, dtype=np.complex128)
        except (TypeError, ValueError):
            return False
        if left.shape != right.shape:
            return False
        return bool(np.all(np.abs(left - right) <= atol))

    # bool is an int subclass but True must not equal 1.0 here
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b

    if isinstance(a, numbers.Number) and isinstance(b, numbers.Number):
        return abs(complex(a) - complex(b)) <= atol

    if isinstance(a, dict):
        if not isinstance(b, dict) or a.keys() != b.keys():
            return False
        return all(deep_close(a[key], b[key], atol) for key in a)

    if isinstance(a, (list, tuple)):
        if not isinstance(b, (list, tuple)) or len(a) != len(b):
            return False
        return all(deep_close(x, y, atol) for x, y in zip(a, b))

    try:
        return bool(a == b)
    except Exception:
        return False
