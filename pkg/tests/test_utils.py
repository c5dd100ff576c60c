"""
Tests for deep_close, the tolerance-aware comparison used on decoded payloads.
"""

import numpy as np

from pb_oscillator.utils import deep_close


def test_scalars_within_tolerance():
    assert deep_close(1.0, 1.0 + 1e-15)
    assert not deep_close(1.0, 1.0 + 1e-6)
    assert deep_close(1 + 2j, complex(1, 2 + 1e-14))


def test_bool_is_not_a_number():
    assert deep_close(True, True)
    assert not deep_close(True, 1.0)
    assert not deep_close(0, False)


def test_nested_collections():
    left = {"s": 2, "generators": {"a": [[[0.0, 0.0], [1.0, 0.0]]]}}
    right = {"s": 2, "generators": {"a": [[[0.0, 0.0], [1.0 + 1e-14, 0.0]]]}}
    assert deep_close(left, right)
    assert not deep_close(left, {"s": 2})
    assert not deep_close([1, [2, 3]], [1, [2, 4]])


def test_tuple_and_list_compare_equal():
    assert deep_close(("M", "M_dag"), ["M", "M_dag"])


def test_arrays_against_nested_lists():
    X = np.array([[1, 2j], [0, 1]])
    assert deep_close(X, [[1, 2j], [0, 1]])
    assert not deep_close(X, np.eye(3))


def test_strings_and_none():
    assert deep_close("full", "full")
    assert not deep_close("full", "window")
    assert deep_close(None, None)
