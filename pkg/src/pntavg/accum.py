"""Compensated (Neumaier) summation helpers.

Prefix sums of the error series are differenced later, so the running
sums must stay accurate to a few ulps regardless of length.  Plain
np.cumsum loses that; Kahan drops low-order bits when the increment
exceeds the running sum, Neumaier's variant does not.
"""

from __future__ import annotations

import numpy as np


def neumaier_sum(values) -> float:
    """Sum of an iterable of floats with Neumaier compensation."""
    s = 0.0
    c = 0.0
    for x in values:
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def neumaier_prefix_sum(values: np.ndarray) -> np.ndarray:
    """Running compensated sums: out[i] = sum(values[: i + 1])."""
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    s = 0.0
    c = 0.0
    for i, x in enumerate(values):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return out
