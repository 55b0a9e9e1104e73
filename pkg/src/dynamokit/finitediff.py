"""Second-order finite differences on uniformly spaced samples."""

from __future__ import annotations

import numpy as np

__all__ = ["derivative_uniform", "second_derivative_uniform"]


def derivative_uniform(f, h: float) -> np.ndarray:
    """First derivative: central interior, one-sided 3-point at the ends (all O(h^2))."""
    f = np.asarray(f, dtype=float)
    if f.size < 3:
        raise ValueError("need at least 3 samples")
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return out


def second_derivative_uniform(f, h: float) -> np.ndarray:
    """Second derivative: central interior, one-sided 4-point at the ends (all O(h^2))."""
    f = np.asarray(f, dtype=float)
    if f.size < 4:
        raise ValueError("need at least 4 samples")
    h2 = h * h
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h2
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / h2
    return out
