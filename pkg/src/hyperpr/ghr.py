"""Finite-difference generalised HR (GHR) derivatives.

This module exists to validate closed-form quaternion gradients, not to drive
the solvers.  For ``x = a + b i + c j + d k`` and a unit-free rotation
``q^mu = mu q mu^-1`` the left GHR derivative of a real function is

    df/dx^mu   = (f_a - f_b i^mu - f_c j^mu - f_d k^mu) / 4
    df/dx^mu*  = (f_a + f_b i^mu + f_c j^mu + f_d k^mu) / 4

where ``f_a, ...`` are real partial derivatives.  The printed definition
repeats ``f_c`` in the last term; ``f_d`` is used here.
"""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .algebra import AlgebraError, hinv, hmul

_UNITS = np.eye(4)


def rotated_units(mu) -> np.ndarray:
    """``(1, i^mu, j^mu, k^mu)`` as a ``(4, 4)`` coefficient array."""
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (4,):
        raise AlgebraError("GHR rotations are defined for a single quaternion mu")
    if not np.any(mu):
        raise ZeroDivisionError("mu must be non-zero")
    return hmul(hmul(mu, _UNITS), hinv(mu))


def real_gradient(f: Callable[[np.ndarray], float], x, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of ``f`` over every real coordinate of ``x``."""
    x = np.array(x, dtype=float)
    g = np.zeros_like(x)
    flat, gflat = x.reshape(-1), g.reshape(-1)
    for i in range(flat.size):
        old = flat[i]
        flat[i] = old + h
        fp = f(x)
        flat[i] = old - h
        fm = f(x)
        flat[i] = old
        gflat[i] = (fp - fm) / (2 * h)
    return g


def ghr_derivative(
    f: Callable[[np.ndarray], float], x, mu=(1.0, 0.0, 0.0, 0.0), conjugate: bool = False, h: float = 1e-6
) -> np.ndarray:
    """GHR derivative of a real function of a quaternion vector ``x`` (``(n, 4)``).

    Returns an ``(n, 4)`` array holding ``df/dx_j^mu`` (or ``df/dx_j^mu*``
    when ``conjugate``) for every entry.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != 4:
        raise AlgebraError("GHR derivatives need an (n, 4) quaternion vector")
    partial = real_gradient(f, x, h)  # (n, 4): f_a, f_b, f_c, f_d per entry
    units = rotated_units(mu)
    sgn = np.array([1.0, 1.0, 1.0, 1.0]) if conjugate else np.array([1.0, -1.0, -1.0, -1.0])
    return 0.25 * np.einsum("nu,u,uk->nk", partial, sgn, units)


def quaternion_gradient(f, x, mu=(1.0, 0.0, 0.0, 0.0), h: float = 1e-6) -> np.ndarray:
    """Column gradient of a real function: the transposed row of ``df/dx^mu*``."""
    return ghr_derivative(f, x, mu, conjugate=True, h=h)
