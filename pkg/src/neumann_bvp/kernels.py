"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Backend selection, once at import time:

    NEUMANN_BVP_BACKEND=numba   force numba (ImportError if unavailable)
    NEUMANN_BVP_BACKEND=numpy   force the vectorized numpy path
    unset / auto                numba when importable, else numpy
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["KIND_SIN", "KIND_COS", "osc_weighted_sum", "active_backend",
           "osc_weighted_sum_numpy", "make_numba_kernel"]

KIND_SIN = 0
KIND_COS = 1


def osc_weighted_sum_numpy(kind: int, omega: float, c: float,
                           nodes: np.ndarray, weights: np.ndarray,
                           gvals: np.ndarray) -> float:
    """sum_i w_i * trig(omega*(c - s_i)) * g_i, trig = sin or cos per kind."""
    phase = omega * (c - nodes)
    kern = np.sin(phase) if kind == KIND_SIN else np.cos(phase)
    return float(np.dot(weights * kern, gvals))


def make_numba_kernel():
    from numba import njit

    @njit(cache=True)
    def osc_weighted_sum_numba(kind, omega, c, nodes, weights, gvals):
        acc = 0.0
        if kind == KIND_SIN:
            for i in range(nodes.shape[0]):
                acc += weights[i] * np.sin(omega * (c - nodes[i])) * gvals[i]
        else:
            for i in range(nodes.shape[0]):
                acc += weights[i] * np.cos(omega * (c - nodes[i])) * gvals[i]
        return acc

    return osc_weighted_sum_numba


def _select():
    choice = os.environ.get("NEUMANN_BVP_BACKEND", "auto").lower()
    if choice == "numpy":
        return "numpy", osc_weighted_sum_numpy
    if choice == "numba":
        return "numba", make_numba_kernel()
    if choice == "auto":
        try:
            return "numba", make_numba_kernel()
        except ImportError:
            return "numpy", osc_weighted_sum_numpy
    raise ValueError(f"NEUMANN_BVP_BACKEND must be numba|numpy|auto, got {choice!r}")


_BACKEND_NAME, osc_weighted_sum = _select()


def active_backend() -> str:
    return _BACKEND_NAME
