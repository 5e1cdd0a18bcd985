"""Hot integration kernels.

Compiled with numba when available; setting QISFLOW_PURE_NUMPY=1 selects the
pure-numpy fallback (the same source, undecorated).  Step status codes:
0 = completed all steps, 1 = boundary floor crossed, 2 = non-finite values.
"""

from __future__ import annotations

import os

import numpy as np

STATUS_OK = 0
STATUS_BOUNDARY = 1
STATUS_NONFINITE = 2

_USE_NUMBA = os.environ.get("QISFLOW_PURE_NUMPY", "0") != "1"
if _USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _USE_NUMBA = False

BACKEND = "numba" if _USE_NUMBA else "numpy"


def _maybe_jit(fn):
    if _USE_NUMBA:
        return njit(cache=True)(fn)
    return fn


@_maybe_jit
def simplex_rhs(x, c):
    cx2 = c * x * x
    return -cx2 + x * np.sum(cx2)


@_maybe_jit
def matrix_rhs(rho, c):
    r2 = rho @ rho
    rcr = rho @ (c.reshape(-1, 1) * rho)
    tr = np.trace(rcr).real
    grad = 0.25 * (r2 * c + 2.0 * rcr + c.reshape(-1, 1) * r2) - tr * rho
    return -grad


@_maybe_jit
def advance_simplex(x, c, h, nsteps, floor):
    for i in range(nsteps):
        k1 = simplex_rhs(x, c)
        k2 = simplex_rhs(x + 0.5 * h * k1, c)
        k3 = simplex_rhs(x + 0.5 * h * k2, c)
        k4 = simplex_rhs(x + h * k3, c)
        xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(xn).all():
            return x, i, STATUS_NONFINITE
        s = np.sum(xn)
        if s <= 0.0:
            return x, i, STATUS_NONFINITE
        xn = xn / s
        if np.min(xn) < floor:
            return xn, i + 1, STATUS_BOUNDARY
        x = xn
    return x, nsteps, STATUS_OK


@_maybe_jit
def advance_matrix(rho, c, h, nsteps, floor):
    for i in range(nsteps):
        k1 = matrix_rhs(rho, c)
        k2 = matrix_rhs(rho + 0.5 * h * k1, c)
        k3 = matrix_rhs(rho + 0.5 * h * k2, c)
        k4 = matrix_rhs(rho + h * k3, c)
        rn = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not (np.isfinite(rn.real).all() and np.isfinite(rn.imag).all()):
            return rho, i, STATUS_NONFINITE
        rn = 0.5 * (rn + np.conj(rn.T))
        tr = np.trace(rn).real
        if tr <= 0.0:
            return rho, i, STATUS_NONFINITE
        rn = rn / tr
        w = np.linalg.eigvalsh(rn)
        if w[0] < floor:
            return rn, i + 1, STATUS_BOUNDARY
        rho = rn
    return rho, nsteps, STATUS_OK
