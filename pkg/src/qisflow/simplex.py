"""The classical projective-scaling flow on the open simplex and its embedding
into the diagonal submanifold of the density-matrix manifold."""

from __future__ import annotations

import numpy as np

from .errors import ContractError
from .gradient import cost_vector
from .qis_core import d_metric

SUM_TOL = 1e-12


def check_simplex_point(x) -> np.ndarray:
    """Validate a point of the open simplex: positive entries summing to 1."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ContractError(f"simplex point must be 1-d, got shape {x.shape}")
    if abs(x.sum() - 1.0) > SUM_TOL:
        raise ContractError("simplex point entries must sum to 1")
    if np.any(x <= 0.0):
        raise ContractError("simplex point entries must be strictly positive")
    return x


def check_simplex_tangent(u) -> np.ndarray:
    """Validate a simplex tangent: entries summing to 0."""
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1:
        raise ContractError(f"simplex tangent must be 1-d, got shape {u.shape}")
    if abs(u.sum()) > SUM_TOL:
        raise ContractError("simplex tangent entries must sum to 0")
    return u


def _same_len(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape} vs {b.shape}")


def simplex_metric(x, u, u2) -> float:
    """Fisher-type simplex metric: sum_j u_j u'_j / x_j."""
    x = check_simplex_point(x)
    u = check_simplex_tangent(u)
    u2 = check_simplex_tangent(u2)
    _same_len(x, u)
    _same_len(x, u2)
    return float(np.sum(u * u2 / x))


def potential_kappa(x, c) -> float:
    """Quadratic cost potential x^T C x / 2 on the simplex."""
    x = np.asarray(x, dtype=np.float64)
    c = cost_vector(c)
    _same_len(x, c)
    return 0.5 * float(np.sum(c * x * x))


def grad_kappa(x, c) -> np.ndarray:
    """Metric gradient of kappa: component j is c_j x_j^2 - x_j sum_k c_k x_k^2."""
    x = np.asarray(x, dtype=np.float64)
    c = cost_vector(c)
    _same_len(x, c)
    cx2 = c * x * x
    return cx2 - x * cx2.sum()


def karmarkar_field(x, c) -> np.ndarray:
    """Continuous projective-scaling field: dx_j/dt = -c_j x_j^2 + x_j sum_k c_k x_k^2."""
    return -grad_kappa(x, c)


def embed_mu(x) -> np.ndarray:
    """Embed a simplex point as the diagonal density matrix diag(x)."""
    x = check_simplex_point(x)
    return np.diag(x).astype(np.complex128)


def pushforward_mu(u) -> np.ndarray:
    """Differential of the embedding: diag(u), a traceless diagonal tangent."""
    u = check_simplex_tangent(u)
    return np.diag(u).astype(np.complex128)


def check_isometry(x, u, u2) -> tuple[float, float]:
    """Return (embedded metric of the pushforwards, simplex metric); the caller
    asserts equality of the two."""
    embedded = d_metric(embed_mu(x), pushforward_mu(u), pushforward_mu(u2))
    return embedded, simplex_metric(x, u, u2)
