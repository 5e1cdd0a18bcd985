import numpy as np
import pytest

from qisflow import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so timed tests measure the flow, not the JIT."""
    x = np.array([0.6, 0.4])
    c = np.array([1.0, -2.0])
    _kernels.advance_simplex(x, c, 1e-3, 2, 1e-14)
    _kernels.advance_matrix(np.diag(x).astype(np.complex128), c, 1e-3, 2, 1e-14)
