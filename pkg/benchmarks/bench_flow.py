"""Compare the numba and pure-numpy integration backends.

Runs the same matrix/simplex flow in two subprocesses (one per backend) and
reports wall time per integration, compile time excluded by a warmup run.

Usage: python benchmarks/bench_flow.py [--m 8] [--steps 20000] [--repeat 3]
"""

import argparse
import os
import subprocess
import sys

SNIPPET = """
import time
import numpy as np
import qisflow
from qisflow import _kernels

m = {m}
steps = {steps}
rng = np.random.default_rng(7)
c = rng.uniform(-4.0, 4.0, m)
c[np.abs(c) < 0.5] = 0.5
x0 = rng.dirichlet(np.ones(m))
rho0 = np.diag(x0).astype(np.complex128)

# warmup (includes numba compilation when enabled)
_kernels.advance_simplex(x0, c, 1e-3, 10, 1e-14)
_kernels.advance_matrix(rho0, c, 1e-3, 10, 1e-14)

best_s = min(
    _timed(_kernels.advance_simplex, x0, c, 1e-3, steps) for _ in range({repeat})
)
best_m = min(
    _timed(_kernels.advance_matrix, rho0, c, 1e-3, steps) for _ in range({repeat})
)
print(f"{{_kernels.BACKEND}}: simplex {{best_s:.3f}}s  matrix {{best_m:.3f}}s "
      f"({{steps}} steps, m={{m}})")
"""

TIMED = """
def _timed(fn, state, c, h, steps):
    t0 = time.perf_counter()
    fn(state, c, h, steps, 1e-14)
    return time.perf_counter() - t0
"""


def run(backend_env, args):
    env = dict(os.environ, **backend_env)
    code = TIMED + SNIPPET.format(m=args.m, steps=args.steps, repeat=args.repeat)
    subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    run({"QISFLOW_PURE_NUMPY": "1"}, args)
    run({"QISFLOW_PURE_NUMPY": "0"}, args)


if __name__ == "__main__":
    main()
