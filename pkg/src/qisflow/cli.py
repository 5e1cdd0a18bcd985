"""Command-line front end.

Subcommands: ``solve-lp`` (run the flow on a cost problem and report the
reached vertex), ``flow`` (full matrix-flow run with commutator diagnostics),
``verify`` (randomized identity suites).  Exit codes: 0 success, 1 validation
or parse failure, 2 numeric failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .errors import ContractError, NumericError, QisflowError
from .integrate import IntegrationParams, integrate_matrix, integrate_simplex, nearest_vertex
from .problem_io import initial_density, initial_simplex, load_problem, write_trajectory
from .verify import run_suite

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2
EXIT_VERIFY = 3


def _add_run_args(sub):
    sub.add_argument("problem", help="YAML problem file")
    sub.add_argument("-o", "--output", required=True, help="trajectory output path")
    sub.add_argument("--format", choices=("csv", "structured"), default="csv")
    sub.add_argument("--step", type=float)
    sub.add_argument("--t-max", type=float)
    sub.add_argument("--grad-tol", type=float)
    sub.add_argument("--boundary-floor", type=float)
    sub.add_argument("--record-every", type=int)
    sub.add_argument("--seed", type=int, help="seed for random initial states")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qisflow",
        description="Gradient flows on the density-matrix manifold and the simplex.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    lp = subs.add_parser("solve-lp", help="run the flow toward the cost-minimizing vertex")
    _add_run_args(lp)
    lp.add_argument("--simplex", action="store_true",
                    help="integrate the classical simplex flow instead of the matrix flow")

    fl = subs.add_parser("flow", help="full matrix-flow run from an arbitrary initial state")
    _add_run_args(fl)

    ver = subs.add_parser("verify", help="run a randomized identity suite")
    ver.add_argument("suite",
                     help="one of: metric, isometry, gradient, lift, all")
    ver.add_argument("--seed", type=int)
    ver.add_argument("--count", type=int)
    return parser


def _env_seed() -> int | None:
    raw = os.environ.get("QISFLOW_SEED")
    return int(raw) if raw else None


def _resolve_params(problem, args) -> IntegrationParams:
    p = problem.params
    fields = {
        "step": args.step,
        "t_max": args.t_max,
        "grad_tol": args.grad_tol,
        "boundary_floor": args.boundary_floor,
        "record_every": args.record_every,
    }
    kwargs = {
        name: (override if override is not None else getattr(p, name))
        for name, override in fields.items()
    }
    return IntegrationParams(**kwargs)


def _seed_override(args) -> int | None:
    return args.seed if args.seed is not None else _env_seed()


def cmd_solve_lp(args) -> int:
    problem = load_problem(args.problem)
    params = _resolve_params(problem, args)
    seed = _seed_override(args)
    if args.simplex:
        traj = integrate_simplex(initial_simplex(problem, seed), problem.c, params)
        final = np.asarray(traj.final_state)
        diag = final
        kind = "simplex"
    else:
        traj = integrate_matrix(initial_density(problem, seed), problem.c, params)
        final = traj.final_state
        diag = np.diag(final).real
        kind = "matrix"
    write_trajectory(args.output, traj, kind, fmt=args.format)

    vertex = nearest_vertex(final)
    print(f"vertex: {vertex + 1}")
    print(f"vertex_objective: {float(problem.c[vertex])!r}")
    print(f"final_objective: {float(np.dot(problem.c, diag))!r}")
    print(f"stop_reason: {traj.stop_reason}")
    print(f"t_final: {traj.times[-1]!r}")
    print(f"records: {len(traj.times)}")
    return EXIT_OK


def cmd_flow(args) -> int:
    problem = load_problem(args.problem)
    params = _resolve_params(problem, args)
    traj = integrate_matrix(
        initial_density(problem, _seed_override(args)), problem.c, params
    )
    rho0 = traj.states[0]
    comm = [
        float(np.linalg.norm(rho @ rho0 - rho0 @ rho)) for rho in traj.states
    ]
    write_trajectory(args.output, traj, "matrix", fmt=args.format,
                     extra=("commutator_norm", comm))
    print(f"stop_reason: {traj.stop_reason}")
    print(f"t_final: {traj.times[-1]!r}")
    print(f"final_potential: {traj.potential_values[-1]!r}")
    print(f"records: {len(traj.times)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else (_env_seed() or 0)
    results = run_suite(args.suite, seed, args.count)
    ok = True
    for res in results:
        status = "pass" if res.passed else "FAIL"
        print(f"{res.label}: max_error={res.max_error:.3e} "
              f"tolerance={res.tolerance:.1e} {status}")
        ok = ok and res.passed
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"solve-lp": cmd_solve_lp, "flow": cmd_flow, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QisflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
