"""Command-line front end: transforms, matrix dumps, ODE solves, benchmarks.

Vector files hold one decimal value per line; blank lines and lines
starting with '#' are ignored.  Every command prints a JSON run report
to stdout and is deterministic given its flags (the sampled backend
refuses to run without an explicit --seed).

Exit codes: 0 success, 2 usage error, 3 numeric/divergence error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .calculus import differentiation_matrix, integration_matrix
from .errors import DivergenceError, ExprError, ExprEvalError, ResourceLimitError
from .expr import evaluate, parse
from .hybrid import HybridConfig, classical_side_opcount, hybrid_wht
from .quantum import DEFAULT_SEED
from .solver import (
    IVProblem,
    SolverConfig,
    analytic_reference,
    builtin_problem,
    picard_solve,
)
from .transform import OpCount, fwht, iwht, wht_naive
from .walsh import MAX_TABLE_QUBITS, character_table

#: Environment override for the table-materialization cap (qubit count).
MAX_QUBITS_ENV = "WALSHODE_MAX_QUBITS"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class UsageError(ValueError):
    """Bad flags or malformed input content."""


@dataclass
class RunReport:
    command: list[str]
    backend: str | None = None
    n: int | None = None
    iterations: int | None = None
    elapsed_s: float = 0.0
    op_counts: dict | None = None
    outputs: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "backend": self.backend,
            "n": self.n,
            "iterations": self.iterations,
            "elapsed_s": self.elapsed_s,
            "op_counts": self.op_counts,
            "outputs": self.outputs,
        }
        doc.update(self.extra)
        return json.dumps(doc, indent=2, sort_keys=True)


def _max_qubits() -> int:
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return MAX_TABLE_QUBITS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}")


def read_vector(path: str) -> np.ndarray:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise UsageError(f"{path}:{lineno}: not a number: {text!r}")
    if not values:
        raise UsageError(f"{path}: no values found")
    return np.array(values)


def write_vector(path: str, values: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for value in values:
            fh.write(f"{float(value)!r}\n")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{cell!r}" if isinstance(cell, float) else str(cell) for cell in row) + "\n")


def _hybrid_config(args, mode: str) -> HybridConfig:
    if mode == "sampled":
        if args.shots is None:
            raise UsageError("backend hybrid-sampled requires --shots")
        if args.seed is None:
            raise UsageError("backend hybrid-sampled requires --seed")
        return HybridConfig(
            epsilon=args.epsilon, mode="sampled", shots=args.shots, seed=args.seed
        )
    return HybridConfig(epsilon=args.epsilon, mode="exact")


def cmd_transform(args) -> int:
    v = read_vector(args.input)
    count = OpCount()
    started = time.perf_counter()
    if args.backend == "naive":
        out = wht_naive(v, count)
    elif args.backend == "fast":
        out = iwht(v, count) if args.inverse else fwht(v, count)
    else:
        mode = "sampled" if args.backend == "hybrid-sampled" else "exact"
        out, _ = hybrid_wht(v, _hybrid_config(args, mode), count)
    elapsed = time.perf_counter() - started
    write_vector(args.output, out)
    report = RunReport(
        command=args._echo,
        backend=args.backend,
        n=v.size.bit_length() - 1,
        elapsed_s=elapsed,
        op_counts=count.as_dict(),
        outputs=[args.output],
        extra={"inverse": bool(args.inverse), "length": int(v.size)},
    )
    print(report.to_json())
    return EXIT_OK


def cmd_table(args) -> int:
    cap = _max_qubits()
    if args.n > cap:
        raise ResourceLimitError(
            f"n={args.n} exceeds the cap of {cap} (override with {MAX_QUBITS_ENV})"
        )
    N = 1 << args.n
    if args.kind == "character":
        matrix = character_table(args.n, max_qubits=cap).astype(float)
    elif args.kind == "integration":
        matrix = integration_matrix(N).entries
    else:
        matrix = differentiation_matrix(N).entries
    lines = [",".join(repr(float(x)) for x in row) for row in matrix]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _problem_from_args(args) -> tuple[IVProblem, str | None]:
    domain = (args.domain[0], args.domain[1])
    if args.problem:
        problem = builtin_problem(args.problem, n=args.n)
        problem.domain = domain
        return problem, args.problem
    if not args.rhs:
        raise UsageError("provide either --problem or at least one --rhs")
    if args.init is None or len(args.init) != len(args.rhs):
        raise UsageError("--init must supply one value per --rhs expression")
    m = len(args.rhs)
    exprs = [parse(src, m) for src in args.rhs]
    rhs = [
        (lambda x, t, _e=e: evaluate(_e, x, t))
        for e in exprs
    ]
    return IVProblem(m=m, rhs=rhs, initial=list(args.init), domain=domain, n=args.n), None


def cmd_solve(args) -> int:
    if args.backend == "hybrid-sampled":
        if args.shots is None:
            raise UsageError("backend hybrid-sampled requires --shots")
        if args.seed is None:
            raise UsageError("backend hybrid-sampled requires --seed")
    problem, known_name = _problem_from_args(args)
    config = SolverConfig(
        n_max=args.nmax,
        tol=args.tol,
        backend=args.backend,
        epsilon=args.epsilon,
        shots=args.shots,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )
    started = time.perf_counter()
    solution, trace = picard_solve(problem, config)
    elapsed = time.perf_counter() - started

    os.makedirs(args.output_dir, exist_ok=True)
    t = solution[0].midpoints
    # Analytic references anchor their initial condition at t=0.
    has_reference = known_name is not None and problem.domain[0] == 0.0
    reference = analytic_reference(known_name, t) if has_reference else None
    outputs = []
    for i, sf in enumerate(solution, start=1):
        path = os.path.join(args.output_dir, f"x{i}.csv")
        if reference is not None:
            header = ["t", f"x{i}", "analytic", "error"]
            rows = [
                (float(t[s]), float(sf.values[s]), float(reference[i - 1][s]),
                 float(sf.values[s] - reference[i - 1][s]))
                for s in range(t.size)
            ]
        else:
            header = ["t", f"x{i}"]
            rows = [(float(t[s]), float(sf.values[s])) for s in range(t.size)]
        _write_csv(path, header, rows)
        outputs.append(path)

    if args.trace:
        path = os.path.join(args.output_dir, "trace.csv")
        rows = []
        for sweep, snapshot in enumerate(trace.snapshots, start=1):
            for i, x in enumerate(snapshot, start=1):
                for s in range(x.size):
                    rows.append((sweep, f"x{i}", s, float(t[s]), float(x[s])))
        _write_csv(path, ["iteration", "variable", "sample", "t", "value"], rows)
        outputs.append(path)

    report = RunReport(
        command=args._echo,
        backend=args.backend,
        n=problem.n,
        iterations=trace.iterations_run,
        elapsed_s=elapsed,
        outputs=outputs,
        extra={
            "converged": trace.converged,
            "final_residual": trace.final_residual,
            "problem": known_name or "custom",
        },
    )
    print(report.to_json())
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise UsageError(f"--repeats must be >= 1, got {args.repeats}")
    rows = []
    for N in args.sizes:
        if N < 2 or N & (N - 1):
            raise UsageError(f"sizes must be powers of two >= 2, got {N}")
        rng = np.random.default_rng(0)
        v = rng.standard_normal(N)
        for backend in args.backends:
            best = None
            count = OpCount()
            for _ in range(args.repeats):
                count = OpCount()
                started = time.perf_counter()
                if backend == "fast":
                    fwht(v, count)
                elif backend == "naive":
                    wht_naive(v, count)
                else:
                    count = classical_side_opcount(N)
                elapsed = time.perf_counter() - started
                best = elapsed if best is None else min(best, elapsed)
            rows.append(
                (N, backend, count.additions, count.multiplications,
                 count.square_roots, best)
            )
    header = ["N", "backend", "additions", "multiplications", "square_roots",
              "wall_time_s"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walshode",
        description="Walsh-Hadamard transforms, operational matrices and a "
        "Picard ODE solver.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("transform", help="transform a vector file")
    p.add_argument("input", help="vector file, one value per line")
    p.add_argument("-o", "--output", required=True, help="output vector file")
    p.add_argument(
        "--backend",
        choices=["naive", "fast", "hybrid-exact", "hybrid-sampled"],
        default="fast",
    )
    p.add_argument("--inverse", action="store_true",
                   help="apply the inverse transform (same map: involution)")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("table", help="dump a matrix as CSV")
    p.add_argument("--kind", choices=["character", "integration", "differentiation"],
                   required=True)
    p.add_argument("--n", type=int, required=True, help="qubit count (size 2^n)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("solve", help="solve an initial-value problem")
    spec = p.add_mutually_exclusive_group()
    spec.add_argument("--problem", choices=["riccati", "beer_system"], default=None)
    spec.add_argument("--rhs", action="append", default=None,
                      help="right-hand side over t, x1..xm; repeat per variable. "
                      "Grammar: + - * / ^ (right-assoc), unary -, sin cos tan exp "
                      "log sqrt abs, parentheses; no implicit multiplication")
    p.add_argument("--init", type=float, nargs="+", default=None,
                   help="initial values, one per --rhs")
    p.add_argument("--n", type=int, default=2, help="resolution exponent (N=2^n)")
    p.add_argument("--nmax", type=int, default=10, help="maximum Picard sweeps")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument(
        "--backend",
        choices=["classical", "hybrid-exact", "hybrid-sampled"],
        default="classical",
    )
    p.add_argument("--domain", type=float, nargs=2, default=[0.0, 1.0],
                   metavar=("LO", "HI"))
    p.add_argument("--trace", action="store_true",
                   help="also write every iteration to trace.csv")
    p.add_argument("--output-dir", default=".")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="operation-count and timing table")
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--backends", nargs="+", default=["fast", "hybrid"],
                   choices=["fast", "naive", "hybrid"])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._echo = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except (UsageError, ExprError, ResourceLimitError, ValueError) as exc:
        print(f"walshode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DivergenceError, ExprEvalError, FloatingPointError) as exc:
        print(f"walshode: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"walshode: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
