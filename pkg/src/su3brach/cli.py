"""``su3brach`` command line.

Exit codes: 0 ok, 1 usage or input error, 2 non-resonant problem rejected
by ``--require-periodic``, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import degeneracy as dg
from .classify import char_poly_invariants
from .floquet import u1f_closed, u2f_closed, y_isometry
from .io import plot_script, write_trajectory
from .ledger import DEFAULT_SEED, LedgerConfig, run_all
from .linalg import dagger, matrix_from_json, matrix_to_json
from .oracle import DEFAULT_STEPS, SampledGenerator, numeric_trajectory
from .problem import CONVENTIONS, BrachistochroneProblem, constraint, hamiltonian_at
from .propagators import (
    NotResonant,
    frame_transport,
    horizon,
    resonance,
    schrodinger_propagator,
)
from .su4 import Su4Problem, embedded_hamiltonian, su4_constraint, su4_ode_check

EXIT_OK, EXIT_USAGE, EXIT_NONRESONANT, EXIT_VERIFY = 0, 1, 2, 3
METHODS = ("closed", "oracle", "frame", "floquet")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_problem_args(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("problem")
    g.add_argument("--problem", metavar="JSON", help="read the problem from a JSON file")
    g.add_argument("--k", type=float, default=None, help="field rotation rate (default 1)")
    g.add_argument("--theta", type=float, default=None, help="phase angle (radians unless --degrees)")
    g.add_argument("--R", default=None, help="field amplitude or 'auto' for sqrt(3) k")
    g.add_argument("--convention", choices=CONVENTIONS, default=None,
                   help="phase of the constraint's corner entry")
    g.add_argument("--degrees", action="store_true", help="read angles in degrees")


def _angle(x: float, args) -> float:
    return math.radians(x) if args.degrees else x


def _problem(args) -> BrachistochroneProblem:
    """Problem from ``--problem`` JSON, then individual flags on top."""
    raw = {"k": 1.0}
    if args.problem:
        try:
            raw = json.loads(Path(args.problem).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read problem file: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError("problem JSON must be an object")
        raw = dict(raw)
    if args.k is not None:
        raw["k"] = args.k
    if args.theta is not None:
        raw["theta"] = _angle(args.theta, args)
    if args.R is not None:
        raw["R"] = args.R if args.R == "auto" else float(args.R)
    if args.convention is not None:
        raw["convention"] = args.convention
    return BrachistochroneProblem.from_json(raw)


def _emit_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SU3_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"SU3_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def cmd_solve(args) -> int:
    p = _problem(args)
    out = {"problem": p.to_json(), "delta": p.delta}
    try:
        ratio = resonance(p)
        out.update(resonant=True, m=ratio.m, n=ratio.n, T0=2 * math.pi * ratio.n / p.k)
    except NotResonant as exc:
        if args.require_periodic:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NONRESONANT
        out.update(resonant=False, m=None, n=None, T0=None)
    _emit_json(out, args.out)
    return EXIT_OK


def _trajectory(p: BrachistochroneProblem, times: np.ndarray, method: str, steps: int) -> np.ndarray:
    if method == "closed":
        return np.array([schrodinger_propagator(p, t) for t in times])
    if method == "frame":
        return np.array([frame_transport(p, t, 0.0) for t in times])
    if method == "floquet":
        y = y_isometry(p.theta)
        return np.array([dagger(y) @ u1f_closed(p, t) @ u2f_closed(p, t) @ y for t in times])
    g = SampledGenerator(lambda s: hamiltonian_at(p, s), float(times[0]), float(times[-1]))
    return numeric_trajectory(g, times, steps)


def cmd_propagate(args) -> int:
    p = _problem(args)
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    t_end = horizon(p) if args.t_end is None else args.t_end
    if not t_end > 0:
        raise UsageError("--t-end must be positive")
    times = np.linspace(0.0, t_end, args.samples)
    mats = _trajectory(p, times, args.method, args.steps)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_trajectory(fh, times, mats)
    else:
        write_trajectory(sys.stdout, times, mats)
    if args.emit_plot:
        if not args.out:
            raise UsageError("--emit-plot needs --out so the script can reference the CSV")
        Path(args.emit_plot).write_text(plot_script(args.out, f"U(t), method={args.method}"))
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _problem(args)
    prefixes = tuple(c.strip() for item in args.claims for c in item.split(",") if c.strip())
    cfg = LedgerConfig(seed=_seed(args), oracle_steps=args.steps, tol_scale=args.tol_scale,
                       claims=prefixes)
    report = run_all(p, cfg)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.table())
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_classify(args) -> int:
    if args.file is not None:
        try:
            text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read matrix file: {exc}") from exc
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        h = matrix_from_json(obj)
    else:
        h = hamiltonian_at(_problem(args), args.t)
    _emit_json(char_poly_invariants(h).to_json(), args.out)
    return EXIT_OK


GATES = ("dft", "dft-swap", "lx", "ly", "lz", "l2", "xq", "xj", "xd",
         "rq1", "rq2", "rq3", "rj1", "rj2", "rj3", "rd1", "rd2", "rd3",
         "y", "hamiltonian", "constraint", "propagator", "frame")


def cmd_gates(args) -> int:
    which = args.which
    p = _problem(args)
    sigma = _angle(args.sigma, args)
    if which == "dft":
        m = dg.qutrit_dft()
    elif which == "dft-swap":
        m = dg.dft_swap_gate()
    elif which in ("lx", "ly", "lz"):
        m = dg.angular_momentum()["xyz".index(which[1])]
    elif which == "l2":
        m = dg.l_squared()
    elif which in ("xq", "xj", "xd"):
        m = dg.solution_matrix(which[1].upper(), args.t, p.theta)
    elif which.startswith("r"):
        m = dg.rotation(dg.RotationFamily(which[1].upper(), int(which[2])), sigma, p.theta)
    elif which == "y":
        m = y_isometry(p.theta)
    elif which == "hamiltonian":
        m = hamiltonian_at(p, args.t)
    elif which == "constraint":
        m = constraint(p)
    elif which == "propagator":
        m = schrodinger_propagator(p, args.t)
    else:
        m = frame_transport(p, args.t, 0.0)
    _emit_json({"which": which, "matrix": matrix_to_json(m)}, args.out)
    return EXIT_OK


def cmd_su4(args) -> int:
    if args.demo:
        p4 = Su4Problem.demo()
    else:
        p4 = Su4Problem.random(np.random.default_rng(_seed(args)))
    claims = su4_ode_check(p4, h=args.h)
    _emit_json(
        {
            "hamiltonian": matrix_to_json(embedded_hamiltonian(p4)),
            "constraint": matrix_to_json(su4_constraint(p4)),
            "claims": [c.to_json() for c in claims],
        },
        args.out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="su3brach", description="SU(3) brachistochrone toolkit and claim ledger")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", help="resolve R and report the resonance constants")
    _add_problem_args(sp)
    sp.add_argument("--require-periodic", action="store_true",
                    help="exit 2 if Delta/k is not rational")
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("propagate", help="sample U(t) at uniform times as CSV")
    _add_problem_args(sp)
    sp.add_argument("--method", choices=METHODS, default="closed",
                    help="closed: U+ U-; oracle: midpoint integrator; frame: Q(t) Q(0)^dag; "
                         "floquet: displayed Floquet product (equals U at whole periods only)")
    sp.add_argument("--samples", type=int, default=65, help="number of sample times (>= 2)")
    sp.add_argument("--t-end", type=float, default=None, help="last sample time (default: one period)")
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="oracle midpoint steps")
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.add_argument("--emit-plot", metavar="PATH", help="also write a gnuplot script here")
    sp.set_defaults(func=cmd_propagate)

    sp = sub.add_parser("verify", help="run the claim ledger")
    _add_problem_args(sp)
    sp.add_argument("--claims", action="append", default=[],
                    help="only claim ids with these prefixes (comma-separated, repeatable)")
    sp.add_argument("--seed", type=int, default=None, help="RNG seed (else SU3_SEED, else fixed)")
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="oracle midpoint steps")
    sp.add_argument("--tol-scale", type=float, default=1.0, help="multiply every tolerance")
    sp.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    sp.add_argument("--out", help="also write the JSON report here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="characteristic-polynomial class of a 3x3 Hermitian")
    _add_problem_args(sp)
    sp.add_argument("--file", help="matrix JSON ('-' for stdin); default: the problem's H(t)")
    sp.add_argument("--t", type=float, default=0.0, help="time for H(t) when no --file")
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("gates", help="emit a catalog matrix as JSON")
    _add_problem_args(sp)
    sp.add_argument("--which", choices=GATES, required=True)
    sp.add_argument("--t", type=float, default=0.0, help="time argument where relevant")
    sp.add_argument("--sigma", type=float, default=0.0, help="rotation angle for r* gates")
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_gates)

    sp = sub.add_parser("su4", help="embedded 4x4 problem and its ODE coefficient claims")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--demo", action="store_true", help="fixed demonstration parameters")
    src.add_argument("--seed", type=int, default=None, help="draw random parameters")
    sp.add_argument("--h", type=float, default=1e-3, help="finite-difference step")
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_su4)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"su3brach {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
