"""Command-line front end.

Exit codes: 0 success, 2 uncontrollable configuration, 3 invalid input,
4 numerical failure. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .controllability import gramian, rank_table, rank_verdict
from .errors import (
    ArgumentError,
    DivergenceError,
    DomainError,
    SingularGramianError,
    UncontrollableError,
)
from .linearize import build_model
from .model import (
    CONFIG_NAMES,
    DIRECTIONS,
    MODES,
    P_PAPER,
    P_UNIT,
    ThrusterConfig,
    control_to_full,
    load_params,
)
from .numkit import numerical_rank
from .simulate import integrate_linear, integrate_nonlinear
from .steering import SteeringProblem, control_at, synthesize

EXIT_OK = 0
EXIT_UNCONTROLLABLE = 2
EXIT_INVALID = 3
EXIT_NUMERICAL = 4


class _Parser(argparse.ArgumentParser):
    # argparse's default exit status 2 would collide with "uncontrollable"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def fmt(v: float) -> str:
    """Shortest round-trip representation of a double."""
    return repr(float(v))


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(s) for s in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected six comma-separated numbers, got {text!r}")
    if v.shape != (6,):
        raise argparse.ArgumentTypeError(f"expected six comma-separated numbers, got {text!r}")
    return v


def _config(text: str) -> ThrusterConfig:
    if text not in CONFIG_NAMES:
        raise argparse.ArgumentTypeError(
            f"unknown configuration {text!r}; choose from {', '.join(CONFIG_NAMES)}"
        )
    return ThrusterConfig.parse(text)


def resolve_params(args):
    """Parameters from ``--mode`` and ``--params``; file keys override the mode's base set."""
    base = P_UNIT if args.mode == "unit" else P_PAPER
    p = load_params(args.params, base) if args.params else base
    if args.mode == "physical":
        p = p.physical()
    return p


def _format_matrix(M: np.ndarray) -> str:
    return "\n".join("  ".join(f"{v: .16g}" for v in row) for row in np.atleast_2d(M))


def cmd_rank_table(args) -> int:
    p = resolve_params(args)
    report = rank_table(p, (args.t0, args.t1))
    print(report.to_table())
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
    return EXIT_OK


def cmd_linearize(args) -> int:
    p = resolve_params(args)
    m = build_model(p, args.config)
    print(f"A (config {args.config.name}):")
    print(_format_matrix(m.A))
    print("B:")
    print(_format_matrix(m.B))
    return EXIT_OK


def cmd_gramian(args) -> int:
    p = resolve_params(args)
    m = build_model(p, args.config)
    W = gramian(m, args.t0, args.t1)
    sv = W.singular_values
    kalman_rank, ok = rank_verdict(m)
    print(f"W (config {args.config.name}, horizon [{fmt(args.t0)}, {fmt(args.t1)}]):")
    print(_format_matrix(W.W))
    print(f"rank(W) = {numerical_rank(W.W)}")
    print(f"kalman rank = {kalman_rank}")
    print(f"min singular value = {sv[-1]:.16g}")
    print(f"max singular value = {sv[0]:.16g}")
    print(f"condition number = {W.condition():.16g}")
    print(f"controllable = {'yes' if ok else 'no'}")
    return EXIT_OK


def write_trajectory_csv(path, traj) -> None:
    lines = ["t,x1,x2,x3,x4,x5,x6"]
    for t, x in traj.rows():
        lines.append(",".join([fmt(t)] + [fmt(v) for v in x]))
    Path(path).write_text("\n".join(lines) + "\n")


def write_control_csv(path, times, controls, c: ThrusterConfig) -> None:
    lines = ["t," + ",".join(f"u_{d}" for d in DIRECTIONS)]
    for t, u in zip(times, controls):
        lines.append(",".join([fmt(t)] + [fmt(v) for v in control_to_full(u, c)]))
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_steer(args) -> int:
    p = resolve_params(args)
    m = build_model(p, args.config)
    sol = synthesize(SteeringProblem(m, args.x0, args.x1, args.t0, args.t1))
    if args.nonlinear:
        traj = integrate_nonlinear(p, args.config, sol, args.x0, args.t0, args.t1, args.steps)
    else:
        traj = integrate_linear(m, sol, args.x0, args.t0, args.t1, args.steps)
    err = float(np.linalg.norm(traj.final - sol.problem.x1))
    if args.out_traj:
        write_trajectory_csv(args.out_traj, traj)
    if args.out_ctrl:
        controls = [control_at(sol, t) for t in traj.t]
        write_control_csv(args.out_ctrl, traj.t, controls, args.config)
    print(f"config = {args.config.name}")
    print(f"system = {traj.kind}")
    print(f"final state = {' '.join(fmt(v) for v in traj.final)}")
    print(f"terminal error = {err:.6e}")
    print(f"energy = {sol.energy:.16g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=MODES, default="paper",
                        help="built-in parameter set (default: paper)")
    common.add_argument("--params", metavar="FILE",
                        help="JSON file with any of mu, R, J2, sigma, omega")

    parser = _Parser(prog="j2ctrl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rt = sub.add_parser("rank-table", parents=[common], help="Kalman ranks for all seven configurations")
    rt.add_argument("--t0", type=float, default=0.0, help="Gramian reference horizon start")
    rt.add_argument("--t1", type=float, default=10.0, help="Gramian reference horizon end")
    rt.add_argument("--out", metavar="FILE", help="write the report as JSON")
    rt.set_defaults(func=cmd_rank_table)

    lin = sub.add_parser("linearize", parents=[common], help="print A and B at the origin")
    lin.add_argument("--config", type=_config, default=ThrusterConfig(("r",)))
    lin.set_defaults(func=cmd_linearize)

    gr = sub.add_parser("gramian", parents=[common], help="controllability Gramian diagnostics")
    gr.add_argument("--config", type=_config, default=ThrusterConfig(("theta", "z")))
    gr.add_argument("--t0", type=float, default=0.0)
    gr.add_argument("--t1", type=float, default=10.0)
    gr.set_defaults(func=cmd_gramian)

    st = sub.add_parser("steer", parents=[common], help="minimum-energy steering run")
    st.add_argument("--config", type=_config, required=True)
    st.add_argument("--x0", type=_vector, default=_vector("1,2,3,4,5,6"))
    st.add_argument("--x1", type=_vector, default=_vector("6,5,4,3,2,1"))
    st.add_argument("--t0", type=float, default=0.0)
    st.add_argument("--t1", type=float, default=10.0)
    st.add_argument("--steps", type=int, default=4096)
    st.add_argument("--nonlinear", action="store_true",
                    help="replay the linear-model control on the nonlinear dynamics")
    st.add_argument("--out-traj", metavar="FILE", help="trajectory CSV")
    st.add_argument("--out-ctrl", metavar="FILE", help="control CSV")
    st.set_defaults(func=cmd_steer)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UncontrollableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCONTROLLABLE
    except (SingularGramianError, DivergenceError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DomainError, ArgumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
