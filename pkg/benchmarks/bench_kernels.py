"""Time the pure-Python and compiled kernels on the same inputs.

Usage::

    python benchmarks/bench_kernels.py [--steps 4096] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from j2ctrl._backend import available_backends, get_kernels
from j2ctrl.linearize import build_model
from j2ctrl.model import P_PAPER, P_UNIT, ThrusterConfig
from j2ctrl.simulate import stage_times
from j2ctrl.steering import SteeringProblem, synthesize


def _cases(steps):
    m = build_model(P_PAPER, ThrusterConfig.parse("theta-z"))
    x0, x1 = np.arange(1.0, 7.0), np.arange(6.0, 0.0, -1.0)
    sol = synthesize(SteeringProblem(m, x0, x1, 0.0, 10.0))
    t = stage_times(0.0, 10.0, steps)
    g = np.array([m.B @ sol(s) for s in t])
    u3 = np.zeros((len(t), 3))
    u3[:, 1:] = np.array([sol(s)[1:] for s in t]) * 1e-3
    h = 10.0 / steps
    p = P_UNIT
    pp = (p.mu, p.R, p.J2, p.sigma, p.omega)
    xs = x0 * 1e-3
    return {
        "deviation_rhs x1000": lambda k: [k.deviation_rhs(xs, u3[0], *pp) for _ in range(1000)],
        f"rk4_linear {steps} steps": lambda k: k.rk4_linear(m.A, g, x0, h, steps),
        f"rk4_nonlinear {steps} steps": lambda k: k.rk4_nonlinear(xs, u3, h, steps, *pp),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    names = available_backends()
    print(f"backends: {', '.join(names)}")
    if "cython" not in names:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in _cases(args.steps).items():
        best = {}
        for n in names:
            k = get_kernels(n)
            best[n] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:<28}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in names)
        if "cython" in best:
            row += f"{best['python'] / best['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
