"""Fixed-step RK4 propagation of the linear and nonlinear deviation systems.

Control laws are callables ``u(t) -> array(m)``. They are sampled on the
half-step grid ``t0 + k h / 2`` before stepping, which gives exactly the
classical RK4 stage times ``t, t + h/2, t + h``. The stepping loop itself
runs in the selected kernel backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._backend import get_kernels
from .errors import ArgumentError, DivergenceError, DomainError
from .linearize import LinearModel
from .model import PhysicalParams, ThrusterConfig, as_state, control_to_full

ControlLaw = Callable[[float], np.ndarray]

_REASONS = {1: "non-finite state", 2: "cylindrical radius reached zero (x1 <= -sigma)"}


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States on the uniform grid; ``x[k]`` is the state at ``t[k]``."""

    t: np.ndarray
    x: np.ndarray
    kind: str
    config: ThrusterConfig | None
    params: PhysicalParams | None
    steps: int

    @property
    def final(self) -> np.ndarray:
        return self.x[-1]

    def rows(self):
        for tk, xk in zip(self.t, self.x):
            yield tk, xk


def _check_grid(t0: float, t1: float, steps: int) -> None:
    if isinstance(steps, bool) or int(steps) != steps or steps < 1:
        raise ArgumentError(f"steps must be a positive integer, got {steps}")
    if not t1 > t0:
        raise ArgumentError(f"horizon must satisfy t1 > t0, got [{t0}, {t1}]")


def stage_times(t0: float, t1: float, steps: int) -> np.ndarray:
    """The 2 * steps + 1 half-step nodes; first and last are exactly t0 and t1."""
    k = np.arange(2 * steps + 1)
    t = t0 + (t1 - t0) * k / (2 * steps)
    t[-1] = t1
    return t


def _sample(u: ControlLaw | None, times: np.ndarray, m: int) -> np.ndarray:
    if u is None:
        return np.zeros((times.size, m))
    out = np.empty((times.size, m))
    for k, tk in enumerate(times):
        v = np.atleast_1d(np.asarray(u(float(tk)), dtype=float))
        if v.shape != (m,):
            raise DomainError(f"control law returned shape {v.shape}, expected ({m},)")
        out[k] = v
    return out


def _grid(t0: float, t1: float, steps: int) -> np.ndarray:
    t = t0 + (t1 - t0) * np.arange(steps + 1) / steps
    t[-1] = t1
    return t


def integrate_linear(
    m: LinearModel,
    u: ControlLaw | None,
    x0,
    t0: float,
    t1: float,
    steps: int,
    *,
    backend: str | None = None,
) -> Trajectory:
    """Classical RK4 on x' = A x + B u(t) with step (t1 - t0) / steps.

    ``u=None`` means zero input.

    Raises:
        DivergenceError: a step produced a non-finite state.
    """
    _check_grid(t0, t1, steps)
    steps = int(steps)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (m.n,):
        raise DomainError(f"initial state must have shape ({m.n},), got {x0.shape}")
    h = (t1 - t0) / steps
    g = _sample(u, stage_times(t0, t1, steps), m.m) @ m.B.T
    traj, status, bad = get_kernels(backend).rk4_linear(m.A, g, x0, h, steps)
    if status:
        raise DivergenceError(bad, _REASONS[status])
    return Trajectory(_grid(t0, t1, steps), traj, "linear", m.config, m.params, steps)


def integrate_nonlinear(
    p: PhysicalParams,
    c: ThrusterConfig,
    u: ControlLaw | None,
    x0,
    t0: float,
    t1: float,
    steps: int,
    *,
    backend: str | None = None,
) -> Trajectory:
    """Classical RK4 on the nonlinear J2 deviation dynamics.

    Raises:
        DomainError: ``x0`` is already at or beyond the r = 0 singularity.
        DivergenceError: a stage reached x1 <= -sigma or a non-finite state.
    """
    _check_grid(t0, t1, steps)
    steps = int(steps)
    x0 = as_state(x0)
    if not x0[0] > -p.sigma:
        raise DomainError(f"x1 = {x0[0]} must exceed -sigma = {-p.sigma}")
    h = (t1 - t0) / steps
    raw = _sample(u, stage_times(t0, t1, steps), c.m)
    u3 = np.array([control_to_full(row, c) for row in raw])
    traj, status, bad = get_kernels(backend).rk4_nonlinear(
        x0, u3, h, steps, p.mu, p.R, p.J2, p.sigma, p.omega
    )
    if status:
        raise DivergenceError(bad, _REASONS[status])
    return Trajectory(_grid(t0, t1, steps), traj, "nonlinear", c, p, steps)


def rk4_convergence_probe(run: Callable[[int], np.ndarray], steps_seq: Sequence[int]) -> float:
    """Observed order of accuracy from endpoints at successively doubled step counts.

    ``run(steps)`` returns the endpoint for that step count. Each consecutive
    triple gives ``log2(|x_N - x_2N| / |x_2N - x_4N|)``; the smallest estimate
    is returned.
    """
    steps_seq = [int(s) for s in steps_seq]
    if len(steps_seq) < 3:
        raise ArgumentError("need at least three step counts")
    if any(b != 2 * a for a, b in zip(steps_seq, steps_seq[1:])):
        raise ArgumentError(f"step counts must double: {steps_seq}")
    ends = [np.asarray(run(s), dtype=float) for s in steps_seq]
    diffs = [np.linalg.norm(b - a) for a, b in zip(ends, ends[1:])]
    orders = []
    for d_coarse, d_fine in zip(diffs, diffs[1:]):
        if d_fine == 0.0:
            orders.append(math.inf)
        else:
            orders.append(math.log2(d_coarse / d_fine))
    return min(orders)
