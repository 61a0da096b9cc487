"""Minimum-energy open-loop steering of the linear model between two states.

For the time-invariant pair (A, B) the least-L2 control that moves ``x0`` at
``t0`` to ``x1`` at ``t1`` is::

    u(t) = B^T exp(A^T (t1 - t)) eta,    W eta = x1 - exp(A (t1 - t0)) x0

where ``W`` is the controllability Gramian over the horizon. The energy is
``eta^T W eta``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .controllability import Gramian, gramian, rank_verdict
from .errors import ArgumentError, UncontrollableError
from .linearize import LinearModel
from .model import as_state
from .numkit import expm, spd_solve


@dataclass(frozen=True, eq=False)
class SteeringProblem:
    model: LinearModel
    x0: np.ndarray
    x1: np.ndarray
    t0: float
    t1: float

    def __post_init__(self):
        object.__setattr__(self, "x0", as_state(self.x0))
        object.__setattr__(self, "x1", as_state(self.x1))
        if not self.t1 > self.t0:
            raise ArgumentError(f"horizon must satisfy t1 > t0, got [{self.t0}, {self.t1}]")


@dataclass(frozen=True, eq=False)
class SteeringSolution:
    problem: SteeringProblem
    eta: np.ndarray
    gramian: Gramian
    phi_T: np.ndarray
    energy: float

    @property
    def model(self) -> LinearModel:
        return self.problem.model

    @property
    def t0(self) -> float:
        return self.problem.t0

    @property
    def t1(self) -> float:
        return self.problem.t1

    def __call__(self, t: float) -> np.ndarray:
        return control_at(self, t)


def synthesize(prob: SteeringProblem) -> SteeringSolution:
    """Solve for the minimum-energy coefficient vector.

    Raises:
        UncontrollableError: the configuration fails the Kalman rank test.
        SingularGramianError: the Gramian is not numerically positive definite.
    """
    m = prob.model
    rank, ok = rank_verdict(m)
    if not ok:
        raise UncontrollableError(m.config if m.config is not None else "(custom B)", rank, m.n)
    W = gramian(m, prob.t0, prob.t1)
    phi_T = expm(m.A * (prob.t1 - prob.t0))
    eta = spd_solve(W.W, prob.x1 - phi_T @ prob.x0)
    energy = float(eta @ W.W @ eta)
    return SteeringSolution(prob, eta, W, phi_T, energy)


def control_at(sol: SteeringSolution, t: float) -> np.ndarray:
    """u(t) = B^T exp(A^T (t1 - t)) eta, evaluated exactly at ``t``."""
    t0, t1 = sol.t0, sol.t1
    # tolerate grid nodes that land a rounding error outside the horizon
    slack = 1e-12 * max(1.0, abs(t0), abs(t1))
    if not (t0 - slack <= t <= t1 + slack):
        raise ArgumentError(f"t = {t} lies outside the horizon [{t0}, {t1}]")
    m = sol.model
    return m.B.T @ (expm(m.A.T * (t1 - t)) @ sol.eta)


def sample_control(sol: SteeringSolution, steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Controls on a uniform grid of ``steps + 1`` nodes; returns ``(t, u)``."""
    if steps < 2:
        raise ArgumentError(f"steps must be >= 2, got {steps}")
    t = np.linspace(sol.t0, sol.t1, steps + 1)
    u = np.array([control_at(sol, tk) for tk in t])
    return t, u
