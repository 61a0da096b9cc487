"""Kalman controllability matrix, rank verdicts and the controllability Gramian."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .linearize import LinearModel, build_model
from .model import ALL_CONFIGS, PhysicalParams, ThrusterConfig, input_matrix
from .numkit import expm, numerical_rank, simpson_matrix, singular_values

REFERENCE_HORIZON = (0.0, 10.0)


def normalized_jacobian() -> np.ndarray:
    """Integer-valued A that regenerates the reference integer controllability matrices.

    Equal to the P_PAPER Jacobian with the O(1e-6) entries rounded to
    zero and the J2/Kepler terms in A[1, 0] dropped. Regression fixture only.
    """
    A = np.zeros((6, 6))
    A[0, 1] = A[2, 3] = A[4, 5] = 1.0
    A[1, 0] = 1.0
    A[1, 3] = 2.0
    A[3, 1] = -2.0
    return A


@dataclass(frozen=True, eq=False)
class KalmanMatrix:
    Q: np.ndarray
    source: LinearModel

    def block(self, k: int) -> np.ndarray:
        m = self.source.m
        return self.Q[:, k * m : (k + 1) * m]


@dataclass(frozen=True, eq=False)
class Gramian:
    W: np.ndarray
    t0: float
    t1: float
    source: LinearModel

    @property
    def singular_values(self) -> np.ndarray:
        return singular_values(self.W)

    def rank(self) -> int:
        return numerical_rank(self.W)

    def condition(self) -> float:
        sv = self.singular_values
        return float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")


def kalman_matrix(m: LinearModel) -> KalmanMatrix:
    """Q = [B, AB, ..., A^(n-1) B], each block obtained from the previous one."""
    blocks = [m.B]
    for _ in range(m.n - 1):
        blocks.append(m.A @ blocks[-1])
    return KalmanMatrix(np.hstack(blocks), m)


def rank_verdict(m: LinearModel) -> tuple[int, bool]:
    rank = numerical_rank(kalman_matrix(m).Q, equilibrate=True)
    return rank, rank == m.n


def _check_horizon(t0: float, t1: float) -> None:
    if not t1 > t0:
        raise ArgumentError(f"horizon must satisfy t1 > t0, got [{t0}, {t1}]")


def gramian(m: LinearModel, t0: float, t1: float) -> Gramian:
    """Controllability Gramian by Van Loan's block exponential.

    With ``C = [[-A, B B^T], [0, A^T]]`` and ``E = exp(C T)``, the Gramian is
    ``E22^T E12``.
    """
    _check_horizon(t0, t1)
    n = m.n
    T = t1 - t0
    C = np.zeros((2 * n, 2 * n))
    C[:n, :n] = -m.A
    C[:n, n:] = m.B @ m.B.T
    C[n:, n:] = m.A.T
    E = expm(C * T)
    W = E[n:, n:].T @ E[:n, n:]
    return Gramian(0.5 * (W + W.T), float(t0), float(t1), m)


def gramian_quadrature(m: LinearModel, t0: float, t1: float, steps: int = 256) -> Gramian:
    """Same integral by composite Simpson over s -> exp(A(t1-s)) B B^T exp(A^T(t1-s))."""
    _check_horizon(t0, t1)

    def integrand(s):
        G = expm(m.A * (t1 - s)) @ m.B
        return G @ G.T

    W = simpson_matrix(integrand, t0, t1, steps)
    return Gramian(W, float(t0), float(t1), m)


@dataclass(frozen=True)
class RankEntry:
    config: ThrusterConfig
    rank: int
    controllable: bool
    w_min_sv: float
    w_max_sv: float
    w_cond: float

    def to_dict(self) -> dict:
        return {
            "config": self.config.name,
            "rank": self.rank,
            "controllable": self.controllable,
            "gramian_min_singular_value": self.w_min_sv,
            "gramian_max_singular_value": self.w_max_sv,
            "gramian_condition": self.w_cond,
        }


@dataclass(frozen=True)
class RankReport:
    params: PhysicalParams
    horizon: tuple[float, float]
    entries: tuple[RankEntry, ...]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(e.rank for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "horizon": list(self.horizon),
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [
            f"{'config':<12}{'rank':>6}  {'controllable':<13}{'min-sv(W)':>14}{'cond(W)':>14}"
        ]
        for e in self.entries:
            lines.append(
                f"{e.config.name:<12}{e.rank:>6}  {('yes' if e.controllable else 'no'):<13}"
                f"{e.w_min_sv:>14.6e}{e.w_cond:>14.6e}"
            )
        return "\n".join(lines)


def rank_entry(p: PhysicalParams, c: ThrusterConfig, horizon=REFERENCE_HORIZON) -> RankEntry:
    model = build_model(p, c)
    rank, ok = rank_verdict(model)
    W = gramian(model, *horizon)
    sv = W.singular_values
    return RankEntry(c, rank, ok, float(sv[-1]), float(sv[0]), W.condition())


def rank_table(p: PhysicalParams, horizon=REFERENCE_HORIZON) -> RankReport:
    """Verdicts for all seven thruster configurations, in the canonical order."""
    entries = tuple(rank_entry(p, c, horizon) for c in ALL_CONFIGS)
    return RankReport(p, tuple(float(h) for h in horizon), entries)


def normalized_model(c: ThrusterConfig) -> LinearModel:
    return LinearModel(normalized_jacobian(), input_matrix(c), c, None)
