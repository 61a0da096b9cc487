"""Linear model about the origin of the deviation coordinates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import rhs
from .model import PhysicalParams, ThrusterConfig, input_matrix


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Pair (A, B) of the linearization; ``params`` is None for hand-built fixtures."""

    A: np.ndarray
    B: np.ndarray
    config: ThrusterConfig | None = None
    params: PhysicalParams | None = None

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        B = np.array(self.B, dtype=float)
        if B.ndim == 1:
            B = B[:, None]
        if A.ndim != 2 or A.shape[0] != A.shape[1] or B.shape[0] != A.shape[0]:
            raise ValueError(f"incompatible shapes A{A.shape}, B{B.shape}")
        A.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]


def analytic_jacobian(p: PhysicalParams) -> np.ndarray:
    """Closed-form d f / d x at the origin with zero thrust."""
    mu, R, J2, s, w = p.mu, p.R, p.J2, p.sigma, p.omega
    A = np.zeros((6, 6))
    A[0, 1] = 1.0
    A[1, 0] = w * w + 2.0 * mu / s**3 + 6.0 * mu * R * R * J2 / s**5
    A[1, 3] = 2.0 * w
    A[2, 3] = 1.0
    A[3, 1] = -2.0 * w
    A[4, 5] = 1.0
    A[5, 4] = -mu / s**3 - 4.5 * mu * R * R * J2 / s**5
    return A


def default_fd_step(p: PhysicalParams) -> float:
    return 1e-6 * max(1.0, p.sigma)


def fd_jacobian(p: PhysicalParams, h: float | None = None) -> np.ndarray:
    """Central-difference Jacobian of the deviation dynamics at the origin."""
    if h is None:
        h = default_fd_step(p)
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    c = ThrusterConfig(("r",))
    J = np.zeros((6, 6))
    for i in range(6):
        e = np.zeros(6)
        e[i] = h
        J[:, i] = (rhs(e, [0.0], c, p) - rhs(-e, [0.0], c, p)) / (2.0 * h)
    return J


def build_model(p: PhysicalParams, c: ThrusterConfig) -> LinearModel:
    return LinearModel(analytic_jacobian(p), input_matrix(c), c, p)
