"""Physical parameters, states, thruster configurations, and the deviation coordinates.

The deviation state measures the departure from a circular reference orbit of
cylindrical radius ``sigma`` rotating at rate ``omega``::

    x1 = r - sigma          x2 = dr/dt
    x3 = sigma (theta - omega t)
    x4 = sigma (dtheta/dt - omega)
    x5 = z                  x6 = dz/dt

States are plain ``numpy`` arrays of shape ``(6,)``; :class:`PhysicalState`
is the only structured state type.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import DomainError

STATE_DIM = 6
DIRECTIONS = ("r", "theta", "z")
# column of B for each thruster direction: x2, x4, x6
_DIRECTION_ROW = {"r": 1, "theta": 3, "z": 5}


@dataclass(frozen=True)
class PhysicalParams:
    """Gravitational constants and reference orbit.

    Attributes:
        mu: Gravitational parameter GM [km^3/s^2].
        R: Equatorial radius of the central body [km].
        J2: Second zonal harmonic (dimensionless).
        sigma: Cylindrical radius of the reference circular orbit [km].
        omega: Angular rate of the reference orbit [rad/s].
    """

    mu: float
    R: float
    J2: float
    sigma: float
    omega: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise DomainError(f"{f.name} must be a finite number, got {v!r}")
            object.__setattr__(self, f.name, float(v))
        if self.mu <= 0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if self.R <= 0:
            raise DomainError(f"R must be positive, got {self.R}")
        if self.J2 < 0:
            raise DomainError(f"J2 must be nonnegative, got {self.J2}")
        if self.omega <= 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        # R only enters through J2; without J2 the body radius is irrelevant
        if self.J2 > 0 and self.sigma <= self.R:
            raise DomainError(f"sigma ({self.sigma}) must exceed R ({self.R}) when J2 > 0")
        if self.sigma <= 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")

    def circular_rate(self) -> float:
        """Rate at which the equatorial circle of radius sigma is an exact J2 orbit."""
        return math.sqrt(
            self.mu / self.sigma**3 + 1.5 * self.mu * self.R**2 * self.J2 / self.sigma**5
        )

    def physical(self) -> PhysicalParams:
        """Copy with omega replaced by :meth:`circular_rate`, so the origin is an equilibrium."""
        return replace(self, omega=self.circular_rate())

    def to_dict(self) -> dict:
        return asdict(self)


# omega = 1 is the reference rate convention; it is not the orbital rate at sigma
P_PAPER = PhysicalParams(
    mu=398600.4418, R=6378.137, J2=1.08262668e-3, sigma=6800.0, omega=1.0
)
P_UNIT = PhysicalParams(mu=1.0, R=1.0, J2=0.0, sigma=1.0, omega=1.0)

MODES = ("paper", "physical", "unit")


def params_for_mode(mode: str) -> PhysicalParams:
    """Built-in parameter set for ``paper``, ``physical`` or ``unit``."""
    if mode == "paper":
        return P_PAPER
    if mode == "physical":
        return P_PAPER.physical()
    if mode == "unit":
        return P_UNIT
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


def params_from_dict(data: dict, base: PhysicalParams = P_PAPER) -> PhysicalParams:
    """Build parameters from a mapping; keys missing from ``data`` come from ``base``."""
    if not isinstance(data, dict):
        raise DomainError("parameter document must be a JSON object")
    known = {f.name for f in fields(PhysicalParams)}
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown parameter keys: {sorted(unknown)}")
    return replace(base, **data)


def load_params(path: str | Path, base: PhysicalParams = P_PAPER) -> PhysicalParams:
    """Read a JSON parameter file with keys ``mu, R, J2, sigma, omega``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read parameter file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed parameter file {path}: {exc}") from exc
    return params_from_dict(data, base)


@dataclass(frozen=True)
class PhysicalState:
    """Cylindrical position and velocity (r, theta, z, r_dot, theta_dot, z_dot)."""

    r: float
    theta: float
    z: float
    r_dot: float
    theta_dot: float
    z_dot: float

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"cylindrical radius must be positive, got r={self.r}")

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.r, self.theta, self.z, self.r_dot, self.theta_dot, self.z_dot]
        )

    @classmethod
    def from_array(cls, a) -> PhysicalState:
        return cls(*(float(v) for v in a))


@dataclass(frozen=True)
class ThrusterConfig:
    """Nonempty subset of thrust directions, always stored in (r, theta, z) order."""

    active: tuple[str, ...]

    def __post_init__(self):
        active = tuple(self.active)
        bad = [d for d in active if d not in DIRECTIONS]
        if bad:
            raise DomainError(f"unknown thruster direction(s) {bad}")
        if not active:
            raise DomainError("thruster configuration must be nonempty")
        if len(set(active)) != len(active):
            raise DomainError(f"duplicate thruster direction in {active}")
        object.__setattr__(self, "active", tuple(d for d in DIRECTIONS if d in active))

    @classmethod
    def parse(cls, name: str) -> ThrusterConfig:
        """Parse names such as ``"theta-z"`` or ``"r-theta-z"``."""
        parts = [p.strip() for p in name.split("-")] if name else []
        return cls(tuple(parts))

    @property
    def name(self) -> str:
        return "-".join(self.active)

    @property
    def m(self) -> int:
        return len(self.active)

    def index(self, direction: str) -> int | None:
        """Position of ``direction`` in the control vector, or None when inactive."""
        return self.active.index(direction) if direction in self.active else None

    def __str__(self) -> str:
        return "{" + ",".join(self.active) + "}"


# the seven cases in the order they are analysed
ALL_CONFIGS = tuple(
    ThrusterConfig(a)
    for a in (
        ("r",),
        ("theta",),
        ("z",),
        ("r", "theta"),
        ("r", "z"),
        ("theta", "z"),
        ("r", "theta", "z"),
    )
)
CONFIG_NAMES = tuple(c.name for c in ALL_CONFIGS)


def control_to_full(u, c: ThrusterConfig) -> np.ndarray:
    """Scatter a length-m control vector into the (u_r, u_theta, u_z) triple."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.shape != (c.m,):
        raise DomainError(f"control for {c} must have length {c.m}, got shape {u.shape}")
    full = np.zeros(3)
    for k, d in enumerate(c.active):
        full[DIRECTIONS.index(d)] = u[k]
    return full


def input_matrix(c: ThrusterConfig) -> np.ndarray:
    """6 x m matrix whose columns are e2, e4, e6 for the active r, theta, z thrusters."""
    B = np.zeros((STATE_DIM, c.m))
    for k, d in enumerate(c.active):
        B[_DIRECTION_ROW[d], k] = 1.0
    return B


def to_deviation(s: PhysicalState, t: float, p: PhysicalParams) -> np.ndarray:
    """Map a cylindrical state at time ``t`` to deviation coordinates."""
    if not s.r > 0:
        raise DomainError(f"cylindrical radius must be positive, got r={s.r}")
    return np.array(
        [
            s.r - p.sigma,
            s.r_dot,
            p.sigma * (s.theta - p.omega * t),
            p.sigma * (s.theta_dot - p.omega),
            s.z,
            s.z_dot,
        ]
    )


def from_deviation(x, t: float, p: PhysicalParams) -> PhysicalState:
    """Inverse of :func:`to_deviation`; requires ``x[0] > -sigma``."""
    x = as_state(x)
    if not x[0] > -p.sigma:
        raise DomainError(f"x1 = {x[0]} must exceed -sigma = {-p.sigma}")
    return PhysicalState(
        r=x[0] + p.sigma,
        theta=x[2] / p.sigma + p.omega * t,
        z=x[4],
        r_dot=x[1],
        theta_dot=x[3] / p.sigma + p.omega,
        z_dot=x[5],
    )


def as_state(x) -> np.ndarray:
    """Validate and convert to a finite float array of shape (6,)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (STATE_DIM,):
        raise DomainError(f"state must have shape (6,), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("state has non-finite entries")
    return x
