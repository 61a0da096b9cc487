"""Nonlinear J2 equations of motion, in deviation and in cylindrical coordinates."""

from __future__ import annotations

import math

import numpy as np

from ._backend import get_kernels
from .errors import DomainError
from .model import (
    PhysicalParams,
    PhysicalState,
    ThrusterConfig,
    as_state,
    control_to_full,
)


def rhs(x, u, c: ThrusterConfig, p: PhysicalParams, *, backend: str | None = None) -> np.ndarray:
    """Time derivative of the deviation state under thrust ``u``.

    Args:
        x: Deviation state (6,).
        u: Control of length ``c.m``, ordered (r, theta, z) over the active directions.
        c: Thruster configuration; inactive directions get zero thrust.
        p: Physical parameters.
        backend: Kernel backend name; default is the import-time choice.

    Raises:
        DomainError: if ``x[0] <= -sigma`` or ``u`` has the wrong length.
    """
    x = as_state(x)
    u3 = control_to_full(u, c)
    f = get_kernels(backend).deviation_rhs(x, u3, p.mu, p.R, p.J2, p.sigma, p.omega)
    if f is None:
        raise DomainError(f"x1 = {x[0]} must exceed -sigma = {-p.sigma}")
    return f


def _gravity_terms(r: float, z: float, p: PhysicalParams) -> tuple[float, float]:
    rho2 = r * r + z * z
    inv3 = rho2**-1.5
    inv7 = rho2**-3.5
    k = 1.5 * p.R**2 * p.J2
    g_r = -p.mu * r * (inv3 + k * (r * r - 4.0 * z * z) * inv7)
    g_z = -p.mu * z * (inv3 + k * (3.0 * r * r - 2.0 * z * z) * inv7)
    return g_r, g_z


def physical_rhs(s: PhysicalState, u, c: ThrusterConfig, p: PhysicalParams) -> np.ndarray:
    """Derivative of (r, theta, z, r_dot, theta_dot, z_dot) under gravity with J2.

    Thrust enters as ``r_ddot - r theta_dot^2 = g_r + u_r``,
    ``r theta_ddot + 2 r_dot theta_dot = u_theta`` and ``z_ddot = g_z + u_z``.
    """
    if not s.r > 0:
        raise DomainError(f"cylindrical radius must be positive, got r={s.r}")
    ur, ut, uz = control_to_full(u, c)
    g_r, g_z = _gravity_terms(s.r, s.z, p)
    r_dd = s.r * s.theta_dot**2 + g_r + ur
    th_dd = (ut - 2.0 * s.r_dot * s.theta_dot) / s.r
    z_dd = g_z + uz
    return np.array([s.r_dot, s.theta_dot, s.z_dot, r_dd, th_dd, z_dd])


def deviation_pushforward(ds, p: PhysicalParams) -> np.ndarray:
    """Map a cylindrical state derivative to the derivative of the deviation state.

    The map is linear because the coordinate change is affine in the state and
    its only explicit time dependence is ``-sigma omega`` in x3.
    """
    r_d, th_d, z_d, r_dd, th_dd, z_dd = ds
    return np.array(
        [r_d, r_dd, p.sigma * (th_d - p.omega), p.sigma * th_dd, z_d, z_dd]
    )


def origin_residual(p: PhysicalParams) -> float:
    """Radial acceleration at the origin; zero iff ``omega`` is the J2 circular rate."""
    return p.sigma * p.omega**2 - p.mu / p.sigma**2 - 1.5 * p.mu * p.R**2 * p.J2 / p.sigma**4


def is_equilibrium(p: PhysicalParams, rtol: float = 1e-12) -> bool:
    scale = p.sigma * p.omega**2 + p.mu / p.sigma**2
    return math.isclose(origin_residual(p), 0.0, abs_tol=rtol * scale)
