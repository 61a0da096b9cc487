"""Pure-Python kernels; mirrors ``_kernels.pyx`` signature for signature.

RK4 drivers take the input sampled on the half-step grid ``t0 + k h / 2``,
``k = 0 .. 2 * steps``, so stages 2 and 3 share node ``2i + 1``.

Status codes returned by the drivers: 0 ok, 1 non-finite state, 2 the
cylindrical radius reached zero.
"""

import math

import numpy as np

OK, NONFINITE, SINGULAR = 0, 1, 2
NAME = "python"


def _rhs(x, ur, ut, uz, mu, R, J2, sigma, omega):
    r = x[0] + sigma
    if not r > 0.0:
        return None
    z = x[4]
    r2 = r * r
    z2 = z * z
    rho2 = r2 + z2
    rho = math.sqrt(rho2)
    inv3 = 1.0 / (rho2 * rho)
    inv7 = inv3 / (rho2 * rho2)
    k = 1.5 * R * R * J2
    w = x[3] / sigma + omega
    return (
        x[1],
        r * w * w - mu * r * (inv3 + k * (r2 - 4.0 * z2) * inv7) + ur,
        x[3],
        -2.0 * x[1] * sigma * w / r + ut,
        x[5],
        -mu * z * (inv3 + k * (3.0 * r2 - 2.0 * z2) * inv7) + uz,
    )


def deviation_rhs(x, u3, mu, R, J2, sigma, omega):
    """Nonlinear deviation dynamics; returns None when x1 <= -sigma."""
    f = _rhs(x, u3[0], u3[1], u3[2], mu, R, J2, sigma, omega)
    return None if f is None else np.array(f)


def rk4_linear(A, g, x0, h, steps):
    """Integrate x' = A x + g(t) with g given on the half-step grid."""
    A = np.asarray(A, dtype=float)
    g = np.asarray(g, dtype=float)
    traj = np.empty((steps + 1, x0.shape[0]))
    x = np.array(x0, dtype=float)
    traj[0] = x
    half = 0.5 * h
    with np.errstate(over="ignore", invalid="ignore"):
        return _rk4_linear_loop(A, g, x, traj, h, half, steps)


def _rk4_linear_loop(A, g, x, traj, h, half, steps):
    for i in range(steps):
        ga, gm, gb = g[2 * i], g[2 * i + 1], g[2 * i + 2]
        k1 = A @ x + ga
        k2 = A @ (x + half * k1) + gm
        k3 = A @ (x + half * k2) + gm
        k4 = A @ (x + h * k3) + gb
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            traj[i + 1 :] = np.nan
            return traj, NONFINITE, i
        traj[i + 1] = x
    return traj, OK, -1


def rk4_nonlinear(x0, u3, h, steps, mu, R, J2, sigma, omega):
    """Integrate the nonlinear deviation dynamics with thrust sampled on the half-step grid."""
    u3 = np.asarray(u3, dtype=float)
    traj = np.empty((steps + 1, 6))
    x = [float(v) for v in x0]
    traj[0] = x
    half = 0.5 * h
    sixth = h / 6.0
    args = (mu, R, J2, sigma, omega)
    for i in range(steps):
        ua, um, ub = u3[2 * i], u3[2 * i + 1], u3[2 * i + 2]
        k1 = _rhs(x, ua[0], ua[1], ua[2], *args)
        if k1 is None:
            return _abort(traj, i, SINGULAR)
        k2 = _rhs([a + half * b for a, b in zip(x, k1)], um[0], um[1], um[2], *args)
        if k2 is None:
            return _abort(traj, i, SINGULAR)
        k3 = _rhs([a + half * b for a, b in zip(x, k2)], um[0], um[1], um[2], *args)
        if k3 is None:
            return _abort(traj, i, SINGULAR)
        k4 = _rhs([a + h * b for a, b in zip(x, k3)], ub[0], ub[1], ub[2], *args)
        if k4 is None:
            return _abort(traj, i, SINGULAR)
        x = [
            a + sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4)
        ]
        if not all(math.isfinite(v) for v in x):
            return _abort(traj, i, NONFINITE)
        if not x[0] + sigma > 0.0:
            return _abort(traj, i, SINGULAR)
        traj[i + 1] = x
    return traj, OK, -1


def _abort(traj, i, code):
    traj[i + 1 :] = np.nan
    return traj, code, i
