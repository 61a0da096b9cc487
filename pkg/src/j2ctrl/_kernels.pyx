# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: nonlinear J2 deviation dynamics and fixed-step RK4 drivers.

Same signatures and status codes as ``_pykernels``.
"""

import numpy as np

from libc.math cimport sqrt, isfinite

cdef enum:
    N = 6
    C_OK = 0
    C_NONFINITE = 1
    C_SINGULAR = 2

OK = C_OK
NONFINITE = C_NONFINITE
SINGULAR = C_SINGULAR
NAME = "cython"


cdef inline int _rhs(const double* x, double ur, double ut, double uz,
                     double mu, double R, double J2, double sigma, double omega,
                     double* out) noexcept nogil:
    cdef double r = x[0] + sigma
    if not r > 0.0:
        return C_SINGULAR
    cdef double z = x[4]
    cdef double r2 = r * r
    cdef double z2 = z * z
    cdef double rho2 = r2 + z2
    cdef double rho = sqrt(rho2)
    cdef double inv3 = 1.0 / (rho2 * rho)
    cdef double inv7 = inv3 / (rho2 * rho2)
    cdef double k = 1.5 * R * R * J2
    cdef double w = x[3] / sigma + omega
    out[0] = x[1]
    out[1] = r * w * w - mu * r * (inv3 + k * (r2 - 4.0 * z2) * inv7) + ur
    out[2] = x[3]
    out[3] = -2.0 * x[1] * sigma * w / r + ut
    out[4] = x[5]
    out[5] = -mu * z * (inv3 + k * (3.0 * r2 - 2.0 * z2) * inv7) + uz
    return C_OK


def deviation_rhs(x, u3, double mu, double R, double J2, double sigma, double omega):
    """Nonlinear deviation dynamics; returns None when x1 <= -sigma."""
    cdef double xb[N]
    cdef double ob[N]
    cdef int i
    for i in range(N):
        xb[i] = x[i]
    if _rhs(xb, u3[0], u3[1], u3[2], mu, R, J2, sigma, omega, ob) != C_OK:
        return None
    out = np.empty(N)
    cdef double[::1] ov = out
    for i in range(N):
        ov[i] = ob[i]
    return out


def rk4_linear(A, g, x0, double h, Py_ssize_t steps):
    """Integrate x' = A x + g(t) with g given on the half-step grid."""
    cdef const double[:, ::1] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[:, ::1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t n = Av.shape[0]
    traj = np.empty((steps + 1, n))
    cdef double[:, ::1] tv = traj
    x_arr = np.array(x0, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] k1 = np.empty(n), k2 = np.empty(n), k3 = np.empty(n), k4 = np.empty(n)
    cdef double[::1] tmp = np.empty(n)
    cdef double half = 0.5 * h, sixth = h / 6.0, s
    cdef Py_ssize_t i, a, b, j
    cdef int status = C_OK
    cdef Py_ssize_t bad = -1
    with nogil:
        for a in range(n):
            tv[0, a] = x[a]
        for i in range(steps):
            j = 2 * i
            for a in range(n):
                s = gv[j, a]
                for b in range(n):
                    s = s + Av[a, b] * x[b]
                k1[a] = s
            for a in range(n):
                tmp[a] = x[a] + half * k1[a]
            for a in range(n):
                s = gv[j + 1, a]
                for b in range(n):
                    s = s + Av[a, b] * tmp[b]
                k2[a] = s
            for a in range(n):
                tmp[a] = x[a] + half * k2[a]
            for a in range(n):
                s = gv[j + 1, a]
                for b in range(n):
                    s = s + Av[a, b] * tmp[b]
                k3[a] = s
            for a in range(n):
                tmp[a] = x[a] + h * k3[a]
            for a in range(n):
                s = gv[j + 2, a]
                for b in range(n):
                    s = s + Av[a, b] * tmp[b]
                k4[a] = s
            for a in range(n):
                x[a] = x[a] + sixth * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a])
                if not isfinite(x[a]):
                    status = C_NONFINITE
            if status != C_OK:
                bad = i
                break
            for a in range(n):
                tv[i + 1, a] = x[a]
    if status != C_OK:
        traj[bad + 1:] = np.nan
    return traj, status, bad


def rk4_nonlinear(x0, u3, double h, Py_ssize_t steps,
                  double mu, double R, double J2, double sigma, double omega):
    """Integrate the nonlinear deviation dynamics with thrust sampled on the half-step grid."""
    cdef const double[:, ::1] uv = np.ascontiguousarray(u3, dtype=np.float64)
    traj = np.empty((steps + 1, N))
    cdef double[:, ::1] tv = traj
    cdef double x[N]
    cdef double k1[N]
    cdef double k2[N]
    cdef double k3[N]
    cdef double k4[N]
    cdef double tmp[N]
    cdef double half = 0.5 * h, sixth = h / 6.0
    cdef Py_ssize_t i, a, j
    cdef int status = C_OK
    cdef Py_ssize_t bad = -1
    for a in range(N):
        x[a] = x0[a]
    with nogil:
        for a in range(N):
            tv[0, a] = x[a]
        for i in range(steps):
            j = 2 * i
            status = _rhs(x, uv[j, 0], uv[j, 1], uv[j, 2], mu, R, J2, sigma, omega, k1)
            if status != C_OK:
                bad = i
                break
            for a in range(N):
                tmp[a] = x[a] + half * k1[a]
            status = _rhs(tmp, uv[j + 1, 0], uv[j + 1, 1], uv[j + 1, 2], mu, R, J2, sigma, omega, k2)
            if status != C_OK:
                bad = i
                break
            for a in range(N):
                tmp[a] = x[a] + half * k2[a]
            status = _rhs(tmp, uv[j + 1, 0], uv[j + 1, 1], uv[j + 1, 2], mu, R, J2, sigma, omega, k3)
            if status != C_OK:
                bad = i
                break
            for a in range(N):
                tmp[a] = x[a] + h * k3[a]
            status = _rhs(tmp, uv[j + 2, 0], uv[j + 2, 1], uv[j + 2, 2], mu, R, J2, sigma, omega, k4)
            if status != C_OK:
                bad = i
                break
            for a in range(N):
                x[a] = x[a] + sixth * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a])
                if not isfinite(x[a]):
                    status = C_NONFINITE
            if status == C_OK and not x[0] + sigma > 0.0:
                status = C_SINGULAR
            if status != C_OK:
                bad = i
                break
            for a in range(N):
                tv[i + 1, a] = x[a]
    if status != C_OK:
        traj[bad + 1:] = np.nan
    return traj, status, bad
