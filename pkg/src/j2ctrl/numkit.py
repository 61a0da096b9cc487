"""Dense numerical helpers: matrix exponential, numerical rank, SPD solve, Simpson quadrature."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ArgumentError, DomainError, SingularGramianError

# degree-13 diagonal Pade; its backward error stays below eps for ||M||_1 <= 5.37
_THETA_13 = 5.371920351148152
_B13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)


def expm(M) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a degree-13 Pade approximant.

    The argument is scaled by ``2**-s`` so that its 1-norm is at most 5.37,
    the approximant is evaluated with six matrix products and one solve, and
    the result is squared ``s`` times.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expm needs a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError("expm argument has non-finite entries")
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    norm = float(np.abs(M).sum(axis=0).max())
    if norm == 0.0:
        return np.eye(n)
    s = 0
    if norm > _THETA_13:
        s = int(math.ceil(math.log2(norm / _THETA_13)))
    X = M / 2.0**s
    b = _B13
    ident = np.eye(n)
    X2 = X @ X
    X4 = X2 @ X2
    X6 = X4 @ X2
    U = X @ (
        X6 @ (b[13] * X6 + b[11] * X4 + b[9] * X2)
        + b[7] * X6 + b[5] * X4 + b[3] * X2 + b[1] * ident
    )
    V = (
        X6 @ (b[12] * X6 + b[10] * X4 + b[8] * X2)
        + b[6] * X6 + b[4] * X4 + b[2] * X2 + b[0] * ident
    )
    E = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        E = E @ E
    return E


def singular_values(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def equilibrate_columns(M) -> np.ndarray:
    """Scale every nonzero column to unit 2-norm; zero columns are left as they are."""
    M = np.array(M, dtype=float)
    norms = np.linalg.norm(M, axis=0)
    nz = norms > 0
    M[:, nz] /= norms[nz]
    return M


def rank_tolerance(sv: np.ndarray, shape: tuple[int, int]) -> float:
    if sv.size == 0:
        return 0.0
    return max(shape) * np.finfo(float).eps * sv[0]


def numerical_rank(M, *, equilibrate: bool = False, tol: float | None = None) -> int:
    """Number of singular values above ``tol``.

    The default tolerance is ``max(rows, cols) * eps * sigma_max``. With
    ``equilibrate=True`` the columns are first scaled to unit norm, which keeps
    Krylov blocks of very different magnitude from masking each other.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if equilibrate:
        M = equilibrate_columns(M)
    sv = singular_values(M)
    if tol is None:
        tol = rank_tolerance(sv, M.shape)
    return int(np.count_nonzero(sv > tol))


def cholesky(S, rtol: float = 1e-10) -> np.ndarray:
    """Lower Cholesky factor; raises SingularGramianError naming the failing pivot.

    Pivot ``j`` must exceed ``rtol * S[j, j]``: the part of variable ``j`` not
    explained by the earlier ones may not vanish to rounding.
    """
    S = np.asarray(S, dtype=float)
    n = S.shape[0]
    L = np.zeros_like(S)
    for j in range(n):
        d = S[j, j] - L[j, :j] @ L[j, :j]
        if not (d > 0.0 and d > rtol * S[j, j]):
            raise SingularGramianError(j, float(d))
        L[j, j] = math.sqrt(d)
        L[j + 1 :, j] = (S[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]
    return L


def spd_solve(S, y, rtol: float = 1e-10) -> np.ndarray:
    """Solve ``S x = y`` for symmetric positive definite ``S`` via Cholesky.

    Raises:
        DomainError: if ``S`` is not square or not symmetric to 1e-10 relative.
        SingularGramianError: if the factorization breaks down.
    """
    S = np.asarray(S, dtype=float)
    y = np.asarray(y, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or y.shape != (S.shape[0],):
        raise DomainError(f"incompatible shapes S{S.shape}, y{y.shape}")
    scale = float(np.max(np.abs(S))) if S.size else 0.0
    if np.max(np.abs(S - S.T), initial=0.0) > 1e-10 * scale:
        raise DomainError("matrix is not symmetric")
    L = cholesky(S, rtol)
    n = S.shape[0]
    w = np.empty(n)
    for i in range(n):
        w[i] = (y[i] - L[i, :i] @ w[:i]) / L[i, i]
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (w[i] - L[i + 1 :, i] @ x[i + 1 :]) / L[i, i]
    return x


def simpson_matrix(f: Callable[[float], np.ndarray], t0: float, t1: float, steps: int) -> np.ndarray:
    """Composite Simpson rule applied entrywise to a matrix-valued integrand."""
    if isinstance(steps, bool) or int(steps) != steps or steps < 2 or steps % 2:
        raise ArgumentError(f"Simpson needs an even step count >= 2, got {steps}")
    steps = int(steps)
    h = (t1 - t0) / steps
    acc = np.asarray(f(t0), dtype=float) + np.asarray(f(t1), dtype=float)
    for k in range(1, steps):
        acc = acc + (4.0 if k % 2 else 2.0) * np.asarray(f(t0 + k * h), dtype=float)
    return acc * (h / 3.0)
