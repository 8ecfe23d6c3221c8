"""Exact linear algebra over Q(zeta_N) on integer cyclotomic arrays.

A matrix over Z[zeta_N] is an integer array of shape (rows, cols, N) whose
last axis holds coefficients of 1, zeta, ..., zeta^{N-1}, already reduced
modulo Phi_N (entries beyond phi(N) are zero).  Ranks and pivots are taken
over Q by writing each entry as the phi x phi matrix of multiplication,
then handed to flint's fraction-free elimination.
"""

from __future__ import annotations

from fractions import Fraction

import flint
import numpy as np

from .cyclotomic import CycNum, power_reduction, totient


def _zeta_step(cur, N: int, phi: int):
    """Multiply reduced coordinate vectors (last axis, length phi) by zeta."""
    red_row = np.array(power_reduction(N)[phi], dtype=object if cur.dtype == object else np.int64)
    nxt = np.zeros_like(cur)
    nxt[..., 1:] = cur[..., :-1]
    top = cur[..., phi - 1]
    nxt = nxt + top[..., None] * red_row
    return nxt


def blow_up(M, N: int) -> np.ndarray:
    """(r, c, N) cyclotomic matrix -> (r*phi, c*phi) rational matrix.

    Row (u, k) holds the coordinates of zeta^k * M[u, :].
    """
    phi = totient(N)
    r, c = M.shape[0], M.shape[1]
    cur = M[..., :phi]
    if cur.dtype != object and np.abs(cur).max(initial=0) > (1 << 40):
        cur = cur.astype(object)
    out = np.zeros((r, phi, c, phi), dtype=cur.dtype)
    for k in range(phi):
        out[:, k] = cur
        if k + 1 < phi:
            cur = _zeta_step(cur, N, phi)
    return out.reshape(r * phi, c * phi)


def _to_fmpz(A) -> flint.fmpz_mat:
    r, c = A.shape
    if r == 0 or c == 0:
        return flint.fmpz_mat(r, c)
    return flint.fmpz_mat(r, c, [int(x) for x in A.reshape(-1).tolist()])


def _pivots(R: flint.fmpz_mat, rank: int) -> list[int]:
    piv = []
    c = R.ncols()
    entries = R.entries()
    for i in range(rank):
        base = i * c
        for j in range(c):
            if entries[base + j] != 0:
                piv.append(j)
                break
    return piv


def q_row_profile(A) -> list[int]:
    """Indices of rows of an integer matrix that are independent of earlier rows."""
    if A.shape[0] == 0 or A.shape[1] == 0:
        return []
    T = _to_fmpz(np.ascontiguousarray(A.T))
    R, _, rank = T.rref()
    return _pivots(R, rank)


def row_profile(M, N: int) -> list[int]:
    """Greedy Q(zeta_N)-independent rows of M (shape (r, c, N)), in order."""
    if M.shape[0] == 0 or M.shape[1] == 0:
        return []
    phi = totient(N)
    B = blow_up(M, N)
    piv = q_row_profile(B)
    rows = sorted({p // phi for p in piv})
    if len(piv) != len(rows) * phi:
        raise ArithmeticError("blown-up pivots do not come in full blocks")
    return rows


def column_profile(M, N: int) -> list[int]:
    return row_profile(np.ascontiguousarray(M.transpose(1, 0, 2)), N)


def rank(M, N: int) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    phi = totient(N)
    r = _to_fmpz(blow_up(M, N)).rank()
    if r % phi:
        raise ArithmeticError("rank over Q is not a multiple of phi(N)")
    return r // phi


def _cyc_from_coords(coords, N: int) -> CycNum:
    return CycNum(N, [Fraction(int(x.p), int(x.q)) if hasattr(x, "p") else Fraction(x) for x in coords])


def solve_left(V, b, N: int) -> list[CycNum] | None:
    """Return c in Q(zeta)^r with sum_u c_u V[u, :] = b, or None if no solution.

    V has shape (r, c, N) and b shape (c, N), both reduced.  Rows of V must
    be independent.
    """
    phi = totient(N)
    r = V.shape[0]
    B = blow_up(V, N)  # (r*phi, c*phi)
    rhs = b[..., :phi].reshape(-1)
    # x B = rhs  <=>  B^T x^T = rhs^T
    At = flint.fmpq_mat(_to_fmpz(np.ascontiguousarray(B.T)))
    rv = flint.fmpq_mat(len(rhs), 1, [int(x) for x in rhs.tolist()])
    aug = flint.fmpq_mat(At.nrows(), At.ncols() + 1)
    for i in range(At.nrows()):
        for j in range(At.ncols()):
            aug[i, j] = At[i, j]
        aug[i, At.ncols()] = rv[i, 0]
    R, rk = aug.rref()
    ncols = At.ncols()
    piv = []
    for i in range(rk):
        for j in range(ncols + 1):
            if R[i, j] != 0:
                piv.append(j)
                break
    if ncols in piv:
        return None
    if len(piv) != ncols:
        raise ArithmeticError("rows of V are not independent")
    x = [None] * ncols
    for i, j in enumerate(piv):
        x[j] = R[i, ncols]
    # unknown (u, k) is the coefficient of zeta^k in c_u
    out = []
    for u in range(r):
        coords = x[u * phi : (u + 1) * phi]
        out.append(_cyc_from_coords(coords, N))
    return out


def cyc_matmul(A, B, red) -> np.ndarray:
    """Product of cyclotomic matrices (a, b, N) x (b, c, N), reduced mod Phi_N."""
    N = red.shape[0]
    big = A.dtype == object or B.dtype == object
    if not big:
        bound = int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0)) * A.shape[1] * N
        big = bound * int(np.abs(red).sum(axis=1).max()) >= (1 << 62)
    dt = object if big else np.int64
    A = A.astype(dt)
    B = B.astype(dt)
    out = np.zeros((A.shape[0], B.shape[1], N), dtype=dt)
    nzA = [s for s in range(N) if np.any(A[..., s] != 0)]
    nzB = [t for t in range(N) if np.any(B[..., t] != 0)]
    for s in nzA:
        for t in nzB:
            out[..., (s + t) % N] += A[..., s] @ B[..., t]
    return out @ red.astype(dt)
