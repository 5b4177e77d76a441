"""Integer kernels for brute-force profile scans.

A game with rational coefficients and rational ``rho = p/q``, ``sigma = r/t`` is
rescaled to integers so the inner loop runs on int64:

* perceived cost   x ``D*q``   : ``A_e (q + p (x_e - 1)) + q B_e``
* social cost      x ``D*t``   : ``x_e (A_e (t + r (x_e - 1)) + t B_e)``
* potential        x ``2*D*q`` : ``A_e (q x(x+1) + (p - q) x(x-1)) + 2 q B_e x``

where ``D`` is the common denominator of all ``a_e, b_e`` and ``A = D a``,
``B = D b``. Profiles are numbered in mixed radix with player 0 most
significant, so index order is lexicographic profile order.

The backend is picked by ``PPCG_KERNEL`` (``numba`` or ``numpy``); numba is
the default when it imports.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game import Game

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

INT64_SAFE = 2**62


def _default_backend() -> str:
    flag = os.environ.get("PPCG_KERNEL", "").strip().lower()
    if flag in ("numpy", "python"):
        return flag
    if flag not in ("", "numba"):
        raise ValueError(f"PPCG_KERNEL must be 'numba', 'numpy' or 'python', got {flag!r}")
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _default_backend()


@dataclass(frozen=True)
class Packed:
    radix: np.ndarray  # int64[n]
    offset: np.ndarray  # int64[n]
    incidence: np.ndarray  # int64[total_strategies, m]
    A: np.ndarray  # int64[m]
    B: np.ndarray  # int64[m]
    p: int
    q: int
    r: int
    t: int
    D: int
    total: int


def pack(game: Game, rho: Fraction, sigma: Fraction) -> Packed | None:
    """Integer form of ``game``; ``None`` if any scaled quantity could overflow int64."""
    D = 1
    for res in game.resources:
        D = math.lcm(D, res.a.denominator, res.b.denominator)
    A = [int(res.a * D) for res in game.resources]
    B = [int(res.b * D) for res in game.resources]
    p, q = rho.numerator, rho.denominator
    r, t = sigma.numerator, sigma.denominator
    n, m = game.n, game.m
    amax = max(A, default=0)
    bmax = max(B, default=0)
    bound = max(
        m * (amax * (q + p * n) + q * bmax) * 2,
        n * m * (amax * (t + r * n) + t * bmax),
        m * (amax * (q * n * (n + 1) + abs(p - q) * n * n) + 2 * q * bmax * n),
    )
    if bound * 4 >= INT64_SAFE or game.profile_count >= INT64_SAFE:
        return None
    radix = np.array([len(s) for s in game.strategies], dtype=np.int64)
    offset = np.zeros(n, dtype=np.int64)
    offset[1:] = np.cumsum(radix)[:-1]
    incidence = np.zeros((int(radix.sum()), m), dtype=np.int64)
    row = 0
    for strats in game.strategies:
        for s in strats:
            incidence[row, list(s)] = 1
            row += 1
    return Packed(
        radix=radix,
        offset=offset,
        incidence=incidence,
        A=np.array(A, dtype=np.int64),
        B=np.array(B, dtype=np.int64),
        p=p,
        q=q,
        r=r,
        t=t,
        D=D,
        total=game.profile_count,
    )


def scan_chunk_numpy(start, stop, radix, offset, S, A, B, p, q, r, t):
    """Social cost, potential and Nash flag for profiles ``start..stop-1``."""
    n = radix.shape[0]
    k = stop - start
    rem = np.arange(start, stop, dtype=np.int64)
    rows = np.empty((k, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        rows[:, i] = offset[i] + rem % radix[i]
        rem //= radix[i]
    loads = S[rows].sum(axis=1)  # (k, m)
    sc = (loads * (A * (t + r * (loads - 1)) + t * B)).sum(axis=1)
    pot = (A * (q * loads * (loads + 1) + (p - q) * loads * (loads - 1)) + 2 * q * B * loads).sum(axis=1)
    unit = A * (q + p * (loads - 1)) + q * B
    ne = np.ones(k, dtype=np.bool_)
    for i in range(n):
        if radix[i] == 1:
            continue
        cur_rows = S[rows[:, i]]
        cur = (cur_rows * unit).sum(axis=1)
        shifted = loads + 1 - cur_rows
        dev_unit = A * (q + p * (shifted - 1)) + q * B
        for d in range(radix[i]):
            dev = (dev_unit * S[offset[i] + d]).sum(axis=1)
            ne &= dev >= cur
    return sc, pot, ne


def _scan_chunk_loops(start, stop, radix, offset, S, A, B, p, q, r, t):
    n = radix.shape[0]
    m = A.shape[0]
    k = stop - start
    sc = np.empty(k, dtype=np.int64)
    pot = np.empty(k, dtype=np.int64)
    ne = np.empty(k, dtype=np.bool_)
    rows = np.empty(n, dtype=np.int64)
    loads = np.empty(m, dtype=np.int64)
    for j in range(k):
        rem = start + j
        for i in range(n - 1, -1, -1):
            rows[i] = offset[i] + rem % radix[i]
            rem //= radix[i]
        loads[:] = 0
        for i in range(n):
            for e in range(m):
                loads[e] += S[rows[i], e]
        s_acc = 0
        p_acc = 0
        for e in range(m):
            x = loads[e]
            s_acc += x * (A[e] * (t + r * (x - 1)) + t * B[e])
            p_acc += A[e] * (q * x * (x + 1) + (p - q) * x * (x - 1)) + 2 * q * B[e] * x
        sc[j] = s_acc
        pot[j] = p_acc
        stable = True
        for i in range(n):
            if radix[i] == 1:
                continue
            cur_row = rows[i]
            cur = 0
            for e in range(m):
                if S[cur_row, e]:
                    cur += A[e] * (q + p * (loads[e] - 1)) + q * B[e]
            for d in range(radix[i]):
                alt = offset[i] + d
                if alt == cur_row:
                    continue
                dev = 0
                for e in range(m):
                    if S[alt, e]:
                        x = loads[e] + 1 - S[cur_row, e]
                        dev += A[e] * (q + p * (x - 1)) + q * B[e]
                if dev < cur:
                    stable = False
                    break
            if not stable:
                break
        ne[j] = stable
    return sc, pot, ne


if HAVE_NUMBA:
    scan_chunk_numba = numba.njit(cache=True, nogil=True)(_scan_chunk_loops)
else:  # pragma: no cover
    scan_chunk_numba = None


def get_scan_chunk(backend: str | None = None):
    backend = backend or BACKEND
    if backend == "numba":
        if scan_chunk_numba is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return scan_chunk_numba
    if backend == "numpy":
        return scan_chunk_numpy
    raise ValueError(f"no integer kernel for backend {backend!r}")
