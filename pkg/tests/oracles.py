"""Independent reference computations.

Nothing here imports the package internals: matrices are built unscaled
straight from the definition and reduced with ``mp.det``.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np


def direction(alpha: int, j: int):
    # roots of eta^(2 alpha) = (-1)^alpha
    if alpha % 2:
        return mp.expjpi(mp.mpf(2 * j + 1) / (2 * alpha))
    return mp.expjpi(mp.mpf(j) / alpha)


def direct_matrix(alpha: int, mu, bits: int = 200) -> mp.matrix:
    with mp.workprec(bits):
        n = 2 * alpha
        m = mp.matrix(n, n)
        for j in range(n):
            eta = direction(alpha, j)
            grow = mp.exp(mp.mpf(mu) * eta)
            for r in range(alpha):
                m[r, j] = eta**r
                m[alpha + r, j] = grow * eta**r
        return m


def direct_det(alpha: int, mu, bits: int = 200):
    with mp.workprec(bits):
        return mp.det(direct_matrix(alpha, mu, bits))


def det2_closed(mu, bits: int = 200):
    with mp.workprec(bits):
        mu = mp.mpf(mu)
        return 8 * (1 - mp.cos(mu) * mp.cosh(mu))


def alpha2_root(n: int, bits: int = 200):
    """Root of ``cos(mu) cosh(mu) = 1`` near ``pi/2 + n pi``."""
    with mp.workprec(bits):
        f = lambda mu: mp.cos(mu) - 1 / mp.cosh(mu)
        return mp.findroot(f, mp.pi / 2 + n * mp.pi, tol=mp.mpf(2) ** (-bits + 8))


def alpha3_odd_root(n: int, bits: int = 200):
    """Odd-index alpha = 3 root from the bracket factor, via findroot."""
    with mp.workprec(bits):
        s3 = mp.sqrt(3)

        def bracket(mu):
            x = mu * s3
            return 4 * mp.cosh(x / 2) / mp.cosh(x) - mp.cos(mu / 2) + (mp.cos(mu / 2) * mp.cos(mu) - 4 * mp.cos(mu / 2)) / mp.cosh(x)

        return mp.findroot(bracket, n * mp.pi, tol=mp.mpf(2) ** (-bits + 8))


def numpy_singular_values(m: mp.matrix) -> np.ndarray:
    a = np.array(m.tolist(), dtype=np.complex128)
    return np.linalg.svd(a, compute_uv=False)


def vandermonde_minor_direct(alpha: int, columns, bits: int = 120):
    """Determinant of the first ``alpha`` rows restricted to 1-based ``columns``."""
    with mp.workprec(bits):
        cols = sorted(columns)
        m = mp.matrix(alpha, alpha)
        for c, col in enumerate(cols):
            eta = direction(alpha, col - 1)
            for r in range(alpha):
                m[r, c] = eta**r
        return mp.det(m)


def chebyshev_by_recurrence(m: int) -> list[int]:
    """Coefficients of ``T_m`` (ascending) from ``T_{k+1} = 2y T_k - T_{k-1}``."""
    prev, cur = [1], [0, 1]
    if m == 0:
        return prev
    for _ in range(m - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def det3_direct(a, b, w, bits: int = 120):
    """Brute-force determinant of the alpha = 3 matrix in ``a, b, omega`` form."""
    with mp.workprec(bits):
        a, b, w = mp.mpc(a), mp.mpc(b), mp.mpc(w)
        grow = [a * w, w**2, b * w, b / w, w**-2, a / w]
        m = mp.matrix(6, 6)
        for j in range(6):
            eta = direction(3, j)
            for r in range(3):
                m[r, j] = eta**r
                m[3 + r, j] = grow[j] * eta**r
        return mp.det(m)
