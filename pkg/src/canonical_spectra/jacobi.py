"""One-sided (Hestenes) Jacobi singular values for small complex matrices."""

from __future__ import annotations

import mpmath as mp
import numpy as np

from .errors import NumericalError

MAX_SWEEPS = 60


def singular_values(matrix, max_sweeps: int = MAX_SWEEPS) -> list:
    """Singular values of an mpmath matrix, in descending order.

    Columns are rotated pairwise until they are mutually orthogonal at the
    working precision; the singular values are then the column norms.
    Works at the current ``mp.prec``.
    """
    rows, cols = matrix.rows, matrix.cols
    a = [[mp.mpc(matrix[i, j]) for i in range(rows)] for j in range(cols)]
    tol = mp.eps * max(rows, cols)
    # columns this small are roundoff; rotating them never converges
    negligible = (mp.eps * max(rows, cols)) ** 2 * mp.fsum(abs(x) ** 2 for col in a for x in col)

    for sweep in range(max_sweeps):
        rotated = False
        for p in range(cols - 1):
            ap = a[p]
            for q in range(p + 1, cols):
                aq = a[q]
                alpha = mp.fsum(abs(x) ** 2 for x in ap)
                beta = mp.fsum(abs(y) ** 2 for y in aq)
                gamma = mp.fsum(mp.conj(x) * y for x, y in zip(ap, aq))
                g = abs(gamma)
                if g == 0 or g <= tol * mp.sqrt(alpha * beta) or min(alpha, beta) <= negligible:
                    continue
                rotated = True
                u = gamma / g
                zeta = (beta - alpha) / (2 * g)
                t = (1 if zeta >= 0 else -1) / (abs(zeta) + mp.sqrt(1 + zeta * zeta))
                c = 1 / mp.sqrt(1 + t * t)
                s = c * t
                uc = mp.conj(u)
                for i in range(rows):
                    x = ap[i]
                    y = aq[i] * uc
                    ap[i] = c * x - s * y
                    aq[i] = (s * x + c * y) * u
        if not rotated:
            break
    else:
        raise NumericalError(
            "one-sided Jacobi did not converge",
            sweeps=max_sweeps,
            shape=(rows, cols),
        )

    norms = [mp.sqrt(mp.fsum(abs(x) ** 2 for x in col)) for col in a]
    return sorted(norms, reverse=True)


def singular_values_native(matrix: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Same rotation scheme on a complex128 array, descending."""
    a = np.array(matrix, dtype=np.complex128, copy=True)
    rows, cols = a.shape
    tol = np.finfo(float).eps * max(rows, cols)
    negligible = tol**2 * np.vdot(a, a).real
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                ap, aq = a[:, p], a[:, q]
                alpha = np.vdot(ap, ap).real
                beta = np.vdot(aq, aq).real
                gamma = np.vdot(ap, aq)
                g = abs(gamma)
                if g == 0 or g <= tol * np.sqrt(alpha * beta) or min(alpha, beta) <= negligible:
                    continue
                rotated = True
                u = gamma / g
                zeta = (beta - alpha) / (2 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1 + zeta * zeta))
                c = 1 / np.sqrt(1 + t * t)
                s = c * t
                x, y = ap.copy(), aq * np.conj(u)
                a[:, p] = c * x - s * y
                a[:, q] = (s * x + c * y) * u
        if not rotated:
            break
    else:
        raise NumericalError("one-sided Jacobi did not converge", sweeps=max_sweeps, shape=(rows, cols))
    return np.sort(np.linalg.norm(a, axis=0))[::-1]
