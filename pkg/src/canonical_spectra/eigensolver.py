"""Root finding for ``det A_alpha(mu) = 0`` and index assignment.

Roots are bracketed on a grid of step pi/8 (the asymptotic spacing is pi, so
a cell never holds two roots there), narrowed by bisection to width 1e-3 and
polished by safeguarded secant steps.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import mpmath as mp
from scipy.optimize import minimize_scalar

from . import exact_forms
from .asymptotics import predict_first_index
from .errors import (
    DomainError,
    IndexingAnomalyWarning,
    InternalConsistencyError,
    NumericalError,
    SuspectedDoubleRootWarning,
)
from .spectral_matrix import NATIVE_BITS, OperatorOrder, as_order, check_precision, normalized_real_det

log = logging.getLogger(__name__)

GRID_STEP = mp.pi / 8
SCAN_START = 0.1
BISECTION_WIDTH = 1e-3
MAX_SECANT_STEPS = 200
CERTIFICATE_FACTOR = 10
DOUBLE_ROOT_RATIO = 1e-6


class Method(str, Enum):
    GENERAL_DET = "general_det"
    CLOSED_FORM_ALPHA2 = "closed_form_alpha2"
    CLOSED_FORM_ALPHA3_EVEN = "closed_form_alpha3_even"
    TRANSCENDENTAL_ALPHA3_ODD = "transcendental_alpha3_odd"


@dataclass(frozen=True)
class EigenvalueRecord:
    """One eigenvalue ``lambda = mu**(2 alpha)``.

    ``residual`` is ``|F(mu)| / |F'(mu)|``, i.e. the Newton distance from
    ``mu`` to the nearest root of the real determinant objective.
    """

    alpha: int
    n: int
    mu: mp.mpf
    lam: mp.mpf
    delta: mp.mpf
    residual: mp.mpf
    precision_bits: int
    method: Method


def secant_tolerance(mu, precision_bits: int):
    return mp.mpf(2) ** (-(precision_bits - 10)) * abs(mu)


def _refine(f: Callable, a, b, fa, fb, precision_bits: int):
    """Bisection down to ``BISECTION_WIDTH``, then bracketed secant."""
    with mp.workprec(precision_bits + 20):
        a, b = mp.mpf(a), mp.mpf(b)
        while b - a > BISECTION_WIDTH:
            m = (a + b) / 2
            fm = f(m)
            if fm == 0:
                return m
            if mp.sign(fm) == mp.sign(fa):
                a, fa = m, fm
            else:
                b, fb = m, fm
        x0, f0, x1, f1 = a, fa, b, fb
        for _ in range(MAX_SECANT_STEPS):
            if f1 == f0:
                x2 = (a + b) / 2
            else:
                x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
            if not a < x2 < b:
                x2 = (a + b) / 2
            f2 = f(x2)
            if f2 == 0:
                return x2
            if mp.sign(f2) == mp.sign(fa):
                a, fa = x2, f2
            else:
                b, fb = x2, f2
            step = abs(x2 - x1)
            x0, f0, x1, f1 = x1, f1, x2, f2
            if step < secant_tolerance(x2, precision_bits) or b - a < secant_tolerance(x2, precision_bits):
                return x2
    raise NumericalError(
        "root refinement did not converge",
        bracket=(mp.nstr(a, 20), mp.nstr(b, 20)),
        steps=MAX_SECANT_STEPS,
    )


def _grid(mu_lo, mu_hi) -> list:
    points = []
    k = 0
    while True:
        x = mu_lo + k * GRID_STEP
        if x >= mu_hi:
            break
        points.append(x)
        k += 1
    points.append(mp.mpf(mu_hi))
    return points


def find_roots(order, mu_lo, mu_hi, precision_bits: int = NATIVE_BITS) -> list:
    """Sorted roots of the normalized determinant in ``[mu_lo, mu_hi]``.

    Every same-sign dip of ``|F|`` on the grid is minimized locally: a
    hidden sign change adds both roots, a touch of zero raises
    :class:`SuspectedDoubleRootWarning` rather than being dropped silently.
    """
    order = as_order(order)
    precision_bits = check_precision(precision_bits)
    with mp.workprec(precision_bits + 20):
        mu_lo, mu_hi = mp.mpf(mu_lo), mp.mpf(mu_hi)
        if not 0 < mu_lo < mu_hi:
            raise DomainError(f"need 0 < mu_lo < mu_hi, got [{mu_lo}, {mu_hi}]")

        def f(mu):
            return normalized_real_det(order, mu, precision_bits)

        grid = _grid(mu_lo, mu_hi)
        values = [f(x) for x in grid]
        roots = []
        for i in range(len(grid) - 1):
            a, b, fa, fb = grid[i], grid[i + 1], values[i], values[i + 1]
            if fa == 0:
                roots.append(a)
            elif fa * fb < 0:
                roots.append(_refine(f, a, b, fa, fb, precision_bits))
        if values[-1] == 0:
            roots.append(grid[-1])
        for i in range(1, len(grid) - 1):
            left, mid, right = values[i - 1], values[i], values[i + 1]
            if left * mid > 0 and mid * right > 0 and abs(mid) < abs(left) and abs(mid) < abs(right):
                roots.extend(_probe_dip(f, order, grid[i - 1], grid[i + 1], mid, min(abs(left), abs(right)), precision_bits))
        roots.sort()
    with mp.workprec(precision_bits):
        return [+r for r in roots]


def _probe_dip(f: Callable, order: OperatorOrder, a, b, f_mid, scale, precision_bits: int) -> list:
    """Look inside a same-sign dip of ``F`` for a hidden pair of roots.

    A dip that crosses zero yields both roots; one that only touches zero
    is reported as a suspected double root.
    """
    sign = mp.sign(f_mid)
    best = minimize_scalar(lambda x: float(sign * f(mp.mpf(x))), bounds=(float(a), float(b)), method="bounded", options={"xatol": 1e-12})
    x = mp.mpf(best.x)
    fx = f(x)
    if sign * fx < 0:
        return [_refine(f, a, x, f(a), fx, precision_bits), _refine(f, x, b, fx, f(b), precision_bits)]
    if abs(fx) < DOUBLE_ROOT_RATIO * scale:
        warnings.warn(
            f"alpha={order.alpha}: near-zero minimum without sign change at mu~{mp.nstr(x, 12)}",
            SuspectedDoubleRootWarning,
            stacklevel=3,
        )
    return []


def asymptotic_base(order: OperatorOrder, n: int):
    return n * mp.pi if order.alpha % 2 else mp.pi / 2 + n * mp.pi


def _index_of(order: OperatorOrder, mu) -> int:
    x = mu / mp.pi if order.alpha % 2 else mu / mp.pi - mp.mpf(1) / 2
    return int(mp.nint(x))


def _slope(order, mu, precision_bits):
    h = mp.mpf(2) ** (-(precision_bits // 2)) * mu
    return (normalized_real_det(order, mu + h, precision_bits) - normalized_real_det(order, mu - h, precision_bits)) / (2 * h)


def _residual(order, mu, precision_bits):
    fp = _slope(order, mu, precision_bits)
    if fp == 0:
        return mp.inf
    return abs(normalized_real_det(order, mu, precision_bits)) / abs(fp)


def _classify(order: OperatorOrder, n: int, mu, residual, precision_bits: int):
    """Cross-check against the closed forms; returns ``(mu, method)``."""
    tol = CERTIFICATE_FACTOR * secant_tolerance(mu, precision_bits)
    if order.alpha == 2:
        slope = abs(-mp.sin(mu) + mp.sech(mu) * mp.tanh(mu))
        distance = abs(exact_forms.eq2_residual(mu, precision_bits)) / slope
        if distance > tol + residual:
            raise InternalConsistencyError(f"alpha=2 root {mp.nstr(mu, 15)} misses cos(mu) cosh(mu) = 1")
        return mu, Method.CLOSED_FORM_ALPHA2
    if order.alpha == 3:
        if n % 2 == 0:
            exact = n * mp.pi
            if abs(mu - exact) > tol + residual:
                raise InternalConsistencyError(f"alpha=3 even root {mp.nstr(mu, 15)} is not {n} pi")
            return exact, Method.CLOSED_FORM_ALPHA3_EVEN
        # the bracket factor has slope ~ |sin(mu/2)|/2 ~ 1/2 at odd roots
        distance = 2 * abs(exact_forms.odd_equation_residual3(mu, precision_bits))
        if distance > tol + residual:
            raise InternalConsistencyError(f"alpha=3 odd root {mp.nstr(mu, 15)} misses the transcendental equation")
        return mu, Method.TRANSCENDENTAL_ALPHA3_ODD
    return mu, Method.GENERAL_DET


def assign_indices(order, roots, precision_bits: int = NATIVE_BITS) -> list:
    """Attach the asymptotic index ``n`` to sorted roots and build records.

    Collisions and gaps are reported via :class:`IndexingAnomalyWarning`.
    """
    order = as_order(order)
    records = []
    previous = None
    with mp.workprec(precision_bits + 20):
        for mu in roots:
            mu = mp.mpf(mu)
            n = _index_of(order, mu)
            if previous is not None and n != previous + 1:
                kind = "collision" if n <= previous else "gap"
                warnings.warn(
                    f"alpha={order.alpha}: index {kind} at mu={mp.nstr(mu, 10)} (n={n} after {previous})",
                    IndexingAnomalyWarning,
                    stacklevel=2,
                )
            previous = n
            residual = _residual(order, mu, precision_bits)
            mu, method = _classify(order, n, mu, residual, precision_bits)
            delta = mp.mpf(0) if method is Method.CLOSED_FORM_ALPHA3_EVEN else mu - asymptotic_base(order, n)
            with mp.workprec(precision_bits):
                mu = +mu
                records.append(
                    EigenvalueRecord(
                        alpha=order.alpha,
                        n=n,
                        mu=mu,
                        lam=mu ** (2 * order.alpha),
                        delta=+delta,
                        residual=+residual,
                        precision_bits=precision_bits,
                        method=method,
                    )
                )
    return records


def spectrum(order, count: int, precision_bits: int = NATIVE_BITS, start: Optional[float] = None) -> list:
    """The first ``count`` eigenvalue records above ``start`` (default 0.1).

    The scan window grows upward until enough roots are found.
    """
    order = as_order(order)
    precision_bits = check_precision(precision_bits)
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    lo = mp.mpf(SCAN_START if start is None else start)
    roots: list = []
    window = (count + 2) * mp.pi
    hi = lo + window
    # the smallest root of alpha sits near 4 alpha / e
    hi = max(hi, mp.mpf(4 * order.alpha) / mp.e + window)
    while len(roots) < count:
        roots.extend(find_roots(order, lo, hi, precision_bits))
        lo, hi = hi, hi + (count - len(roots) + 2) * mp.pi
    roots = sorted(set(roots))[:count]
    log.debug("alpha=%d: %d roots up to mu=%s", order.alpha, len(roots), mp.nstr(roots[-1], 10))
    return assign_indices(order, roots, precision_bits)


def min_eigenvalue(order, precision_bits: int = NATIVE_BITS) -> EigenvalueRecord:
    """Smallest eigenvalue; the scan starts at half the predicted ``n0 pi``."""
    order = as_order(order)
    start = max(SCAN_START, 0.5 * mp.pi * predict_first_index(order.alpha))
    return spectrum(order, 1, precision_bits, start=start)[0]
