"""Large-index asymptotics of the roots ``mu_{n, alpha}``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError, UnsupportedOrderError
from .spectral_matrix import NATIVE_BITS, OperatorOrder, as_order, laplace_ratio


@dataclass(frozen=True)
class AsymptoticModel:
    """Constants of the two-term expansion ``K1 e^{g1 mu} trig(mu) + K2 e^{g2 mu} trig(s mu)``.

    ``c`` and ``s`` map the index ``l`` to ``cos(l pi / (2 alpha))`` (odd alpha,
    odd ``l``) or ``cos(l pi / alpha)`` (even alpha) and the matching sines.
    """

    order: OperatorOrder
    c: dict
    s: dict
    sigma: mp.mpf
    gamma1: mp.mpf
    gamma2: mp.mpf
    gamma3: mp.mpf
    ratio: mp.mpf
    offset: mp.mpf
    numerator_factor: int


def model(order, precision_bits: int = NATIVE_BITS) -> AsymptoticModel:
    order = as_order(order)
    alpha, k = order.alpha, order.k
    if alpha == 1:
        raise UnsupportedOrderError("alpha = 1 has the exact spectrum (n pi)^2")
    with mp.workprec(precision_bits):
        if alpha % 2:
            c = {l: mp.cospi(mp.mpf(l) / (2 * alpha)) for l in range(1, 2 * k, 2)}
            s = {l: mp.sinpi(mp.mpf(l) / (2 * alpha)) for l in range(1, 2 * k, 2)}
            offset = mp.mpf(0)
            if alpha == 3:
                # read off the closed form: e^{sqrt3 mu} sin(mu), e^{sqrt3 mu/2} sin(mu/2), O(1)
                sigma = mp.mpf(0)
                g1, g2, g3 = 2 * c[1], c[1], mp.mpf(0)
            else:
                sigma = 2 * mp.fsum(c[2 * j - 1] for j in range(1, k - 1))
                g1 = sigma + 2 * c[2 * k - 3] + 2 * c[2 * k - 1]
                g2 = sigma + 2 * c[2 * k - 3] + c[2 * k - 1]
                g3 = sigma + c[2 * k - 3] + 2 * c[2 * k - 1]
        else:
            c = {j: mp.cospi(mp.mpf(j) / alpha) for j in range(1, k)}
            s = {j: mp.sinpi(mp.mpf(j) / alpha) for j in range(1, k)}
            offset = mp.pi / 2
            if alpha == 2:
                # det = 8(1 - cos mu cosh mu): e^{mu} cos(mu), then O(1), then e^{-mu}
                sigma = mp.mpf(1)
                g1, g2, g3 = mp.mpf(1), mp.mpf(0), mp.mpf(-1)
            else:
                sigma = 1 + 2 * mp.fsum(c[j] for j in range(1, k - 1))
                g1 = sigma + 2 * c[k - 1]
                g2 = sigma + c[k - 1]
                g3 = sigma
        return AsymptoticModel(
            order=order,
            c=c,
            s=s,
            sigma=sigma,
            gamma1=g1,
            gamma2=g2,
            gamma3=g3,
            ratio=laplace_ratio(order),
            offset=offset,
            numerator_factor=1 if alpha == 2 else 2,
        )


@dataclass(frozen=True)
class MuPrediction:
    """``mu ~ base + correction`` with remainder of order ``error_scale``."""

    n: int
    base: mp.mpf
    correction: mp.mpf
    error_scale: mp.mpf
    precision_bits: int = NATIVE_BITS

    @property
    def mu(self) -> mp.mpf:
        with mp.workprec(self.precision_bits):
            return self.base + self.correction


def _cos_pi_over(alpha: int):
    """``cos(pi/alpha)`` as an exact Fraction when rational, else None."""
    return {1: Fraction(-1), 2: Fraction(0), 3: Fraction(1, 2)}.get(alpha)


def _sin_pi_times(x: Fraction):
    """``sin(pi x)`` for rational ``x``; exact zero at integers."""
    if x.denominator == 1:
        return mp.mpf(0)
    return mp.sinpi(mp.mpf(x.numerator) / x.denominator)


def predict_delta3(n: int, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``8 (-1)^(floor(n/2)+1) exp(-(pi sqrt3 / 2) n)`` for odd ``n >= 3``."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"n must be odd and >= 3 (even roots are exactly n pi), got {n}")
    with mp.workprec(precision_bits):
        sign = -1 if (n // 2) % 2 == 0 else 1
        return sign * 8 * mp.exp(-mp.pi * mp.sqrt(3) / 2 * n)


def predict_mu(order, n: int, precision_bits: int = NATIVE_BITS) -> MuPrediction:
    """Two-term prediction of ``mu_{n, alpha}``.

    Odd alpha:  ``n pi + 2(-1)^n / sin^2(pi/2a) e^{-n pi sin(pi/a)} sin(n pi cos(pi/a))``.
    Even alpha: ``pi/2 + n pi + f (-1)^(n+1) / sin^2(pi/2a) e^{-b sin(pi/a)} cos(b cos(pi/a))``
    with ``b = pi/2 + n pi`` and ``f = 1`` for alpha = 2, else 2.
    alpha = 3 uses the sharper exact-even / ``predict_delta3`` law instead.
    """
    order = as_order(order)
    alpha = order.alpha
    if alpha == 1:
        raise UnsupportedOrderError("alpha = 1: use exact_forms.spectrum1")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    with mp.workprec(precision_bits):
        pi = mp.pi
        if alpha == 3:
            if n < 2:
                raise DomainError("the alpha = 3 spectrum starts at n = 2")
            base = n * pi
            correction = mp.mpf(0) if n % 2 == 0 else predict_delta3(n, precision_bits)
            return MuPrediction(n, base, correction, mp.exp(-mp.sqrt(3) * pi * n), precision_bits)
        ratio = laplace_ratio(order)
        sin_a = mp.sinpi(mp.mpf(1) / alpha)
        exact_cos = _cos_pi_over(alpha)
        if alpha % 2:
            base = n * pi
            if exact_cos is not None:
                trig = _sin_pi_times(n * exact_cos)
            else:
                trig = mp.sin(n * pi * mp.cospi(mp.mpf(1) / alpha))
            correction = (-1) ** n * ratio * mp.exp(-n * pi * sin_a) * trig
            error_scale = mp.exp(-n * pi * mp.sinpi(mp.mpf(2) / alpha))
        else:
            base = pi / 2 + n * pi
            if exact_cos is not None:
                # cos(b q) with b = pi (n + 1/2): cos(pi x) = sin(pi (x + 1/2))
                trig = _sin_pi_times((n + Fraction(1, 2)) * exact_cos + Fraction(1, 2))
            else:
                trig = mp.cos(base * mp.cospi(mp.mpf(1) / alpha))
            factor = 1 if alpha == 2 else 2
            correction = factor * (-1) ** (n + 1) * (ratio / 2) * mp.exp(-base * sin_a) * trig
            error_scale = mp.exp(-2 * n * pi * sin_a)
        return MuPrediction(n, base, correction, error_scale, precision_bits)


def predict_lambda_min(alpha: int, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """Leading large-alpha law ``sqrt(8 pi alpha) (4 alpha / e)^(2 alpha)``."""
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    with mp.workprec(precision_bits):
        return mp.sqrt(8 * mp.pi * alpha) * (4 * alpha / mp.e) ** (2 * alpha)


def predict_first_index(alpha: int) -> float:
    """Trend ``4 alpha / (pi e)`` for the index of the smallest eigenvalue (not an exact index)."""
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    return float(4 * alpha / (mp.pi * mp.e))
