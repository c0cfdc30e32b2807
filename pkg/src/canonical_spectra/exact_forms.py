"""Closed forms for alpha = 1, 2, 3.

These are independent of the general determinant machinery and serve as
its oracles.  Every function takes ``precision_bits`` so the residuals can
also drive root refinement far below double-precision epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError
from .scaled import ScaledValue
from .spectral_matrix import NATIVE_BITS, check_precision


@dataclass(frozen=True)
class Det3Parameters:
    """Free parameters of the alpha = 3 matrix; the operator itself has ``b = 1/a``, ``|omega| = 1``."""

    a: complex
    b: complex
    omega: complex

    def __post_init__(self):
        if self.omega == 0:
            raise DomainError("omega must be nonzero")

    @classmethod
    def from_mu(cls, mu, precision_bits: int = NATIVE_BITS) -> "Det3Parameters":
        with mp.workprec(precision_bits):
            mu = mp.mpf(mu)
            a = mp.exp(mu * mp.sqrt(3) / 2)
            return cls(a, 1 / a, mp.expj(mu / 2))


def det3_general(p: Det3Parameters):
    """Determinant of the six-by-six alpha = 3 matrix for arbitrary ``a, b, omega``.

    Generic in the number type: works for ``complex`` and ``mpc`` alike.
    """
    a, b, w = p.a, p.b, p.omega
    if w == 0:
        raise DomainError("omega must be nonzero")
    wi = 1 / w
    minus = w - wi
    plus = w + wi
    return (
        12 * a * b * (a + b) * minus
        - 3 * (a * a + b * b) * minus * plus
        + 3 * a * b * minus * plus * (w * w + wi * wi - 8)
        + 12 * (a + b) * minus
    )


def det3_matrix(p: Det3Parameters, precision_bits: int = NATIVE_BITS) -> mp.matrix:
    """The alpha = 3 matrix written out in terms of ``a, b, omega``."""
    with mp.workprec(precision_bits):
        eps = mp.expjpi(mp.mpf(1) / 6)
        a, b, w = mp.mpc(p.a), mp.mpc(p.b), mp.mpc(p.omega)
        factors = [a * w, w * w, b * w, b / w, 1 / (w * w), a / w]
        m = mp.matrix(6, 6)
        for j in range(6):
            e = eps ** (2 * j + 1)
            for r in range(3):
                m[r, j] = e**r
                m[3 + r, j] = factors[j] * e**r
        return m


def _alpha3_bracket_scaled(mu, x):
    """Bracket of the alpha = 3 determinant divided by ``exp(x)``, ``x = mu sqrt(3)``."""
    c_half = mp.cos(mu / 2)
    ex = mp.exp(-x)
    return (
        2 * (mp.exp(-x / 2) + mp.exp(-3 * x / 2))  # 4 cosh(x/2) e^-x
        - (1 + mp.exp(-2 * x)) / 2 * c_half  # cosh(x) e^-x cos(mu/2)
        + ex * (c_half * mp.cos(mu) - 4 * c_half)
    )


def det3_mu(mu, precision_bits: int = NATIVE_BITS) -> ScaledValue:
    """``24 i sin(mu/2) [4 cosh(mu sqrt3/2) - cosh(mu sqrt3) cos(mu/2) + cos(mu/2) cos(mu) - 4 cos(mu/2)]``."""
    precision_bits = check_precision(precision_bits)
    with mp.workprec(precision_bits):
        mu = mp.mpf(mu)
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        x = mu * mp.sqrt(3)
        mantissa = 24j * mp.sin(mu / 2) * _alpha3_bracket_scaled(mu, x)
        return ScaledValue.normalized(mantissa, x)


def alpha3_bracket(mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """The bracket factor of :func:`det3_mu` divided by ``cosh(mu sqrt 3)``.

    Its zeros are the odd-index roots; it equals ``-odd_equation_residual3``.
    """
    with mp.workprec(precision_bits):
        mu = mp.mpf(mu)
        x = mu * mp.sqrt(3)
        return _alpha3_bracket_scaled(mu, x) * 2 / (1 + mp.exp(-2 * x))


def odd_equation_residual3(mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``cos(mu/2) - 4 cosh(x/2)/cosh(x) - [cos(mu/2) cos(mu) - 4 cos(mu/2)]/cosh(x)``, ``x = mu sqrt 3``.

    The hyperbolic quotients are rewritten with decaying exponentials only.
    """
    precision_bits = check_precision(precision_bits)
    with mp.workprec(precision_bits + 10):
        mu = mp.mpf(mu)
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        x = mu * mp.sqrt(3)
        e1, e2 = mp.exp(-x), mp.exp(-2 * x)
        c_half = mp.cos(mu / 2)
        ratio = 4 * mp.exp(-x / 2) * (1 + e1) / (1 + e2)
        sech = 2 * e1 / (1 + e2)
        value = c_half - ratio - (c_half * mp.cos(mu) - 4 * c_half) * sech
    with mp.workprec(precision_bits):
        return +value


def det2_mu(mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``8 (1 - cos(mu) cosh(mu))``; mpmath exponents cannot overflow."""
    with mp.workprec(precision_bits):
        mu = mp.mpf(mu)
        if mu < 0:
            raise DomainError(f"mu must be non-negative, got {mu}")
        return 8 * (1 - mp.cos(mu) * mp.cosh(mu))


def eq2_residual(mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``cos(mu) - 1/cosh(mu)``."""
    with mp.workprec(precision_bits):
        mu = mp.mpf(mu)
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        return mp.cos(mu) - mp.sech(mu)


def spectrum1(n: int, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``lambda_{n,1} = (n pi)^2``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    with mp.workprec(precision_bits):
        return (n * mp.pi) ** 2
