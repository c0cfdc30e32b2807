"""Numbers kept as ``mantissa * exp(exponent)``.

Entries of the characteristic matrix grow like ``exp(mu * cos(pi / (2 alpha)))``.
Keeping the growth in a separate real exponent lets the mantissas stay of
order one no matter how large ``mu`` is.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp


@dataclass(frozen=True)
class ScaledValue:
    """The complex number ``mantissa * e**exponent``.

    Instances built through :meth:`normalized` satisfy
    ``1 <= |mantissa| < e``, or ``mantissa == 0`` together with ``exponent == 0``.
    """

    mantissa: mp.mpc
    exponent: mp.mpf

    @classmethod
    def normalized(cls, mantissa, exponent=0) -> "ScaledValue":
        mantissa = mp.mpc(mantissa)
        exponent = mp.mpf(exponent)
        if mantissa == 0:
            return cls(mp.mpc(0), mp.mpf(0))
        shift = mp.floor(mp.log(abs(mantissa)))
        mantissa = mantissa * mp.exp(-shift)
        # guard the half-open interval against rounding at the boundaries
        if abs(mantissa) >= mp.e:
            mantissa /= mp.e
            shift += 1
        elif abs(mantissa) < 1:
            mantissa *= mp.e
            shift -= 1
        return cls(mantissa, exponent + shift)

    @classmethod
    def from_value(cls, value) -> "ScaledValue":
        return cls.normalized(value, 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __mul__(self, other: "ScaledValue") -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            other = ScaledValue.from_value(other)
        return ScaledValue.normalized(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.exponent)

    def log_abs(self) -> mp.mpf:
        """Natural log of the modulus; ``-inf`` for zero."""
        if self.mantissa == 0:
            return mp.ninf
        return mp.log(abs(self.mantissa)) + self.exponent

    def phase(self) -> mp.mpf:
        return mp.arg(self.mantissa)

    def value(self) -> mp.mpc:
        """The represented number; mpmath exponents do not overflow."""
        return self.mantissa * mp.exp(self.exponent)

    def relative_to(self, log_scale) -> mp.mpc:
        """Return ``value * exp(-log_scale)`` without forming ``value``."""
        return self.mantissa * mp.exp(self.exponent - log_scale)
