"""Grid scans of the characteristic matrix and their dips.

Each row records the column-scaled ``log |det|`` and the smallest singular
value of the column-scaled matrix.  Both vanish (or dive to ``-inf``) at the
eigenvalue roots, so their local minima trace the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .spectral_matrix import NATIVE_BITS, as_order, build_matrix, check_precision, scaled_log_abs_det, smallest_singular_value

MINIMUM_TOLERANCE = 1e-7
MAX_STEP = math.pi / 8


@dataclass(frozen=True)
class ScanRow:
    mu: float
    log_abs_det_scaled: float
    smallest_singular_value: float


def parse_range(text: str) -> tuple[float, float, float]:
    """``"lo:hi:step"`` in raw mu units."""
    try:
        lo, hi, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise DomainError(f"mu range must look like lo:hi:step, got {text!r}") from None
    _check_range(lo, hi, step)
    return lo, hi, step


def _check_range(lo: float, hi: float, step: float) -> None:
    if not 0 < lo <= hi:
        raise DomainError(f"need 0 < lo <= hi, got {lo}:{hi}")
    if not 0 < step <= MAX_STEP:
        # a coarser grid can step over a dip (roots are about pi apart)
        raise DomainError(f"step must be in (0, pi/8], got {step}")


def grid(lo: float, hi: float, step: float) -> list[float]:
    count = int(mp.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def sigma_min(order, mu, precision_bits: int = NATIVE_BITS) -> float:
    return float(abs(smallest_singular_value(build_matrix(order, mu, precision_bits)).value()))


def scan_row(order, mu: float, precision_bits: int = NATIVE_BITS) -> ScanRow:
    log_det = scaled_log_abs_det(order, mu, precision_bits)
    return ScanRow(mu, float(log_det), sigma_min(order, mu, precision_bits))


def scan(order, lo: float, hi: float, step: float, precision_bits: int = NATIVE_BITS) -> list[ScanRow]:
    """Rows on the grid ``lo, lo + step, ...`` up to ``hi``, ordered by mu."""
    order = as_order(order)
    precision_bits = check_precision(precision_bits)
    _check_range(lo, hi, step)
    return [scan_row(order, mu, precision_bits) for mu in grid(lo, hi, step)]


def local_minima(rows: list[ScanRow], order=None, precision_bits: int = NATIVE_BITS, refine: bool = True) -> list[float]:
    """Locations of the interior dips of the smallest singular value.

    With ``refine`` (needs ``order``), each dip is polished by a bounded
    scalar minimization between its grid neighbours.
    """
    values = [r.smallest_singular_value for r in rows]
    found = []
    for i in range(1, len(rows) - 1):
        if values[i] < values[i - 1] and values[i] <= values[i + 1]:
            if not refine:
                found.append(rows[i].mu)
                continue
            if order is None:
                raise DomainError("refining minima needs the operator order")
            result = minimize_scalar(
                lambda mu: sigma_min(order, mu, precision_bits),
                bounds=(rows[i - 1].mu, rows[i + 1].mu),
                method="bounded",
                options={"xatol": MINIMUM_TOLERANCE},
            )
            found.append(float(result.x))
    return found
