"""Characteristic matrix of the clamped operator ``(-1)**alpha u^(2 alpha) = lambda u``.

The general solution is ``sum_j C_j exp(mu * eta_j * x)`` with
``mu = lambda**(1/(2 alpha))`` and ``eta_j`` the 2 alpha-th roots of
``(-1)**alpha``.  Imposing ``u = u' = ... = u^(alpha-1) = 0`` at ``x = 0`` and
``x = 1`` gives a ``2 alpha x 2 alpha`` linear system whose determinant
vanishes exactly at the eigenvalues.

Column ``j`` of that matrix grows like ``exp(mu * max(0, Re eta_j))``.  The
growth is split off into ``column_exponents`` so every stored mantissa has
modulus at most one.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import mpmath as mp
import numpy as np

from . import jacobi
from .errors import ConfigurationError, DomainError, InternalConsistencyError, UnsupportedOrderError
from .scaled import ScaledValue

NATIVE_BITS = 53
GUARD_BITS = 24
PHASE_TOLERANCE = 1e-6
CALIBRATION_POINTS = (1.0, 2.0)


@dataclass(frozen=True)
class OperatorOrder:
    """Half the differential order; ``alpha = 2k+1`` or ``alpha = 2k``."""

    alpha: int

    def __post_init__(self):
        if not isinstance(self.alpha, int) or isinstance(self.alpha, bool):
            raise DomainError(f"alpha must be an integer, got {self.alpha!r}")
        if self.alpha < 1:
            raise DomainError(f"alpha must be >= 1, got {self.alpha}")

    @property
    def parity(self) -> str:
        return "odd" if self.alpha % 2 else "even"

    @property
    def k(self) -> int:
        return self.alpha // 2

    @property
    def size(self) -> int:
        return 2 * self.alpha

    def direction_powers(self) -> list[int]:
        """Exponents ``p_j`` with ``eta_j = zeta**p_j`` and ``zeta = exp(i pi / (2 alpha))``."""
        if self.alpha % 2:
            return [2 * j + 1 for j in range(self.size)]
        return [2 * j for j in range(self.size)]


def as_order(order) -> OperatorOrder:
    if isinstance(order, OperatorOrder):
        return order
    return OperatorOrder(order)


def check_precision(precision_bits: int) -> int:
    if int(precision_bits) != precision_bits or precision_bits < NATIVE_BITS:
        raise ConfigurationError(f"precision_bits must be an integer >= {NATIVE_BITS}, got {precision_bits}")
    return int(precision_bits)


def directions(order, precision_bits: int = NATIVE_BITS) -> list:
    """The characteristic directions ``eta_j`` at the given precision."""
    order = as_order(order)
    with mp.workprec(precision_bits):
        return [mp.expjpi(mp.mpf(p) / order.size) for p in order.direction_powers()]


@dataclass(frozen=True)
class ScaledComplexMatrix:
    """``A_alpha(mu)`` with column ``j`` equal to ``entries[:, j] * exp(column_exponents[j])``."""

    order: OperatorOrder
    mu: mp.mpf
    entries: mp.matrix
    column_exponents: tuple
    precision_bits: int

    def represented(self) -> mp.matrix:
        """The unscaled matrix.  Only sensible when ``mu`` is moderate."""
        with mp.workprec(self.precision_bits):
            n = self.order.size
            out = mp.matrix(n, n)
            for j in range(n):
                scale = mp.exp(self.column_exponents[j])
                for i in range(n):
                    out[i, j] = self.entries[i, j] * scale
            return out

    @property
    def total_exponent(self) -> mp.mpf:
        with mp.workprec(self.precision_bits):
            return mp.fsum(self.column_exponents)


def build_matrix(order, mu, precision_bits: int = NATIVE_BITS) -> ScaledComplexMatrix:
    """Build the column-scaled characteristic matrix.

    Row ``r < alpha`` holds ``eta_j**r`` and row ``alpha + r`` holds
    ``exp(mu eta_j) eta_j**r``.  For ``alpha = 3`` the columns coincide with
    the classical ``(a w, w^2, b w, b/w, w^-2, a/w)`` layout, where
    ``a = exp(mu sqrt(3)/2)``, ``b = 1/a`` and ``w = exp(i mu / 2)``.
    """
    order = as_order(order)
    precision_bits = check_precision(precision_bits)
    with mp.workprec(precision_bits):
        mu = mp.mpf(mu)
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        n = order.size
        entries = mp.matrix(n, n)
        exponents = []
        for j, eta in enumerate(directions(order, precision_bits)):
            growth = mu * max(mp.mpf(0), eta.real)
            exponents.append(growth)
            top = mp.exp(-growth)
            bottom = mp.exp(mu * mp.mpc(min(mp.mpf(0), eta.real), eta.imag))
            power = mp.mpc(1)
            for r in range(order.alpha):
                entries[r, j] = top * power
                entries[order.alpha + r, j] = bottom * power
                power *= eta
        return ScaledComplexMatrix(order, mu, entries, tuple(exponents), precision_bits)


def _lu_determinant(a: mp.matrix) -> ScaledValue:
    """Determinant by Gaussian elimination with partial pivoting."""
    n = a.rows
    a = a.copy()
    det = ScaledValue.normalized(1)
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r, col]))
        pivot = a[pivot_row, col]
        if pivot == 0:
            return ScaledValue.normalized(0)
        if pivot_row != col:
            for j in range(n):
                a[col, j], a[pivot_row, j] = a[pivot_row, j], a[col, j]
            det = -det
        det = det * ScaledValue.normalized(pivot)
        for r in range(col + 1, n):
            factor = a[r, col] / pivot
            if factor == 0:
                continue
            for j in range(col + 1, n):
                a[r, j] -= factor * a[col, j]
    return det


def scaled_determinant(m: ScaledComplexMatrix) -> ScaledValue:
    """Determinant of the represented matrix as a :class:`ScaledValue`."""
    with mp.workprec(m.precision_bits):
        det = _lu_determinant(m.entries)
        if det.is_zero():
            return det
        return ScaledValue.normalized(det.mantissa, det.exponent + m.total_exponent)


def _column_scaled_det(order: OperatorOrder, mu, precision_bits: int) -> mp.mpc:
    """``det A(mu) * exp(-sum column_exponents)`` accurate to ``precision_bits``.

    The mantissa determinant suffers cancellation where it is small (low
    ``mu`` or near a root); the working precision is raised by the number of
    bits lost until the estimate is stable.
    """
    hadamard = order.alpha * math.log2(order.size) / 2
    working = precision_bits + GUARD_BITS + int(hadamard)
    value = None
    for _ in range(4):
        m = build_matrix(order, mu, working)
        with mp.workprec(working):
            det = _lu_determinant(m.entries)
            value = det.value()
        if value == 0:
            lost = working
        else:
            with mp.workprec(working):
                lost = max(0, -int(mp.floor(mp.log(abs(value), 2))))
        needed = precision_bits + GUARD_BITS + int(hadamard) + lost
        if working >= needed:
            break
        working = min(needed, 8 * precision_bits + 512)
    return value


def _phase_of(order: OperatorOrder, mu, precision_bits: int):
    with mp.workprec(precision_bits):
        d = _column_scaled_det(order, mu, precision_bits)
        return mp.arg(d), abs(d)


def _reduce_mod_pi(theta):
    """Representative of ``theta`` modulo pi in ``(-pi/2, pi/2]``."""
    theta = theta - mp.pi * mp.floor(theta / mp.pi)
    if theta > mp.pi / 2:
        theta -= mp.pi
    return theta


@functools.lru_cache(maxsize=None)
def determinant_phase(alpha: int, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """Constant phase (mod pi) of ``det A_alpha(mu)`` along real ``mu``.

    Measured at ``mu = 1`` and confirmed at ``mu = 2``; a calibration point that
    sits within ``1e-3`` of a root is shifted by 0.1.
    """
    order = as_order(alpha)
    bits = max(precision_bits, 128)
    thetas = []
    with mp.workprec(bits):
        for point in CALIBRATION_POINTS:
            mu = mp.mpf(point)
            for _ in range(20):
                theta, size = _phase_of(order, mu, bits)
                _, left = _phase_of(order, mu - mp.mpf("1e-3"), bits)
                _, right = _phase_of(order, mu + mp.mpf("1e-3"), bits)
                if size > 0 and size >= 1e-3 * min(left, right):
                    break
                mu += mp.mpf("0.1")
            thetas.append(_reduce_mod_pi(theta))
        drift = abs(_reduce_mod_pi(thetas[1] - thetas[0]))
        if drift > PHASE_TOLERANCE:
            raise InternalConsistencyError(
                f"determinant phase for alpha={alpha} drifts by {mp.nstr(drift, 5)} rad between calibration points"
            )
        return thetas[0]


def normalized_real_det(order, mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """Real root-finding objective ``F(mu)``.

    ``F(mu) = Re(det A(mu) * exp(-i theta)) * exp(-sum column_exponents)``,
    where ``theta`` is the constant phase from :func:`determinant_phase`.
    ``F`` is real analytic and changes sign at simple roots.
    """
    order = as_order(order)
    precision_bits = check_precision(precision_bits)
    theta = determinant_phase(order.alpha, precision_bits)
    with mp.workprec(precision_bits + GUARD_BITS):
        mu = mp.mpf(mu)
        if not mu > 0:
            raise DomainError(f"mu must be positive, got {mu}")
        d = _column_scaled_det(order, mu, precision_bits)
        value = mp.re(d * mp.expj(-theta))
    with mp.workprec(precision_bits):
        return +value


def scaled_log_abs_det(order, mu, precision_bits: int = NATIVE_BITS) -> mp.mpf:
    """``log |det A(mu)| - sum column_exponents`` (the quantity plotted by scans)."""
    order = as_order(order)
    with mp.workprec(precision_bits):
        d = _column_scaled_det(order, mu, precision_bits)
        return mp.log(abs(d)) if d != 0 else mp.ninf


def singular_values(m: ScaledComplexMatrix) -> list:
    """Singular values of the mantissa matrix (unit column exponents), descending.

    At native precision the rotations run on a complex128 copy.
    """
    if m.precision_bits <= NATIVE_BITS:
        entries = np.array(m.entries.tolist(), dtype=np.complex128)
        return [mp.mpf(float(v)) for v in jacobi.singular_values_native(entries)]
    with mp.workprec(m.precision_bits):
        return jacobi.singular_values(m.entries)


def smallest_singular_value(m: ScaledComplexMatrix) -> ScaledValue:
    """Smallest singular value of the mantissa matrix.

    The column exponents are *not* reapplied: the scan quantity is the
    smallest singular value after each column is rescaled by
    ``exp(-column_exponents[j])``, which vanishes exactly where the
    determinant does.
    """
    with mp.workprec(m.precision_bits):
        return ScaledValue.normalized(singular_values(m)[-1])


# -- Vandermonde minors and Laplace-expansion constants --------------------


def rho(order, d: int) -> mp.mpf:
    """Chord ``2 sin(d pi / (2 alpha))`` between characteristic directions."""
    order = as_order(order)
    if not 1 <= d <= order.size - 1:
        raise DomainError(f"d must lie in [1, {order.size - 1}], got {d}")
    return 2 * mp.sinpi(mp.mpf(d) / order.size)


def _check_columns(order: OperatorOrder, columns) -> tuple:
    cols = tuple(sorted(columns))
    if len(cols) != order.alpha or len(set(cols)) != order.alpha:
        raise DomainError(f"need {order.alpha} distinct columns, got {columns!r}")
    if cols[0] < 1 or cols[-1] > order.size:
        raise DomainError(f"columns must lie in 1..{order.size}, got {columns!r}")
    return cols


def vandermonde_minor_exact(order, columns) -> tuple[Counter, int]:
    """Exact form of the minor ``V_M`` on the first ``alpha`` rows.

    Returns ``(chords, phase)`` with ``V_M = prod_d rho_d**chords[d] * zeta**phase``,
    ``zeta = exp(i pi / (2 alpha))`` and ``phase`` reduced mod ``4 alpha``.
    Columns are 1-based.  Each factor is
    ``zeta**p_l - zeta**p_j = rho_{l-j} * zeta**((p_l + p_j)/2 + alpha)``.
    """
    order = as_order(order)
    cols = _check_columns(order, columns)
    powers = order.direction_powers()
    chords: Counter = Counter()
    phase = 0
    for j, l in itertools.combinations(cols, 2):
        pj, pl = powers[j - 1], powers[l - 1]
        chords[l - j] += 1
        phase += (pl + pj) // 2 + order.alpha
    return chords, phase % (4 * order.alpha)


def _evaluate_exact(order: OperatorOrder, chords: Counter, phase: int):
    value = mp.mpf(1)
    for d, count in chords.items():
        value *= rho(order, d) ** count
    return value * mp.expjpi(mp.mpf(phase) / order.size)


def vandermonde_minor(order, columns) -> mp.mpc:
    """Value of ``V_M`` from the product formula (1-based column indices)."""
    order = as_order(order)
    return _evaluate_exact(order, *vandermonde_minor_exact(order, columns))


def complementary_product(order, columns) -> mp.mpc:
    """``V_M * V_M'`` where ``M'`` is the complement of ``M`` in ``1..2 alpha``."""
    order = as_order(order)
    cols = _check_columns(order, columns)
    rest = [c for c in range(1, order.size + 1) if c not in cols]
    chords_m, phase_m = vandermonde_minor_exact(order, cols)
    chords_r, phase_r = vandermonde_minor_exact(order, rest)
    return _evaluate_exact(order, chords_m + chords_r, (phase_m + phase_r) % (4 * order.alpha))


def _rho_product(order: OperatorOrder, exponents: dict[int, int]) -> mp.mpf:
    value = mp.mpf(1)
    for d, e in exponents.items():
        value *= rho(order, d) ** e
    return value


# chord exponents of S and T, known in closed form for alpha = 4 and 5
_S_T_EXPONENTS = {
    4: ({1: 6, 2: 4, 3: 2}, {1: 4, 2: 4, 3: 2, 4: 2}),
    5: ({1: 8, 2: 6, 3: 4, 4: 2}, {1: 6, 2: 6, 3: 4, 4: 2, 5: 2}),
}


@dataclass(frozen=True)
class LaplaceConstants:
    """Leading Laplace-expansion constants of ``det A_alpha(mu)``.

    ``S`` and ``T`` are only available for ``alpha`` in {4, 5}; ``ratio`` is
    ``-K2/K1 = 2 / sin(pi/(2 alpha))**2`` for every ``alpha >= 2``.
    """

    alpha: OperatorOrder
    S: Optional[mp.mpf]
    T: Optional[mp.mpf]
    ratio: mp.mpf
    rho: tuple

    def ratio_from_s_t(self) -> Optional[mp.mpf]:
        if self.S is None or self.T is None:
            return None
        return 2 * self.T / self.S


def laplace_ratio(order) -> mp.mpf:
    order = as_order(order)
    if order.alpha < 2:
        raise UnsupportedOrderError("alpha = 1 has no second-order term")
    return 2 / mp.sinpi(mp.mpf(1) / order.size) ** 2


def laplace_constants(order) -> LaplaceConstants:
    order = as_order(order)
    ratio = laplace_ratio(order)
    chords = tuple(rho(order, d) for d in range(1, order.size))
    s = t = None
    if order.alpha in _S_T_EXPONENTS:
        s_exp, t_exp = _S_T_EXPONENTS[order.alpha]
        s = _rho_product(order, s_exp)
        t = _rho_product(order, t_exp)
    return LaplaceConstants(order, s, t, ratio, chords)


def column_subsets(order) -> Iterable[tuple]:
    """All 1-based column subsets of size ``alpha``."""
    order = as_order(order)
    return itertools.combinations(range(1, order.size + 1), order.alpha)
