"""Exact certificates for the (ir)rationality of ``cos(pi / alpha)``.

Iterating ``phi(y) = 2y^2 - 1`` doubles an angle: ``phi^n(cos t) = cos(2^n t)``.
For ``beta = 9`` or a prime ``p >= 5`` some ``2^n = 1 (mod beta)``, hence
``phi^n(x) = +-x`` at ``x = cos(pi/beta)``.  The resulting integer polynomial
has constant term 1 and leading coefficient a power of two, so its only
possible rational roots are ``+-1/2^j``; none lies in ``(1/2, 1)``, where
``cos(pi/beta)`` lives.  Divisor reduction carries the conclusion from
``beta`` to every multiple ``alpha``.

All arithmetic here is exact (Python ints and Fractions).
"""

from __future__ import annotations

import decimal
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

DENSE_MAX_ITERATIONS = 14
LAZY_MAX_ITERATIONS = 30
MAX_WITNESS_DEGREE = 4096
EXACT_EVALUATION_BITS = 20000
CHECK_PRIMES = (2**61 - 1, 2**89 - 1, 2**107 - 1)


def _int_text(n: int) -> str:
    # Decimal conversion is exact and not subject to the int -> str digit limit
    return str(decimal.Decimal(n))


class IntPolynomial:
    """Dense polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coefficient])

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def constant(self) -> int:
        return self.coefficients[0] if self.coefficients else 0

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def _binary(self, other, op):
        if isinstance(other, int):
            other = IntPolynomial([other])
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial([op(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return IntPolynomial([-c for c in self.coefficients])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coefficients])
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                if b:
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        """``self(inner(y))`` by Horner's scheme."""
        acc = IntPolynomial([])
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return "IntPolynomial(0)"
        return f"IntPolynomial({self.to_string()})"

    def to_string(self, var: str = "y") -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _int_text(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{_int_text(mag)}{power}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


PHI = IntPolynomial([-1, 0, 2])
Y = IntPolynomial([0, 1])


def _chebyshev_coefficient(m: int, k: int) -> int:
    """Coefficient of ``y^(m-2k)`` in ``T_m``, ``m >= 1``.

    ``(-1)^k 2^(m-2k-1) (C(m-k, k) + C(m-k-1, k-1))``; the bracket is even when
    ``m = 2k`` so the half power stays integral.
    """
    inner = math.comb(m - k, k) + (math.comb(m - k - 1, k - 1) if k >= 1 else 0)
    shift = m - 2 * k - 1
    value = inner << shift if shift >= 0 else inner >> 1
    return -value if k % 2 else value


class PhiIterate:
    """``phi^n`` without materialized coefficients (degree ``2^n``).

    ``phi^n = T_{2^n}``, the Chebyshev polynomial, so single coefficients have
    a closed form and values come from iterating ``phi``.
    """

    def __init__(self, n: int):
        self.n = n

    @property
    def degree(self) -> int:
        return 2**self.n

    @property
    def leading(self) -> int:
        return 1 << (self.degree - 1)

    @property
    def constant(self) -> int:
        return self.coefficient(0)

    def coefficient(self, k: int) -> int:
        m = self.degree
        if k < 0 or k > m or (m - k) % 2:
            return 0
        return _chebyshev_coefficient(m, (m - k) // 2)

    def __call__(self, x):
        for _ in range(self.n):
            x = 2 * x * x - 1
        return x

    def to_dense(self) -> IntPolynomial:
        if self.n > DENSE_MAX_ITERATIONS:
            raise ResourceLimitError(f"phi^{self.n} has degree {self.degree}; dense form is capped at 2^{DENSE_MAX_ITERATIONS}")
        m = self.degree
        coeffs = [0] * (m + 1)
        for k in range(m // 2 + 1):
            coeffs[m - 2 * k] = _chebyshev_coefficient(m, k)
        return IntPolynomial(coeffs)


@functools.lru_cache(maxsize=32)
def phi_iterate(n: int):
    """``n``-fold iterate of ``2y^2 - 1``.

    Dense :class:`IntPolynomial` up to ``n = 14``; a coefficient-on-demand
    :class:`PhiIterate` beyond that (``n <= 30``).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > LAZY_MAX_ITERATIONS:
        raise ResourceLimitError(f"phi^{n} has degree 2^{n}, beyond the supported 2^{LAZY_MAX_ITERATIONS}")
    lazy = PhiIterate(n)
    return lazy.to_dense() if n <= DENSE_MAX_ITERATIONS else lazy


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class Witness:
    """Integer polynomial with ``cos(pi/beta)`` as a root.

    ``sign`` is the ``(-1)^l`` of ``phi^n(x) = (-1)^l x``; it is ``None`` for
    ``beta`` in {4, 6}, whose witnesses have no linear correction term.
    """

    beta: int
    polynomial: IntPolynomial
    sign: Optional[int]
    iterations: int
    construction: str


def witness_degree(beta: int) -> int:
    if beta == 4:
        return 2
    if beta == 6:
        return 4
    if beta == 9:
        return 2**6
    return 2 ** (beta - 1)


def usable_divisors(alpha: int) -> list[int]:
    """Divisors of ``alpha`` in {4, 6, 9} or prime and ``>= 5``."""
    return [b for b in range(4, alpha + 1) if alpha % b == 0 and (b in (4, 6, 9) or (b >= 5 and _is_prime(b)))]


@functools.lru_cache(maxsize=None)
def _witness_for_beta(beta: int) -> Witness:
    if beta == 4:
        return Witness(4, PHI, None, 1, "phi(y)")
    if beta == 6:
        return Witness(6, phi_iterate(2) * 2 + 1, None, 2, "2 phi^2(y) + 1")
    n = 6 if beta == 9 else beta - 1
    if pow(2, n, beta) != 1:
        raise DomainError(f"2^{n} != 1 mod {beta}")
    ell = (2**n - 1) // beta
    sign = -1 if ell % 2 else 1
    poly = phi_iterate(n) - Y * sign
    op = "+" if sign < 0 else "-"
    return Witness(beta, poly, sign, n, f"phi^{n}(y) {op} y")


def witness_polynomial(alpha: int) -> Witness:
    """Cheapest witness among the usable divisors of ``alpha >= 4``."""
    if alpha < 4:
        raise DomainError(f"alpha must be >= 4 (cos(pi/alpha) is rational below), got {alpha}")
    beta = min(usable_divisors(alpha), key=witness_degree)
    if witness_degree(beta) > MAX_WITNESS_DEGREE:
        raise ResourceLimitError(
            f"alpha={alpha}: cheapest witness (beta={beta}) has degree {witness_degree(beta)} > {MAX_WITNESS_DEGREE}"
        )
    return _witness_for_beta(beta)


@dataclass(frozen=True)
class CandidateEvaluation:
    """One rational-root-theorem candidate and the proof of its status.

    ``proof`` is ``"exact"`` (``value`` holds ``P(candidate)``),
    ``"valuation"`` (``detail = (r, v)``: the numerator ``q^d P(p/q)`` has a
    unique term of minimal ``r``-adic valuation ``v``, so it is nonzero) or
    ``"modular"`` (``detail = (prime, residue)`` with a nonzero residue).
    """

    candidate: Fraction
    value: Optional[Fraction]
    is_root: bool
    proof: str
    detail: Optional[tuple] = None


def _divisors_of_power_of_two_times_small(n: int) -> list[int]:
    n = abs(n)
    twos = (n & -n).bit_length() - 1
    odd = n >> twos
    if odd > 10**12:
        raise ResourceLimitError(f"odd part {odd} too large to enumerate divisors")
    odd_divs = [d for d in range(1, math.isqrt(odd) + 1) if odd % d == 0]
    odd_divs = sorted(set(odd_divs + [odd // d for d in odd_divs]))
    return sorted(d << t for d in odd_divs for t in range(twos + 1))


def _valuation(n: int, r: int) -> int:
    if r == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % r == 0:
        n //= r
        v += 1
    return v


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def rational_root_scan(p: IntPolynomial) -> list[CandidateEvaluation]:
    """Evaluate ``p`` at every rational-root-theorem candidate ``+-a/b``.

    ``a`` runs over divisors of the constant term and ``b`` over divisors of
    the leading coefficient.  Small values are evaluated exactly; for huge
    ones the numerator ``b^d p(a/b)`` is shown nonzero by a unique
    minimal-valuation term, or modulo a large prime.
    """
    if not isinstance(p, IntPolynomial) or p.is_zero():
        raise DomainError("rational root scan needs a nonzero integer polynomial")
    results: list[CandidateEvaluation] = []
    coeffs = p.coefficients
    low = next(i for i, c in enumerate(coeffs) if c != 0)
    if low > 0:
        results.append(CandidateEvaluation(Fraction(0), Fraction(0), True, "exact"))
        coeffs = coeffs[low:]
    reduced = IntPolynomial(coeffs)
    d = reduced.degree
    nums = _divisors_of_power_of_two_times_small(reduced.constant)
    dens = _divisors_of_power_of_two_times_small(reduced.leading)
    candidates = sorted({Fraction(s * a, b) for a in nums for b in dens for s in (1, -1)})
    coeff_bits = max(abs(c).bit_length() for c in coeffs)

    valuation_cache: dict[int, np.ndarray] = {}

    def valuations(r: int) -> np.ndarray:
        if r not in valuation_cache:
            big = np.iinfo(np.int64).max // 4
            valuation_cache[r] = np.array([_valuation(c, r) if c else big for c in coeffs], dtype=np.int64)
        return valuation_cache[r]

    degrees_left = d - np.arange(d + 1, dtype=np.int64)

    for x in candidates:
        a, b = x.numerator, x.denominator
        cost = coeff_bits + d * (a.bit_length() + b.bit_length())
        if cost <= EXACT_EVALUATION_BITS:
            value = reduced(x)
            results.append(CandidateEvaluation(x, value, value == 0, "exact"))
            continue
        if b > 1:
            r = _smallest_prime_factor(b)
            vb = _valuation(b, r)
            term_vals = valuations(r) + degrees_left * vb
            lowest = int(term_vals.min())
            if int((term_vals == lowest).sum()) == 1:
                results.append(CandidateEvaluation(x, None, False, "valuation", (r, lowest)))
                continue
        for prime in CHECK_PRIMES:
            # numerator b^d p(a/b) mod prime, Horner in a with b powers
            acc = 0
            for i in range(d, -1, -1):
                acc = (acc * a + coeffs[i] * pow(b, d - i, prime)) % prime
            if acc:
                results.append(CandidateEvaluation(x, None, False, "modular", (prime, acc)))
                break
        else:
            value = reduced(x)
            results.append(CandidateEvaluation(x, value, value == 0, "exact"))
    return results


@dataclass(frozen=True)
class RationalityVerdict:
    """Whether ``cos(pi/alpha)`` is rational, with an exact certificate when not."""

    alpha: int
    is_rational: bool
    value: Optional[Fraction] = None
    witness: Optional[Witness] = None
    candidates_checked: tuple = ()
    rational_roots: tuple = ()
    certified: bool = True
    note: str = ""

    @property
    def witness_divisor(self) -> Optional[int]:
        return self.witness.beta if self.witness else None

    @property
    def witness_polynomial(self) -> Optional[IntPolynomial]:
        return self.witness.polynomial if self.witness else None


RATIONAL_VALUES = {1: Fraction(-1), 2: Fraction(0), 3: Fraction(1, 2)}
COS_INTERVAL = (Fraction(1, 2), Fraction(1))


@functools.lru_cache(maxsize=None)
def _certificate(beta: int) -> tuple:
    witness = _witness_for_beta(beta)
    scan = tuple(rational_root_scan(witness.polynomial))
    roots = tuple(c.candidate for c in scan if c.is_root)
    lo, hi = COS_INTERVAL
    inside = [r for r in roots if lo < r < hi]
    if inside:
        raise DomainError(f"beta={beta}: rational roots {inside} inside ({lo}, {hi}); certificate fails")
    return witness, scan, roots


def is_cos_rational(alpha: int) -> RationalityVerdict:
    """Decide rationality of ``cos(pi/alpha)``.

    For ``alpha >= 4`` the verdict carries the witness divisor ``beta``, its
    polynomial and the full candidate scan.  Every rational root of the
    witness lies outside ``(1/2, 1)`` while ``cos(pi/beta)`` lies inside, so
    ``cos(pi/beta)`` is irrational, and so is ``cos(pi/alpha)`` since
    ``cos(pi/beta) = T_{alpha/beta}(cos(pi/alpha))``.
    """
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    if alpha in RATIONAL_VALUES:
        return RationalityVerdict(alpha, True, RATIONAL_VALUES[alpha])
    try:
        beta = witness_polynomial(alpha).beta
    except ResourceLimitError as exc:
        return RationalityVerdict(
            alpha,
            False,
            certified=False,
            note=f"{exc}; verdict rests on Niven's theorem, witness not evaluated",
        )
    witness, scan, roots = _certificate(beta)
    return RationalityVerdict(alpha, False, None, witness, scan, roots)


def has_arithmetic_progression(alpha: int) -> bool:
    """True iff ``cos(pi/alpha)`` is a nonzero rational, i.e. ``alpha`` in {1, 3}."""
    verdict = is_cos_rational(alpha)
    return verdict.is_rational and verdict.value != 0


def _fraction_text(x: Fraction) -> str:
    if x.denominator == 1:
        return _int_text(x.numerator)
    return f"{_int_text(x.numerator)}/{_int_text(x.denominator)}"


def verdict_to_json(verdict: RationalityVerdict, include_coefficients: Optional[bool] = None) -> dict:
    """JSON-ready certificate; big integers and rationals become strings."""
    out = {
        "alpha": verdict.alpha,
        "is_rational": verdict.is_rational,
        "value": _fraction_text(verdict.value) if verdict.value is not None else None,
        "has_arithmetic_progression": verdict.is_rational and verdict.value != 0,
        "certified": verdict.certified,
    }
    if verdict.note:
        out["note"] = verdict.note
    if verdict.witness is not None:
        w = verdict.witness
        poly = w.polynomial
        if include_coefficients is None:
            include_coefficients = poly.degree <= 64
        wp = {
            "construction": w.construction,
            "iterations": w.iterations,
            "sign": w.sign,
            "degree": poly.degree,
            "leading_coefficient": _int_text(poly.leading),
            "constant_term": _int_text(poly.constant),
        }
        if include_coefficients:
            wp["coefficients"] = [_int_text(c) for c in poly.coefficients]
        out["witness_divisor"] = w.beta
        out["witness_polynomial"] = wp
        out["excluded_interval"] = [_fraction_text(COS_INTERVAL[0]), _fraction_text(COS_INTERVAL[1])]
        out["rational_roots"] = [_fraction_text(r) for r in verdict.rational_roots]
        out["candidates_checked"] = [
            {
                "candidate": _fraction_text(c.candidate),
                "value": _fraction_text(c.value) if c.value is not None else None,
                "is_root": c.is_root,
                "proof": c.proof,
                "detail": [_int_text(v) for v in c.detail] if c.detail else None,
            }
            for c in verdict.candidates_checked
        ]
    return out
