"""Named verification suites with measured numbers.

Every suite returns a list of :class:`CheckResult`; the CLI prints one line
per check and exits nonzero when any fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import mpmath as mp
import numpy as np

from . import exact_forms
from .asymptotics import predict_delta3, predict_lambda_min, predict_mu
from .eigensolver import asymptotic_base, min_eigenvalue, spectrum
from .errors import DomainError
from .plotting import Series
from .spectral_matrix import (
    as_order,
    build_matrix,
    laplace_constants,
    normalized_real_det,
    scaled_determinant,
)

TABLE_ALPHA3 = {
    3: "9.4270555708",
    5: "15.7079533785",
    7: "21.9911486179",
    9: "28.2743338821",
    11: "34.5575191894",
}
TABLE_TOLERANCE = 1e-9
EXTENDED_BITS = 128
FIT_BITS = 256
DECAY_INDICES = range(10, 21)
DECAY_TOLERANCE = 0.2
LAPLACE_WINDOW = (30.0, 50.0)
LAPLACE_SAMPLES = 201
LAPLACE_TOLERANCE = 1e-3


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    expected: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: measured {self.measured}, expected {self.expected}"


@dataclass(frozen=True)
class SuiteReport:
    name: str
    checks: list
    series: Optional[Series] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _fmt(x, digits: int = 12) -> str:
    return mp.nstr(x, digits)


def table_suite(precision_bits: int = EXTENDED_BITS) -> list[CheckResult]:
    """Odd-index alpha = 3 roots against the tabulated values."""
    records = {r.n: r for r in spectrum(3, max(TABLE_ALPHA3) - 1, precision_bits)}
    out = []
    for n, text in TABLE_ALPHA3.items():
        err = abs(records[n].mu - mp.mpf(text))
        out.append(
            CheckResult(
                f"alpha=3 n={n} |mu - {text}|",
                bool(err < TABLE_TOLERANCE),
                _fmt(err, 3),
                f"< {TABLE_TOLERANCE:g}",
            )
        )
    return out


def even_roots_alpha3(n_max: int = 20, precision_bits: int = EXTENDED_BITS) -> list[CheckResult]:
    """General-solver roots at even ``n`` versus ``n pi``, before the exact snap."""
    from .eigensolver import find_roots

    out = []
    for n in range(2, n_max + 1, 2):
        with mp.workprec(precision_bits):
            target = n * mp.pi
        roots = find_roots(3, target - 0.5, target + 0.5, precision_bits)
        err = min(abs(r - target) for r in roots) if roots else mp.inf
        out.append(CheckResult(f"alpha=3 n={n} |mu - n pi|", bool(err < 1e-12), _fmt(err, 3), "< 1e-12"))
    return out


def delta3_suite(indices=(3, 5, 7), precision_bits: int = EXTENDED_BITS) -> list[CheckResult]:
    records = {r.n: r for r in spectrum(3, max(indices) - 1, precision_bits)}
    out = []
    for n in indices:
        ratio = records[n].delta / predict_delta3(n, precision_bits)
        out.append(CheckResult(f"alpha=3 delta_{n} / prediction", bool(0.99 <= ratio <= 1.01), _fmt(ratio, 8), "in [0.99, 1.01]"))
    return out


def det3_oracle(samples: int = 1000, seed: int = 20240601, precision_bits: int = 106) -> list[CheckResult]:
    """Closed-form alpha = 3 determinant against a brute-force LU at random ``(a, b, omega)``."""
    rng = random.Random(seed)
    worst = mp.mpf(0)
    with mp.workprec(precision_bits):
        for _ in range(samples):
            a = mp.exp(rng.uniform(-3, 3)) * mp.expj(rng.uniform(-mp.pi, mp.pi))
            b = mp.exp(rng.uniform(-3, 3)) * mp.expj(rng.uniform(-mp.pi, mp.pi))
            w = mp.expj(rng.uniform(-mp.pi, mp.pi))
            p = exact_forms.Det3Parameters(a, b, w)
            closed = exact_forms.det3_general(p)
            brute = mp.det(exact_forms.det3_matrix(p, precision_bits))
            worst = max(worst, abs(closed - brute) / abs(brute))
    return [CheckResult(f"det A_3 closed form, {samples} random samples, worst relative error", bool(worst < 1e-10), _fmt(worst, 3), "< 1e-10")]


def det2_oracle(lo: float = 0.1, hi: float = 20.0, points: int = 400, precision_bits: int = EXTENDED_BITS) -> list[CheckResult]:
    """``det A_2`` against ``8(1 - cos mu cosh mu)`` up to one constant unit factor.

    The factor is read off at ``mu = 1``; it must have modulus one.
    """
    with mp.workprec(precision_bits):
        phase = scaled_determinant(build_matrix(2, 1, precision_bits)).value() / exact_forms.det2_mu(1, precision_bits)
        worst = abs(abs(phase) - 1)
        for mu in mp.linspace(lo, hi, points):
            value = scaled_determinant(build_matrix(2, mu, precision_bits)).value()
            expected = exact_forms.det2_mu(mu, precision_bits) * phase
            worst = max(worst, abs(value - expected) / abs(expected))
    return [CheckResult(f"det A_2 vs 8(1 - cos mu cosh mu) on [{lo}, {hi}], worst relative error", bool(worst < 1e-10), _fmt(worst, 3), "< 1e-10")]


def closed_form_suite() -> list[CheckResult]:
    return det3_oracle() + det2_oracle()


def decay_target(alpha: int) -> float:
    if alpha % 2:
        return float(-mp.pi * mp.sinpi(mp.mpf(2) / alpha))
    return float(-2 * mp.pi * mp.sinpi(mp.mpf(1) / alpha))


def decay_errors(alpha: int, indices=DECAY_INDICES, precision_bits: int = FIT_BITS) -> dict[int, mp.mpf]:
    """``|mu_n - predict_mu(n)|`` for the requested indices."""
    order = as_order(alpha)
    start = asymptotic_base(order, indices[0]) - mp.pi / 2
    records = spectrum(order, len(indices), precision_bits, start=float(start))
    return {r.n: abs(r.mu - predict_mu(order, r.n, precision_bits).mu) for r in records if r.n in indices}


def decay_slope(errors: dict[int, mp.mpf]) -> float:
    """Least-squares slope of ``log error`` against ``n``."""
    ns = sorted(errors)
    return float(np.polyfit(ns, [float(mp.log(errors[n])) for n in ns], 1)[0])


def decay_check(alpha: int, errors: dict[int, mp.mpf] | None = None, precision_bits: int = FIT_BITS) -> CheckResult:
    if errors is None:
        errors = decay_errors(alpha, precision_bits=precision_bits)
    slope, target = decay_slope(errors), decay_target(alpha)
    rel = abs(slope - target) / abs(target)
    lo, hi = min(errors), max(errors)
    return CheckResult(
        f"alpha={alpha} log|mu_n - prediction| slope over n in [{lo}, {hi}]",
        bool(rel <= DECAY_TOLERANCE),
        f"{slope:.4f} (ratio {slope / target:.3f})",
        f"{target:.4f} within 20%",
    )


def laplace_fit(alpha: int, window=LAPLACE_WINDOW, samples: int = LAPLACE_SAMPLES, precision_bits: int = EXTENDED_BITS) -> mp.mpf:
    """Least-squares ``-K2/K1`` from the column-scaled determinant.

    Basis: ``trig(mu)`` and ``exp(-sin(pi/alpha) mu) trig(cos(pi/alpha) mu)``
    with ``trig = sin`` for odd and ``cos`` for even alpha.
    """
    order = as_order(alpha)
    if alpha < 2:
        raise DomainError("the two-term expansion needs alpha >= 2")
    with mp.workprec(precision_bits):
        trig = mp.sin if alpha % 2 else mp.cos
        gap, s = mp.sinpi(mp.mpf(1) / alpha), mp.cospi(mp.mpf(1) / alpha)
        mus = mp.linspace(window[0], window[1], samples)
        design = mp.matrix(samples, 2)
        rhs = mp.matrix(samples, 1)
        for i, mu in enumerate(mus):
            design[i, 0] = trig(mu)
            design[i, 1] = mp.exp(-gap * mu) * trig(s * mu)
            rhs[i] = normalized_real_det(order, mu, precision_bits)
        k, _ = mp.qr_solve(design, rhs)
        return -k[1] / k[0]


def laplace_checks(alphas=(4, 5)) -> list[CheckResult]:
    out = []
    for alpha in alphas:
        with mp.workprec(EXTENDED_BITS):
            const = laplace_constants(alpha)
            exact_rel = abs(const.ratio_from_s_t() - const.ratio) / const.ratio
        fitted = laplace_fit(alpha)
        rel = abs(fitted - const.ratio) / const.ratio
        out.append(CheckResult(f"alpha={alpha} fitted -K2/K1", bool(rel < LAPLACE_TOLERANCE), _fmt(fitted, 10), f"{_fmt(const.ratio, 10)} within 1e-3"))
        out.append(CheckResult(f"alpha={alpha} 2T/S", bool(exact_rel < 1e-30), _fmt(const.ratio_from_s_t(), 15), _fmt(const.ratio, 15)))
    return out


def asymptotics_suite(alpha: int = 5) -> SuiteReport:
    errors = decay_errors(alpha)
    checks = [decay_check(alpha, errors)]
    if alpha in (4, 5):
        checks += laplace_checks((alpha,))
    ns = sorted(errors)
    series = Series(ns, [float(errors[n]) for n in ns], "n", "|mu_n - prediction|", f"alpha = {alpha}: prediction error", "log")
    return SuiteReport("asymptotics", checks, series)


def lambda_min_ratios(alpha_max: int, precision_bits: int = EXTENDED_BITS) -> dict[int, mp.mpf]:
    return {
        a: min_eigenvalue(a, precision_bits).lam / predict_lambda_min(a, precision_bits)
        for a in range(1, alpha_max + 1)
    }


def lambda_min_suite(alpha_max: int = 6) -> SuiteReport:
    if alpha_max < 2:
        raise DomainError(f"alpha_max must be >= 2, got {alpha_max}")
    ratios = lambda_min_ratios(alpha_max)
    checks = [CheckResult(f"alpha={a} lambda_min / asymptotic law", bool(0.90 < r < 1.00), _fmt(r, 6), "in (0.90, 1.00)") for a, r in ratios.items()]
    values = [ratios[a] for a in sorted(ratios)]
    increasing = all(x < y for x, y in zip(values, values[1:]))
    checks.append(CheckResult(f"ratios strictly increasing for alpha=1..{alpha_max}", increasing, " < ".join(_fmt(v, 4) for v in values), "strictly increasing"))
    series = Series(sorted(ratios), [float(v) for v in values], "alpha", "lambda_min / asymptotic law", "smallest eigenvalue against the large-alpha law")
    return SuiteReport("lambda-min", checks, series)


def run_suite(name: str, alpha: int = 5, alpha_max: int = 6) -> SuiteReport:
    if name == "table":
        return SuiteReport(name, table_suite())
    if name == "closed-form":
        return SuiteReport(name, closed_form_suite())
    if name == "asymptotics":
        return asymptotics_suite(alpha)
    if name == "lambda-min":
        return lambda_min_suite(alpha_max)
    raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")


SUITE_NAMES = ("table", "closed-form", "asymptotics", "lambda-min")
