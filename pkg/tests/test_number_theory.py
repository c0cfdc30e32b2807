import json
import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from canonical_spectra.errors import DomainError, ResourceLimitError
from canonical_spectra.number_theory import (
    COS_INTERVAL,
    PHI,
    Y,
    IntPolynomial,
    PhiIterate,
    has_arithmetic_progression,
    is_cos_rational,
    phi_iterate,
    rational_root_scan,
    usable_divisors,
    verdict_to_json,
    witness_polynomial,
)

small_ints = st.integers(min_value=-50, max_value=50)
polys = st.lists(small_ints, min_size=1, max_size=6).map(IntPolynomial)


def frac(s):
    return Fraction(s)


class TestIntPolynomial:
    def test_trimming_and_zero(self):
        p = IntPolynomial([1, 2, 0, 0])
        assert p.coefficients == (1, 2) and p.degree == 1
        z = IntPolynomial([0, 0])
        assert z.is_zero() and z == IntPolynomial([])

    def test_rendering(self):
        assert PHI.to_string() == "2y^2 - 1"
        assert phi_iterate(2).to_string() == "8y^4 - 8y^2 + 1"

    @given(polys, polys, polys)
    def test_ring_laws(self, p, q, r):
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p - p).is_zero()

    @given(polys, polys, st.fractions(max_denominator=20))
    def test_evaluation_is_a_homomorphism(self, p, q, x):
        assert (p * q)(x) == p(x) * q(x)
        assert p.compose(q)(x) == p(q(x))


class TestPhiIterates:
    @pytest.mark.parametrize("n", range(1, 13))
    def test_degree_leading_constant(self, n):
        p = phi_iterate(n)
        assert p.degree == 2**n
        assert p.leading == 2 ** (2**n - 1)
        if n >= 2:
            assert p.constant == 1 and p(0) == 1

    def test_first_two(self):
        assert phi_iterate(1) == IntPolynomial([-1, 0, 2])
        assert phi_iterate(2) == IntPolynomial([1, 0, -8, 0, 8])

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 10) for n in range(1, 10) if m + n <= 10])
    def test_semigroup(self, m, n):
        assert phi_iterate(m + n) == phi_iterate(m).compose(phi_iterate(n))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_chebyshev_recurrence_oracle(self, n):
        assert list(phi_iterate(n).coefficients) == oracles.chebyshev_by_recurrence(2**n)

    @pytest.mark.parametrize("alpha", range(1, 13))
    def test_trig_consistency(self, alpha):
        with mp.workprec(128):
            x = mp.cospi(mp.mpf(1) / alpha)
        for n in range(1, 9):
            # the expanded form has coefficients up to about 2^(1.3 * 2^n): evaluate it with room for them
            with mp.workprec(2 * 2**n + 256):
                value = phi_iterate(n)(x)
            with mp.workprec(128):
                assert abs(value - mp.cospi(mp.mpf(2**n) / alpha)) < 1e-25

    def test_lazy_twenty(self):
        p = phi_iterate(20)
        assert isinstance(p, PhiIterate)
        assert p.degree == 2**20 and p.leading == 2 ** (2**20 - 1) and p.constant == 1
        assert p.coefficient(2**20 - 2) == -(2**20) * 2 ** (2**20 - 3)
        assert p.coefficient(1) == 0
        assert p(Fraction(1, 2)) == Fraction(-1, 2)

    def test_lazy_matches_dense(self):
        lazy, dense = PhiIterate(9), phi_iterate(9)
        assert all(lazy.coefficient(k) == dense.coefficient(k) for k in range(dense.degree + 1))
        assert lazy.to_dense() == dense

    def test_limits(self):
        with pytest.raises(DomainError):
            phi_iterate(0)
        with pytest.raises(ResourceLimitError):
            phi_iterate(31)
        with pytest.raises(ResourceLimitError):
            PhiIterate(16).to_dense()


class TestWitness:
    def test_alpha9(self):
        w = witness_polynomial(9)
        assert (w.beta, w.sign, w.iterations) == (9, -1, 6)
        assert w.polynomial == phi_iterate(6) + Y

    def test_alpha5(self):
        w = witness_polynomial(5)
        assert (w.beta, w.sign) == (5, -1) and w.polynomial.degree == 16
        assert w.polynomial == phi_iterate(4) + Y
        with mp.workprec(128):
            x = mp.cospi(mp.mpf(1) / 5)
        with mp.workprec(400):
            assert abs(w.polynomial(x)) < 1e-30

    def test_alpha12_uses_four(self):
        w = witness_polynomial(12)
        assert w.beta == 4 and w.polynomial == PHI

    def test_alpha6(self):
        w = witness_polynomial(6)
        assert w.polynomial == IntPolynomial([3, 0, -16, 0, 16])
        assert w.polynomial == (IntPolynomial([-1, 0, 4]) * IntPolynomial([-3, 0, 4]))

    @pytest.mark.parametrize("alpha", [4, 5, 6, 7, 9, 10, 11, 12, 13, 15, 18, 20, 21, 26, 27, 35])
    def test_root_is_cos_pi_over_beta(self, alpha):
        w = witness_polynomial(alpha)
        assert alpha % w.beta == 0
        degree = w.polynomial.degree
        with mp.workprec(2 * degree + 200):
            x = mp.cospi(mp.mpf(1) / w.beta)
            assert abs(w.polynomial(x)) < 1e-40

    def test_every_alpha_has_a_usable_divisor(self):
        for alpha in range(4, 400):
            assert usable_divisors(alpha)

    def test_errors(self):
        with pytest.raises(DomainError):
            witness_polynomial(3)
        with pytest.raises(ResourceLimitError):
            witness_polynomial(17)


class TestRationalRootScan:
    def test_phi(self):
        scan = rational_root_scan(PHI)
        assert {c.candidate: c.value for c in scan} == {1: 1, -1: 1, frac("1/2"): frac("-1/2"), frac("-1/2"): frac("-1/2")}
        assert not any(c.is_root for c in scan)

    def test_cos_pi_over_six_minimal_polynomial(self):
        scan = rational_root_scan(IntPolynomial([-3, 0, 4]))
        expected = {frac(s) * sign for s in ["1", "3", "1/2", "3/2", "1/4", "3/4"] for sign in (1, -1)}
        assert {c.candidate for c in scan} == expected
        assert all(c.value != 0 and c.proof == "exact" for c in scan)

    def test_alpha9_witness(self):
        scan = rational_root_scan(witness_polynomial(9).polynomial)
        assert {c.candidate for c in scan} == {Fraction(s, 2**j) for j in range(64) for s in (1, -1)}
        assert sorted(c.candidate for c in scan if c.is_root) == [-1, Fraction(1, 2)]
        assert all(c.proof == "exact" and c.value is not None for c in scan)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 6)), min_size=1, max_size=4),
        st.lists(small_ints.filter(bool), min_size=1, max_size=3),
    )
    def test_finds_planted_roots(self, roots, cofactor):
        p = IntPolynomial(cofactor + [1])
        for a, b in roots:
            p = p * IntPolynomial([-a, b])
        planted = {Fraction(a, b) for a, b in roots}
        if p.constant == 0:
            return
        found = {c.candidate for c in rational_root_scan(p) if c.is_root}
        assert planted <= found
        assert all(p(x) == 0 for x in found)

    def test_zero_polynomial(self):
        with pytest.raises(DomainError):
            rational_root_scan(IntPolynomial([]))


class TestVerdicts:
    @pytest.mark.parametrize("alpha,value", [(1, -1), (2, 0), (3, Fraction(1, 2))])
    def test_rational(self, alpha, value):
        v = is_cos_rational(alpha)
        assert v.is_rational and v.value == value and v.witness is None

    def test_alpha9(self):
        v = is_cos_rational(9)
        assert not v.is_rational and v.witness_divisor == 9 and v.certified

    def test_verdict_law(self):
        for alpha in range(1, 61):
            assert is_cos_rational(alpha).is_rational == (alpha <= 3)

    def test_certificate_completeness(self):
        lo, hi = COS_INTERVAL
        for alpha in range(4, 61):
            v = is_cos_rational(alpha)
            if not v.certified:
                assert "Niven" in v.note and usable_divisors(alpha)[0] >= 17
                continue
            assert v.candidates_checked
            for c in v.candidates_checked:
                assert c.is_root or c.value != 0
                if c.proof == "exact":
                    assert isinstance(c.value, Fraction)
                else:
                    assert c.value is None and c.detail
            assert all(not lo < r < hi for r in v.rational_roots)
            assert lo < Fraction(math.cos(math.pi / v.witness_divisor)) < hi

    @pytest.mark.parametrize("alpha", [5, 7, 9, 11, 13])
    def test_root_sets_odd_witnesses(self, alpha):
        assert sorted(is_cos_rational(alpha).rational_roots) == [-1, Fraction(1, 2)]

    def test_root_sets_small_witnesses(self):
        assert sorted(is_cos_rational(6).rational_roots) == [Fraction(-1, 2), Fraction(1, 2)]
        assert is_cos_rational(4).rational_roots == ()

    def test_progressions(self):
        assert [a for a in range(1, 40) if has_arithmetic_progression(a)] == [1, 3]

    def test_json(self):
        doc = verdict_to_json(is_cos_rational(5))
        json.dumps(doc)
        assert doc["witness_divisor"] == 5 and doc["is_rational"] is False
        assert len(doc["witness_polynomial"]["coefficients"]) == 17
        assert doc["witness_polynomial"]["leading_coefficient"] == str(2**15)
        assert doc["rational_roots"] == ["-1", "1/2"]
        assert doc["excluded_interval"] == ["1/2", "1"]
        assert verdict_to_json(is_cos_rational(3))["value"] == "1/2"
        big = verdict_to_json(is_cos_rational(11))
        assert "coefficients" not in big["witness_polynomial"]
        # exact candidate values run past the default int -> str digit limit
        assert max(len(c["value"] or "") for c in big["candidates_checked"]) > 4300
        full = verdict_to_json(is_cos_rational(11), include_coefficients=True)
        assert [int(c) for c in full["witness_polynomial"]["coefficients"]] == list(witness_polynomial(11).polynomial.coefficients)

    def test_domain(self):
        with pytest.raises(DomainError):
            is_cos_rational(0)
