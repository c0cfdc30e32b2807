import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from canonical_spectra.scaled import ScaledValue

finite = st.floats(min_value=-1e200, max_value=1e200, allow_nan=False).filter(lambda x: x != 0)


@given(finite, finite, st.floats(min_value=-1e4, max_value=1e4))
def test_normalized_mantissa_range_and_value(re, im, exponent):
    v = ScaledValue.normalized(mp.mpc(re, im), exponent)
    assert 1 <= abs(v.mantissa) < mp.e
    expected = mp.log(abs(mp.mpc(re, im))) + exponent
    assert v.log_abs() == pytest.approx(float(expected), rel=1e-12, abs=1e-12)
    assert float(v.phase()) == pytest.approx(float(mp.arg(mp.mpc(re, im))), abs=1e-12)


def test_zero_is_canonical():
    z = ScaledValue.normalized(0, 17)
    assert z.is_zero() and z.exponent == 0
    assert z.log_abs() == mp.ninf


@given(finite, finite)
def test_product_adds_logs(x, y):
    a, b = ScaledValue.from_value(x), ScaledValue.from_value(y)
    p = a * b
    assert float(p.log_abs()) == pytest.approx(float(a.log_abs() + b.log_abs()), rel=1e-12, abs=1e-12)
    assert 1 <= abs(p.mantissa) < mp.e


def test_huge_exponent_does_not_overflow():
    big = ScaledValue.normalized(2, 10**6)
    assert big.log_abs() == pytest.approx(10**6 + float(mp.log(2)))
    assert abs(big.relative_to(10**6) - 2) < 1e-14
    assert (-big).mantissa == -big.mantissa
