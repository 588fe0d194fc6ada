import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from suqdirac.cgc import q_dim_sum
from suqdirac.qarith import (QParam, Scalar, get_precision, q_binom, q_int, q_power,
                             scalar_sum, set_precision, weyl_dimension, weyl_q_dimension)
from suqdirac.tableaux import young_diagrams

qs = st.sampled_from([0.1, 0.3, 0.5, 0.8, 0.95])


def test_qint_examples():
    assert float(q_int(0, 0.5)) == 0.0
    assert float(q_int(1, 0.5)) == pytest.approx(1.0, rel=1e-15)
    assert float(q_int(3, 0.5)) == pytest.approx(5.25, rel=1e-14)


def test_qbinom_examples():
    for n in range(6):
        assert float(q_binom(n, 0, 0.5)) == pytest.approx(1.0)
    for q in (0.3, 0.5, 0.8):
        assert float(q_binom(2, 1, q)) == pytest.approx(q + 1 / q, rel=1e-14)
    assert float(q_binom(4, 2, 0.5)) == pytest.approx(22.3125, rel=1e-14)


def test_qbinom_range():
    with pytest.raises(ValueError):
        q_binom(3, 4, 0.5)
    with pytest.raises(ValueError):
        q_binom(3, -1, 0.5)


def test_weyl_q_dimension_examples():
    assert float(weyl_q_dimension((0, 0, 0), 0.5)) == 1.0
    assert float(weyl_q_dimension((1, 0), 0.5)) == pytest.approx(2.5, rel=1e-14)
    assert float(weyl_q_dimension((1, 0, 0), 0.5)) == pytest.approx(5.25, rel=1e-14)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
def test_qparam_rejects(q):
    with pytest.raises(ValueError):
        QParam(q)
    with pytest.raises(ValueError):
        q_int(2, q)


@given(n=st.integers(-60, 60), q=qs)
def test_qint_odd_and_positive(n, q):
    a, b = q_int(n, q), q_int(-n, q)
    assert a.sign == -b.sign
    if n:
        assert math.isclose(a.log, b.log, rel_tol=1e-12, abs_tol=1e-12)
    if n > 0:
        assert a.sign == 1


@given(n=st.integers(0, 40), q=qs, data=st.data())
def test_qbinom_symmetric(n, q, data):
    r = data.draw(st.integers(0, n))
    a, b = q_binom(n, r, q), q_binom(n, n - r, q)
    assert math.isclose(a.log, b.log, rel_tol=1e-12, abs_tol=1e-12)


@given(n=st.integers(1, 30), q=qs)
def test_qint_matches_direct(n, q):
    direct = (q ** n - q ** -n) / (q - 1 / q)
    assert float(q_int(n, q)) == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
def test_weyl_q_dimension_matches_sum(ell, q):
    for lam in young_diagrams(ell, 4):
        a = float(weyl_q_dimension(lam, q))
        b = float(q_dim_sum(lam, q))
        assert a == pytest.approx(b, rel=1e-10)


def test_weyl_dimension_is_q_limit():
    # q -> 1 recovers the classical dimension
    for lam in young_diagrams(2, 4):
        assert float(weyl_q_dimension(lam, 0.999999)) == pytest.approx(weyl_dimension(lam), rel=1e-6)


def test_q_power_range():
    # q^{+-4000} at q=0.5 stays finite in log form
    assert q_power(4000, 0.5).log == pytest.approx(4000 * math.log(0.5))
    assert q_power(-4000, 0.5).sign == 1


@given(x=st.floats(-2000, 2000), neg=st.booleans())
def test_scalar_roundtrip_extended(x, neg):
    old = get_precision()
    set_precision("extended")
    try:
        s = Scalar(-1 if neg else 1, x)
        back = Scalar.encode(s.decode())
        assert back.sign == s.sign
        # relative 1e-14 on the value means absolute 1e-14 on its log
        assert abs(back.log - x) <= 1e-14 * max(1.0, abs(x)) + 1e-14
    finally:
        set_precision(old)


@given(x=st.floats(-700, 700))
def test_scalar_roundtrip_double(x):
    s = Scalar(1, x)
    assert abs(Scalar.encode(s.decode()).log - x) <= 1e-14 * max(1.0, abs(x))


def test_set_precision_rejects():
    with pytest.raises(ValueError):
        set_precision("quad")


@given(a=st.floats(-50, 50), b=st.floats(-50, 50))
def test_scalar_mul_div(a, b):
    x, y = Scalar(1, a), Scalar(-1, b)
    assert (x * y).sign == -1 and (x * y).log == pytest.approx(a + b)
    assert (x / y).log == pytest.approx(a - b)
    assert (x * y / y).log == pytest.approx(a)


def test_scalar_sum_cancels_and_scales():
    big = [Scalar(1, 3000.0), Scalar(1, 3000.0 + math.log(2))]
    assert scalar_sum(big).log == pytest.approx(3000.0 + math.log(3))
    assert scalar_sum([Scalar(1, 5.0), Scalar(-1, 5.0)]).sign == 0
    assert float(scalar_sum([Scalar.encode(0.25), Scalar.encode(-1.0)])) == pytest.approx(-0.75)
