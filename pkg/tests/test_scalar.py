import cmath
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chmetf.errors import OrderMismatch
from chmetf.scalar import (
    CycInt,
    RootOfUnity,
    UnitComplex,
    cyc_add,
    cyc_eval,
    cyc_is_zero,
    cyc_mul,
    cyclotomic_poly,
    reduction_matrix,
    root_to_complex,
)


def C(q, *coeffs):
    return CycInt(q, coeffs)


@pytest.mark.parametrize(
    "q, expected",
    [
        (1, (-1, 1)),
        (3, (1, 1, 1)),
        (6, (1, -1, 1)),
    ],
)
def test_cyclotomic_poly_examples(q, expected):
    assert cyclotomic_poly(q) == expected


def test_cyclotomic_poly_matches_sympy_up_to_100():
    x = sympy.Symbol("x")
    for q in range(1, 101):
        ref = sympy.Poly(sympy.cyclotomic_poly(q, x), x).all_coeffs()[::-1]
        got = cyclotomic_poly(q)
        assert list(got) == [int(c) for c in ref], q
        assert len(got) - 1 == sympy.totient(q)


def test_cyclotomic_poly_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_add_examples():
    assert cyc_add(C(3, 1, 0, 0), C(3, 0, 1, 1)) == C(3, 1, 1, 1)
    a = C(5, 3, -1, 0, 2, 7)
    assert cyc_add(a, CycInt.zero(5)) == a
    assert cyc_add(C(2, 1, 0), C(2, -1, 0)) == C(2, 0, 0)


def test_mul_examples():
    w, w2 = RootOfUnity(3, 1).to_cyc(), RootOfUnity(3, 2).to_cyc()
    assert cyc_mul(w, w2) == C(3, 1, 0, 0)
    a = C(4, 2, -3, 0, 1)
    assert cyc_mul(a, CycInt.integer(4, 1)) == a
    i = C(4, 0, 1, 0, 0)
    assert cyc_mul(i, i) == C(4, 0, 0, 1, 0)


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        cyc_add(C(2, 1, 0), C(3, 1, 0, 0))
    with pytest.raises(OrderMismatch):
        cyc_mul(C(2, 1, 0), C(3, 1, 0, 0))


def test_mul_overflow_is_detected():
    big = CycInt(2, (2**62, 0))
    with pytest.raises(OverflowError):
        cyc_mul(big, CycInt(2, (4, 0)))
    with pytest.raises(OverflowError):
        CycInt(1, (2**63,))


@pytest.mark.parametrize(
    "a, zero",
    [
        (C(3, 1, 1, 1), True),
        (C(3, 2, 2, 2), True),
        (C(3, 1, 1, 0), False),
        (C(6, 1, 0, 0, 1, 0, 0), True),  # 1 + (-1)
        (C(6, 1, 0, 1, 0, 1, 0), True),  # 1 + w + w^2 at q = 6
        (C(4, 1, 0, 0, 0), False),
    ],
)
def test_is_zero_examples(a, zero):
    assert cyc_is_zero(a) is zero


def test_is_zero_oracle_value():
    # |1 + w| = 1 for w a primitive cube root
    assert abs(1 + cmath.exp(2j * math.pi / 3)) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "q, e, expected",
    [(1, 0, 1 + 0j), (4, 1, 1j), (3, 1, complex(-0.5, math.sqrt(3) / 2))],
)
def test_root_to_complex(q, e, expected):
    assert root_to_complex(RootOfUnity(q, e)) == pytest.approx(expected, abs=1e-15)


def test_root_of_unity_invariants():
    with pytest.raises(ValueError):
        RootOfUnity(3, 3)
    with pytest.raises(ValueError):
        RootOfUnity(0, 0)


def test_unit_complex_tolerance():
    UnitComplex.from_angle(1.234)
    with pytest.raises(ValueError):
        UnitComplex(1.0 + 1e-9, 0.0)


def test_reduction_matrix_rows_are_remainders():
    for q in (1, 2, 3, 4, 6, 12, 15):
        red = reduction_matrix(q)
        phi = sympy.Poly(sympy.cyclotomic_poly(q, sympy.Symbol("x")), sympy.Symbol("x"))
        for j in range(q):
            rem = sympy.Poly(sympy.Symbol("x") ** j, sympy.Symbol("x")).rem(phi).all_coeffs()[::-1]
            rem = [int(c) for c in rem] + [0] * (red.shape[1] - len(rem))
            assert list(red[j]) == rem


orders = st.integers(min_value=1, max_value=24)


@st.composite
def cyc_pairs(draw):
    q = draw(orders)
    coeffs = st.lists(st.integers(-6, 6), min_size=q, max_size=q)
    return CycInt(q, draw(coeffs)), CycInt(q, draw(coeffs))


@settings(max_examples=200, deadline=None)
@given(cyc_pairs())
def test_exact_and_float_products_agree(pair):
    a, b = pair
    assert abs(cyc_eval(cyc_mul(a, b)) - cyc_eval(a) * cyc_eval(b)) <= 1e-12 * max(1.0, abs(cyc_eval(a)) * abs(cyc_eval(b))) * 10


@settings(max_examples=300, deadline=None)
@given(cyc_pairs())
def test_zero_test_agrees_with_numeric_value(pair):
    a, _ = pair
    value = abs(cyc_eval(a))
    if cyc_is_zero(a):
        assert value < 1e-10
    # both exact routes agree: long division and the reduction matrix
    assert cyc_is_zero(a) == (not any(a.reduced()))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.data())
def test_vanishing_sums_are_recognised(q, data):
    # sums over full cosets of a subgroup of roots vanish
    d = data.draw(st.sampled_from([d for d in range(2, q + 1) if q % d == 0] or [None]))
    if d is None:
        return
    shift = data.draw(st.integers(0, q - 1))
    c = [0] * q
    for t in range(d):
        c[(shift + t * (q // d)) % q] += 1
    assert cyc_is_zero(CycInt(q, c))


def test_conjugate_and_integer_value():
    w = RootOfUnity(3, 1).to_cyc()
    assert w.conjugate() == RootOfUnity(3, 2).to_cyc()
    minus_two = w + w + w.conjugate() + w.conjugate()  # 4 Re(w) = -2
    assert minus_two.as_integer() == -2
    assert w.as_integer() is None
    assert np.isclose(complex(minus_two), -2)
