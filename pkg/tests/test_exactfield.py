from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radixpi.context import RealContext, format_fixed
from radixpi.exactfield import (
    ONE,
    PHI,
    ZERO,
    GoldenElement,
    format_element,
    ge_add,
    ge_conjugate,
    ge_inverse,
    ge_is_square_of,
    ge_mul,
    ge_norm,
    ge_pow,
    ge_sub,
    ge_to_real,
    parse_element,
)


def G(a, b):
    return GoldenElement(a, b)


@pytest.mark.parametrize("x, y, expected", [
    (G(3, -1), G(0, 1), G(3, 0)),
    (G(0, 0), G(1, 1), G(1, 1)),
    (G(2, 1), G(1, -1), G(3, 0)),
])
def test_add_examples(x, y, expected):
    assert ge_add(x, y) == expected


@pytest.mark.parametrize("x, y, expected", [
    (G(0, 1), G(0, 1), G(1, 1)),
    (G(1, 1), G(3, -1), G(2, 1)),
    (G(-1, 1), G(-1, 1), G(2, -1)),
])
def test_mul_examples(x, y, expected):
    assert ge_mul(x, y) == expected


@pytest.mark.parametrize("x, expected", [(G(0, 1), G(-1, 1)), (G(1, 0), G(1, 0)), (G(1, 1), G(2, -1))])
def test_inverse_examples(x, expected):
    assert ge_inverse(x) == expected


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        ge_inverse(ZERO)


@pytest.mark.parametrize("x, expected", [(G(0, 1), -1), (G(1, 0), 1), (G(3, -1), 5)])
def test_norm_examples(x, expected):
    assert ge_norm(x) == expected
    assert ge_mul(x, ge_conjugate(x)) == G(expected, 0)


def test_to_real_examples():
    assert format_fixed(ge_to_real(PHI, RealContext(128)), 39) == "1.61803398874989484820458683436563811772"
    # 64 bits carry a little over 19 decimal digits
    assert format_fixed(ge_to_real(G(1, 1), RealContext(64)), 19) == "2.618033988749894848"
    assert format_fixed(ge_to_real(G(2, 1), RealContext(64)), 11) == "3.6180339887"


def test_to_real_cancellation():
    # (1 - phi)**40 = phi**-40 has huge coefficients of opposite sign
    x = ge_pow(G(1, -1), 40)
    ctx = RealContext(128)
    value = ge_to_real(x, ctx)
    with gmpy2.context(precision=1024):
        exact = (2 / (1 + gmpy2.sqrt(5))) ** 40
    assert abs(value - exact) <= 2 * ctx.ulp(exact)


@pytest.mark.parametrize("x, y, expected", [
    (G(1, 1), G(0, 1), True),
    (G(2, -1), G(-1, 1), True),
    (G(2, 1), G(1, 1), False),
])
def test_square_predicate(x, y, expected):
    assert ge_is_square_of(x, y) is expected


def test_operators_mix_with_rationals():
    assert PHI * PHI - PHI == ONE
    assert 3 - PHI == G(3, -1)
    assert Fraction(6, 5) * (1 + PHI) == G(Fraction(6, 5), Fraction(6, 5))
    assert 1 / PHI == PHI - 1
    assert PHI ** -2 == G(2, -1)
    assert not ZERO and PHI


def test_coefficients_are_reduced():
    x = G(Fraction(4, 8), Fraction(-6, 9))
    assert (x.a, x.b) == (Fraction(1, 2), Fraction(-2, 3))
    with pytest.raises(TypeError):
        G(0.5, 0)


def test_text_roundtrip():
    x = G(Fraction(-3, 4), Fraction(5, 6))
    assert format_element(x) == "-3/4 + 5/6*phi"
    assert parse_element(format_element(x)) == x
    assert parse_element(" 3 + -1 * phi ") == G(3, -1)
    assert parse_element("0/1+1/1*phi") == PHI
    with pytest.raises(ValueError):
        parse_element("3 - phi")


def fibonacci(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def test_phi_powers_follow_fibonacci():
    powers = [ONE, PHI]
    for n in range(2, 41):
        powers.append(ge_mul(powers[-1], PHI))
        assert powers[n] == ge_add(powers[n - 1], powers[n - 2])
        assert powers[n] == G(fibonacci(n - 1), fibonacci(n))
        assert ge_pow(PHI, n) == powers[n]


rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))
elements = st.builds(GoldenElement, rationals, rationals)
small = st.builds(GoldenElement, st.integers(-1000, 1000), st.integers(-1000, 1000))


@settings(max_examples=10_000)
@given(elements, elements, elements)
def test_field_axioms(x, y, z):
    assert ge_add(x, y) == ge_add(y, x)
    assert ge_mul(x, y) == ge_mul(y, x)
    assert ge_add(ge_add(x, y), z) == ge_add(x, ge_add(y, z))
    assert ge_mul(ge_mul(x, y), z) == ge_mul(x, ge_mul(y, z))
    assert ge_mul(x, ge_add(y, z)) == ge_add(ge_mul(x, y), ge_mul(x, z))
    assert ge_sub(ge_add(x, y), y) == x
    if x:
        assert ge_mul(x, ge_inverse(x)) == ONE


@settings(max_examples=10_000)
@given(elements, elements)
def test_norm_is_multiplicative(x, y):
    assert ge_norm(ge_mul(x, y)) == ge_norm(x) * ge_norm(y)


@settings(max_examples=300)
@given(small, small)
def test_to_real_respects_products(x, y):
    ctx = RealContext(256)
    product = ge_to_real(ge_mul(x, y), ctx)
    with ctx.scope():
        separate = ge_to_real(x, ctx) * ge_to_real(y, ctx)
    scale = max(abs(product), abs(separate), gmpy2.mpfr(1))
    assert abs(product - separate) <= 8 * ctx.ulp(scale)


@given(elements)
def test_parse_inverts_format(x):
    assert parse_element(format_element(x)) == x
