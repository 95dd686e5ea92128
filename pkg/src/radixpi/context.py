"""Arbitrary-precision real context, the arctangent reference for pi and
exact decimal formatting of MPFR values."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import gmpy2
from gmpy2 import mpfr

MIN_PRECISION = 8
REFERENCE_GUARD_BITS = 64


_MPFR = type(mpfr(0))


def as_mpfr(value) -> mpfr:
    """``value`` as an MPFR number without re-rounding existing ones."""
    return value if isinstance(value, _MPFR) else mpfr(value)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class RealContext:
    """Working precision for MPFR arithmetic, rounding to nearest-even.

    Contexts are plain values; ``scope()`` installs the matching gmpy2
    context for the current thread only.
    """

    precision_bits: int

    def __post_init__(self) -> None:
        if int(self.precision_bits) != self.precision_bits or self.precision_bits < MIN_PRECISION:
            raise ValueError(f"precision_bits must be an integer >= {MIN_PRECISION}, got {self.precision_bits!r}")

    @contextmanager
    def scope(self, extra_bits: int = 0) -> Iterator[gmpy2.context]:
        with gmpy2.context(precision=self.precision_bits + extra_bits,
                           round=gmpy2.RoundToNearest) as ctx:
            yield ctx

    def widened(self, extra_bits: int) -> RealContext:
        return RealContext(self.precision_bits + extra_bits)

    def real(self, value) -> mpfr:
        """Round ``value`` (int, Fraction, str, mpfr) to this precision."""
        with self.scope():
            if isinstance(value, Fraction):
                return mpfr(value.numerator) / mpfr(value.denominator)
            return +as_mpfr(value)

    def ulp(self, value) -> mpfr:
        """Unit in the last place of ``value`` at this precision."""
        x = as_mpfr(value)
        if x == 0:
            return gmpy2.mpfr(2) ** (-self.precision_bits)
        exp = int(gmpy2.frexp(x)[0])
        return gmpy2.mul_2exp(mpfr(1), exp - self.precision_bits)

    def tolerance(self, slack_bits: int = 16) -> mpfr:
        """Absolute tolerance 2**-(precision - slack_bits)."""
        return gmpy2.mul_2exp(mpfr(1), -(self.precision_bits - slack_bits))


def _arctan_inverse(x: int, one: int) -> int:
    """Fixed-point arctan(1/x) scaled by ``one``."""
    x2 = x * x
    term = one // x
    total = term
    n = 1
    sign = -1
    while term:
        term //= x2
        total += sign * (term // (2 * n + 1))
        sign = -sign
        n += 1
    return total


@lru_cache(maxsize=32)
def _machin_fixed(bits: int) -> int:
    # pi * 2**bits, truncation error below a few units
    guard = 32
    one = 1 << (bits + guard)
    scaled = 4 * (4 * _arctan_inverse(5, one) - _arctan_inverse(239, one))
    return scaled >> guard


def reference_pi(precision_bits: int) -> mpfr:
    """pi from Machin's arctangent formula in integer arithmetic.

    Evaluated independently of MPFR's own constant and returned with
    ``precision_bits`` of precision.
    """
    fixed = _machin_fixed(precision_bits + 8)
    with gmpy2.context(precision=precision_bits, round=gmpy2.RoundToNearest):
        return gmpy2.mul_2exp(mpfr(fixed), -(precision_bits + 8))


def reference_pi_for(ctx: RealContext) -> mpfr:
    """Reference pi carrying the context precision plus 64 guard bits."""
    return reference_pi(ctx.precision_bits + REFERENCE_GUARD_BITS)


def reference_pi_digits(digits: int) -> str:
    """``digits`` significant decimal digits of pi, round-half-even, from the
    Machin oracle alone."""
    bits = math.ceil(digits * math.log2(10)) + 64
    fixed = _machin_fixed(bits)
    return round_sig(Fraction(fixed, 1 << bits), digits)


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * math.log2(10))


def round_sig(value: Fraction, digits: int) -> str:
    """Fixed notation with ``digits`` significant digits, half-even."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if value == 0:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)
    sign = "-" if value < 0 else ""
    value = abs(value)
    exp10 = _decimal_exponent(value)
    # scaled has exactly `digits` integer digits before rounding
    shift = digits - 1 - exp10
    scaled = value * Fraction(10) ** shift
    q = round(scaled)  # Fraction.__round__ is half-even
    if q >= 10 ** digits:
        exp10 += 1
        shift -= 1
        q = round(value * Fraction(10) ** shift)
    s = _digits(q)
    point = exp10 + 1
    if point <= 0:
        body = "0." + "0" * (-point) + s
    elif point >= len(s):
        body = s + "0" * (point - len(s))
    else:
        body = s[:point] + "." + s[point:]
    return sign + body


def _decimal_exponent(value: Fraction) -> int:
    """floor(log10(value)) for value > 0, exact."""
    bits = value.numerator.bit_length() - value.denominator.bit_length()
    est = math.floor(bits * math.log10(2))
    while Fraction(10) ** est > value:
        est -= 1
    while Fraction(10) ** (est + 1) <= value:
        est += 1
    return est


def _digits(n: int) -> str:
    # mpz conversion is not subject to the int->str digit limit
    return gmpy2.mpz(n).digits(10)


def to_fraction(x) -> Fraction:
    num, den = as_mpfr(x).as_integer_ratio()
    return Fraction(int(num), int(den))


def format_fixed(x, digits: int) -> str:
    """Exact decimal rendering of an MPFR value to ``digits`` significant
    digits, round-half-even."""
    return round_sig(to_fraction(x), digits)


def format_sci(x, digits: int) -> str:
    """Scientific rendering ``d.ddd…e±NN`` with ``digits`` significant digits."""
    value = to_fraction(x)
    if value == 0:
        return "0." + "0" * (digits - 1) + "e+00" if digits > 1 else "0e+00"
    sign = "-" if value < 0 else ""
    value = abs(value)
    exp10 = _decimal_exponent(value)
    q = round(value * Fraction(10) ** (digits - 1 - exp10))
    if q >= 10 ** digits:
        exp10 += 1
        q = round(value * Fraction(10) ** (digits - 1 - exp10))
    s = _digits(q)
    mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{sign}{mant}e{exp10:+03d}"


def format_decimals(x, places: int) -> str:
    """Fixed notation with exactly ``places`` digits after the point."""
    value = to_fraction(x)
    q = round(value * 10 ** places)
    sign = "-" if q < 0 else ""
    s = _digits(abs(q)).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}" if places else sign + s


def format_real(x, digits: int) -> str:
    """Fixed notation up to 40 significant digits, scientific beyond."""
    if digits <= 40:
        return format_fixed(x, digits)
    return format_sci(x, digits)


def correct_bits(estimate, reference) -> float:
    """-log2 of the relative error of ``estimate``; inf when exact."""
    err = abs(as_mpfr(estimate) - as_mpfr(reference))
    if err == 0:
        return math.inf
    return float(-gmpy2.log2(err / abs(as_mpfr(reference))))
