"""Exact arithmetic in Q(sqrt5) on the basis {1, phi}.

An element ``a + b*phi`` is stored as two reduced :class:`fractions.Fraction`
coefficients; phi = (1 + sqrt5)/2 satisfies phi**2 = phi + 1.  Equality is
coefficient-wise, never numeric.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr

from radixpi.context import RealContext

Rational = Fraction
Coefficient = Union[int, Fraction]

__all__ = [
    "Rational",
    "GoldenElement",
    "PHI",
    "ONE",
    "ZERO",
    "ge_add",
    "ge_sub",
    "ge_neg",
    "ge_mul",
    "ge_inverse",
    "ge_norm",
    "ge_conjugate",
    "ge_to_real",
    "ge_is_square_of",
    "ge_pow",
    "format_element",
    "parse_element",
]


@dataclass(frozen=True)
class GoldenElement:
    a: Fraction
    b: Fraction

    def __init__(self, a: Coefficient = 0, b: Coefficient = 0) -> None:
        object.__setattr__(self, "a", _rational(a))
        object.__setattr__(self, "b", _rational(b))

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_sub(other, self)

    def __neg__(self):
        return ge_neg(self)

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_mul(self, ge_inverse(other))

    def __rtruediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else ge_mul(other, ge_inverse(self))

    def __pow__(self, n: int):
        return ge_pow(self, n)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GoldenElement({format_element(self)!r})"


def _rational(x: Coefficient) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficient must be int or Fraction, not {type(x).__name__}")


def _coerce(x) -> GoldenElement | None:
    if isinstance(x, GoldenElement):
        return x
    if isinstance(x, (int, Fraction)):
        return GoldenElement(x, 0)
    return None


ZERO = GoldenElement(0, 0)
ONE = GoldenElement(1, 0)
PHI = GoldenElement(0, 1)


def ge_add(x: GoldenElement, y: GoldenElement) -> GoldenElement:
    return GoldenElement(x.a + y.a, x.b + y.b)


def ge_neg(x: GoldenElement) -> GoldenElement:
    return GoldenElement(-x.a, -x.b)


def ge_sub(x: GoldenElement, y: GoldenElement) -> GoldenElement:
    return GoldenElement(x.a - y.a, x.b - y.b)


def ge_mul(x: GoldenElement, y: GoldenElement) -> GoldenElement:
    bb = x.b * y.b
    return GoldenElement(x.a * y.a + bb, x.a * y.b + y.a * x.b + bb)


def ge_conjugate(x: GoldenElement) -> GoldenElement:
    """Galois conjugate phi -> 1 - phi, i.e. (a + b) - b*phi."""
    return GoldenElement(x.a + x.b, -x.b)


def ge_norm(x: GoldenElement) -> Fraction:
    """Field norm x * conj(x) = a**2 + a*b - b**2."""
    return x.a * x.a + x.a * x.b - x.b * x.b


def ge_inverse(x: GoldenElement) -> GoldenElement:
    if not x:
        raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
    n = ge_norm(x)
    c = ge_conjugate(x)
    return GoldenElement(c.a / n, c.b / n)


def ge_pow(x: GoldenElement, n: int) -> GoldenElement:
    if n < 0:
        return ge_pow(ge_inverse(x), -n)
    result = ONE
    base = x
    while n:
        if n & 1:
            result = ge_mul(result, base)
        base = ge_mul(base, base)
        n >>= 1
    return result


def ge_is_square_of(x: GoldenElement, y: GoldenElement) -> bool:
    """True iff y*y == x exactly."""
    return ge_mul(y, y) == x


def ge_to_real(x: GoldenElement, ctx: RealContext) -> mpfr:
    """a + b*phi rounded to the context precision.

    Evaluated as (2a + b + b*sqrt5)/2 with guard bits; the guard grows
    until any cancellation between the two terms is covered.
    """
    if ctx.precision_bits < 2:
        raise ValueError("precision must be at least 2 bits")
    if not x.b:
        return ctx.real(x.a)
    rational_part = 2 * x.a + x.b
    guard = 32
    while True:
        with ctx.scope(guard):
            p = mpfr(rational_part.numerator) / rational_part.denominator
            q = mpfr(x.b.numerator) / x.b.denominator * gmpy2.sqrt(5)
            total = p + q
        if total != 0:
            big = max(abs(p), abs(q))
            lost = int(gmpy2.ceil(gmpy2.log2(big / abs(total)))) if big > abs(total) else 0
            if lost + 4 < guard:
                break
        guard *= 2
    with ctx.scope():
        return +gmpy2.div_2exp(total, 1)


_TERM = r"\s*([+-]?\s*\d+)\s*(?:/\s*(\d+))?\s*"
_ELEMENT_RE = re.compile(rf"^{_TERM}\+{_TERM}\*\s*phi\s*$")


def format_element(x: GoldenElement) -> str:
    """Canonical text form ``a/b + c/d*phi``."""
    return (f"{x.a.numerator}/{x.a.denominator} + "
            f"{x.b.numerator}/{x.b.denominator}*phi")


def parse_element(text: str) -> GoldenElement:
    """Inverse of :func:`format_element`; whitespace is optional and a
    missing ``/d`` means denominator 1."""
    m = _ELEMENT_RE.match(text)
    if m is None:
        raise ValueError(f"not a golden element: {text!r}")
    an, ad, bn, bd = m.groups()
    a = Fraction(int(an.replace(" ", "")), int(ad) if ad else 1)
    b = Fraction(int(bn.replace(" ", "")), int(bd) if bd else 1)
    return GoldenElement(a, b)
