"""Chord-doubling recurrences and nested square roots converging to pi.

Internal convention: for an arc alpha = 2*pi/mu with initial chord
c_0 = 2*sin(alpha/2), the k-th halving has chord c_k = 2*sin(alpha/2**(k+1))
and the estimate is

    pi_k = (mu/2) * 2**k * c_k

which increases monotonically towards pi.  Writing s_k = sqrt(4 - c_k**2)
the halving step is s_{k+1} = sqrt(2 + s_k), c_{k+1} = c_k / s_{k+1}; this
never subtracts nearly equal numbers.  The literal form
sqrt(2 - sqrt(4 - c**2)) is kept for comparison.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

import gmpy2
from gmpy2 import mpfr

from radixpi.context import (
    DomainError,
    RealContext,
    as_mpfr,
    bits_for_digits,
    correct_bits,
    reference_pi_for,
    round_sig,
    to_fraction,
)

if TYPE_CHECKING:
    from radixpi.catalog import FormulaSpec

__all__ = [
    "ChordState",
    "ConvergenceRecord",
    "DigitCapError",
    "PiComputation",
    "chord_double_naive",
    "chord_double_stable",
    "nested_radical_eval",
    "chord_states",
    "pi_estimate",
    "sine_oracle",
    "error_model",
    "iterations_for_bits",
    "compute_pi",
    "compute_pi_detailed",
    "convergence_table",
    "correct_bits_profile",
    "HARD_DIGIT_LIMIT",
    "default_digit_cap",
]

HARD_DIGIT_LIMIT = 100_000
DEFAULT_DIGIT_CAP = 20_000
GUARD_BITS = 64
CLAMP_ULPS = 4


class DigitCapError(ValueError):
    """Requested digit count exceeds the configured resource cap."""


def default_digit_cap() -> int:
    """Digit cap from ``RADIXPI_MAX_DIGITS`` or the built-in default."""
    raw = os.environ.get("RADIXPI_MAX_DIGITS")
    if not raw:
        return DEFAULT_DIGIT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"RADIXPI_MAX_DIGITS must be an integer, got {raw!r}") from None
    return max(1, min(cap, HARD_DIGIT_LIMIT))


def _check_chord(c) -> None:
    if not (0 < c < 2):
        raise DomainError(f"chord must lie in (0, 2), got {c}")


def chord_double_naive(c, ctx: RealContext) -> mpfr:
    """Half-arc chord as printed: sqrt(2 - sqrt(4 - c**2))."""
    _check_chord(c)
    with ctx.scope():
        c = +as_mpfr(c)
        return gmpy2.sqrt(2 - gmpy2.sqrt(4 - c * c))


def chord_double_stable(c, ctx: RealContext) -> mpfr:
    """Half-arc chord via the conjugate: c / sqrt(2 + sqrt(4 - c**2))."""
    _check_chord(c)
    with ctx.scope():
        c = +as_mpfr(c)
        return c / gmpy2.sqrt(2 + gmpy2.sqrt(4 - c * c))


def _clamped_sqrt(radicand, scale, ctx: RealContext):
    if radicand < 0:
        if -radicand > CLAMP_ULPS * ctx.ulp(scale):
            raise DomainError(f"negative radicand {radicand} beyond rounding jitter")
        return mpfr(0)
    return gmpy2.sqrt(radicand)


def nested_radical_eval(l1_sq, depth: int, ctx: RealContext) -> mpfr:
    """sqrt(2 - sqrt(2 + ... sqrt(2 + sqrt(4 - l1_sq)))) with ``depth`` roots.

    Evaluated innermost first exactly as written, so the outer subtraction
    suffers the usual cancellation for large depth.
    """
    if depth < 2:
        raise ValueError("depth must be >= 2")
    if not (0 < l1_sq < 4):
        raise DomainError(f"l1_sq must lie in (0, 4), got {l1_sq}")
    with ctx.scope():
        value = _clamped_sqrt(4 - as_mpfr(l1_sq), 4, ctx)
        for _ in range(depth - 2):
            value = gmpy2.sqrt(2 + value)
        return _clamped_sqrt(2 - value, 2, ctx)


@dataclass(frozen=True)
class ChordState:
    k: int
    chord: mpfr
    spec_id: str
    cofactor: mpfr | None = None  # sqrt(4 - chord**2), when tracked


def chord_states(spec: FormulaSpec, ctx: RealContext, naive: bool = False) -> Iterator[ChordState]:
    """Endless sequence of halved chords starting at c_0 = L1."""
    c, s = spec.seed(ctx)
    k = 0
    yield ChordState(0, c, spec.id, s)
    with ctx.scope():
        while True:
            k += 1
            if naive:
                # literal recurrence; at low precision the chord collapses to 0
                c = gmpy2.sqrt(2 - gmpy2.sqrt(4 - c * c)) if c > 0 else mpfr(0)
                yield ChordState(k, c, spec.id)
            else:
                s = gmpy2.sqrt(2 + s)
                c = c / s
                yield ChordState(k, c, spec.id, s)


def _estimate(mu, chord, k: int):
    return mu * gmpy2.mul_2exp(chord, k - 1)


def pi_estimate(spec: FormulaSpec, k: int, ctx: RealContext, naive: bool = False) -> mpfr:
    """Truncated estimate pi_k = mu * 2**(k-1) * c_k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mu = spec.mu_real(ctx)
    for state in chord_states(spec, ctx, naive=naive):
        if state.k == k:
            with ctx.scope():
                return _estimate(mu, state.chord, k)
    raise AssertionError("unreachable")


def sine_oracle(alpha, k: int, ctx: RealContext) -> mpfr:
    """c_k = 2*sin(alpha / 2**(k+1)) from MPFR's correctly rounded sine."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with ctx.scope(16):
        a = as_mpfr(alpha)
        if not (0 < a < gmpy2.const_pi()):
            raise DomainError(f"alpha must lie in (0, pi), got {a}")
        value = 2 * gmpy2.sin(gmpy2.div_2exp(a, k + 1))
    with ctx.scope():
        return +value


def arc_of(mu, ctx: RealContext) -> mpfr:
    """alpha = 2*pi/mu at the context precision (MPFR constant pi)."""
    with ctx.scope(16):
        value = 2 * gmpy2.const_pi() / as_mpfr(mu)
    with ctx.scope():
        return +value


def error_model(spec: FormulaSpec, k: int) -> mpfr:
    """Predicted pi - pi_k = pi * alpha**2 / (6 * 4**(k+1)).

    This is also a strict upper bound, since x - sin(x) < x**3/6.
    """
    with gmpy2.context(precision=64):
        alpha = 2 * gmpy2.const_pi() / spec.mu_real(RealContext(64))
        return gmpy2.div_2exp(gmpy2.const_pi() * alpha * alpha / 6, 2 * (k + 1))


def iterations_for_bits(spec: FormulaSpec, bits: int) -> int:
    """Smallest k whose predicted truncation error is below 2**-bits."""
    with gmpy2.context(precision=64):
        alpha = 2 * gmpy2.const_pi() / spec.mu_real(RealContext(64))
        log_scale = float(gmpy2.log2(gmpy2.const_pi() * alpha * alpha / 6))
    return max(0, math.ceil((bits + log_scale) / 2) - 1)


@dataclass(frozen=True)
class PiComputation:
    digits: str
    k: int
    precision_bits: int
    attempts: int


def compute_pi(spec: FormulaSpec, decimal_digits: int, max_digits: int | None = None) -> str:
    """pi to ``decimal_digits`` significant digits, rounded half-even."""
    return compute_pi_detailed(spec, decimal_digits, max_digits).digits


def compute_pi_detailed(spec: FormulaSpec, decimal_digits: int,
                        max_digits: int | None = None) -> PiComputation:
    cap = default_digit_cap() if max_digits is None else max_digits
    if decimal_digits < 1:
        raise ValueError("decimal_digits must be >= 1")
    if decimal_digits > min(cap, HARD_DIGIT_LIMIT):
        raise DigitCapError(f"{decimal_digits} digits requested, cap is {min(cap, HARD_DIGIT_LIMIT)}")

    target = bits_for_digits(decimal_digits)
    k = iterations_for_bits(spec, target) + 2
    precision = target + GUARD_BITS + math.ceil(math.log2(k + 1))
    for attempt in range(1, 9):
        ctx = RealContext(precision)
        est = pi_estimate(spec, k, ctx)
        # per halving: one sqrt and one division, each within half an ulp
        rounding = (4 * k + 16) * to_fraction(ctx.ulp(est))
        truncation = to_fraction(error_model(spec, k))
        lo = to_fraction(est) - rounding
        hi = to_fraction(est) + truncation + rounding
        low_digits = round_sig(lo, decimal_digits)
        if low_digits == round_sig(hi, decimal_digits):
            return PiComputation(low_digits, k, precision, attempt)
        k += 8
        precision += 32
    raise ArithmeticError("could not isolate the rounded digit string")


@dataclass(frozen=True)
class ConvergenceRecord:
    k: int
    estimate: mpfr
    abs_error: mpfr
    error_ratio: float | None = None


def convergence_table(spec: FormulaSpec, k_max: int, ctx: RealContext) -> list[ConvergenceRecord]:
    """Estimates and errors against the arctangent reference for k = 0..k_max."""
    if k_max < 0 or k_max > 10_000:
        raise ValueError("k_max must lie in [0, 10000]")
    ref = reference_pi_for(ctx)
    mu = spec.mu_real(ctx)
    records: list[ConvergenceRecord] = []
    prev_err = None
    for state in chord_states(spec, ctx):
        with ctx.scope():
            est = _estimate(mu, state.chord, state.k)
        with ctx.scope(64):
            err = abs(ref - est)
        ratio = None
        if prev_err is not None:
            ratio = float(err / prev_err) if prev_err != 0 else math.nan
        records.append(ConvergenceRecord(state.k, est, err, ratio))
        prev_err = err
        if state.k >= k_max:
            break
    return records


def correct_bits_profile(spec: FormulaSpec, k_max: int, ctx: RealContext,
                         naive: bool = False) -> list[float]:
    """Correct bits of pi_k for k = 0..k_max, naive or stable recurrence."""
    ref = reference_pi_for(ctx)
    mu = spec.mu_real(ctx)
    bits: list[float] = []
    for state in chord_states(spec, ctx, naive=naive):
        with ctx.scope():
            est = _estimate(mu, state.chord, state.k)
        bits.append(max(0.0, correct_bits(est, ref)))
        if state.k >= k_max:
            break
    return bits
