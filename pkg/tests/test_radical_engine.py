import math

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radixpi.catalog import formula_ids, get_formula
from radixpi.context import (
    DomainError,
    RealContext,
    format_fixed,
    reference_pi_digits,
    reference_pi_for,
    to_fraction,
)
from radixpi.radical_engine import (
    DigitCapError,
    arc_of,
    chord_double_naive,
    chord_double_stable,
    chord_states,
    compute_pi,
    compute_pi_detailed,
    convergence_table,
    correct_bits_profile,
    default_digit_cap,
    error_model,
    iterations_for_bits,
    nested_radical_eval,
    pi_estimate,
    sine_oracle,
)

CTX = RealContext(256)


def sqrt(x, ctx=CTX):
    with ctx.scope():
        return gmpy2.sqrt(x)


def test_naive_doubling_examples():
    assert format_fixed(chord_double_naive(sqrt(2), CTX), 8) == "0.76536686"
    assert format_fixed(chord_double_naive(1, CTX), 8) == "0.51763809"
    assert chord_double_naive(sqrt(3), CTX) == pytest.approx(1, abs=1e-70)


def test_stable_doubling_examples():
    assert chord_double_stable(sqrt(3), CTX) == pytest.approx(1, abs=1e-70)
    naive = chord_double_naive(sqrt(2), CTX)
    stable = chord_double_stable(sqrt(2), CTX)
    with CTX.scope():
        assert abs(naive - stable) <= 2 ** -250


def test_stable_doubling_of_tiny_chord():
    ctx = RealContext(64)
    c = gmpy2.mpfr(2) ** -20
    got = chord_double_stable(c, ctx)
    with gmpy2.context(precision=512):
        exact = 2 * gmpy2.sin(gmpy2.asin(c / 2) / 2)
        assert abs(got - exact) / exact <= 4 * 2 ** -64


@pytest.mark.parametrize("c", [0, 2, -1, 3])
def test_doubling_domain(c):
    with pytest.raises(DomainError):
        chord_double_stable(c, CTX)
    with pytest.raises(DomainError):
        chord_double_naive(c, CTX)


def test_nested_radical_examples():
    assert format_fixed(nested_radical_eval(2, 2, CTX), 8) == "0.76536686"
    with CTX.scope():
        assert abs(nested_radical_eval(3, 3, CTX) - gmpy2.sqrt(2 - gmpy2.sqrt(3))) <= 2 ** -250
        phi = (1 + gmpy2.sqrt(5)) / 2
        # pentagon: sqrt(4 - (3 - phi)) = phi, next root sqrt(2 + phi), then the outer one
        expected = gmpy2.sqrt(2 - gmpy2.sqrt(2 + phi))
        got = nested_radical_eval(3 - phi, 3, CTX)
        assert abs(got - expected) <= 2 ** -250


def test_nested_radical_domain():
    with pytest.raises(ValueError):
        nested_radical_eval(2, 1, CTX)
    with pytest.raises(DomainError):
        nested_radical_eval(4.5, 3, CTX)


def test_pi_estimate_examples():
    hexagon, square = get_formula("eq10_hexagon"), get_formula("eq11")
    assert pi_estimate(hexagon, 0, CTX) == 3
    assert format_fixed(pi_estimate(hexagon, 1, CTX), 10) == "3.105828541"
    assert format_fixed(pi_estimate(square, 1, CTX), 10) == "3.061467459"


def test_sine_oracle_examples():
    with CTX.scope():
        pi = gmpy2.const_pi()
        assert abs(sine_oracle(2 * pi / 6, 0, CTX) - 1) <= 2 ** -250
        phi = (1 + gmpy2.sqrt(5)) / 2
        assert abs(sine_oracle(3 * pi / 5, 0, CTX) - phi) <= 2 ** -250
        golden = sine_oracle(2 * pi / phi ** 2, 0, CTX)
    assert format_fixed(golden, 9) == "1.86406485"
    with pytest.raises(DomainError):
        sine_oracle(4, 0, CTX)


def test_error_model_quarters_and_matches():
    hexagon = get_formula("eq10_hexagon")
    assert to_fraction(error_model(hexagon, 6)) * 4 == to_fraction(error_model(hexagon, 5))
    ref = reference_pi_for(CTX)
    true_err = ref - pi_estimate(hexagon, 5, CTX)
    assert float(error_model(hexagon, 5)) == pytest.approx(1.4018e-4, rel=1e-4)
    assert float(error_model(hexagon, 5) / true_err) == pytest.approx(1, abs=1e-4)
    pentagon = get_formula("eq14")
    ratio = error_model(pentagon, 10) / (ref - pi_estimate(pentagon, 10, CTX))
    assert 0.9 <= ratio <= 1.1


@pytest.mark.parametrize("spec_id", formula_ids())
def test_error_model_is_an_upper_bound(spec_id):
    spec = get_formula(spec_id)
    ref = reference_pi_for(CTX)
    for k in (0, 3, 12):
        assert ref - pi_estimate(spec, k, CTX) < error_model(spec, k)


def test_iterations_for_bits():
    spec = get_formula("eq14")
    k = iterations_for_bits(spec, 100)
    assert error_model(spec, k) < 2 ** -100 <= error_model(spec, k - 1)


@pytest.mark.parametrize("spec_id, digits, expected", [
    ("eq14", 51, "3.14159265358979323846264338327950288419716939937511"),
    ("eq14", 50, "3.1415926535897932384626433832795028841971693993751"),
    ("eq11", 10, "3.141592654"),
    ("eq17", 10, "3.141592654"),
    ("eq11", 1, "3"),
    ("eq14", 3, "3.14"),
    ("eq14", 5, "3.1416"),
])
def test_compute_pi_examples(spec_id, digits, expected):
    assert compute_pi(get_formula(spec_id), digits) == expected


def test_compute_pi_all_formulas_agree():
    expected = reference_pi_digits(60)
    for spec_id in formula_ids():
        assert compute_pi(get_formula(spec_id), 60) == expected, spec_id


def test_compute_pi_thousand_digits():
    result = compute_pi_detailed(get_formula("eq14"), 1000)
    assert result.digits == reference_pi_digits(1000)
    assert result.attempts == 1


def test_digit_cap(monkeypatch):
    spec = get_formula("eq14")
    with pytest.raises(DigitCapError):
        compute_pi(spec, 20_001)
    with pytest.raises(DigitCapError):
        compute_pi(spec, 101, max_digits=100)
    with pytest.raises(ValueError):
        compute_pi(spec, 0)
    monkeypatch.setenv("RADIXPI_MAX_DIGITS", "30")
    assert default_digit_cap() == 30
    with pytest.raises(DigitCapError):
        compute_pi(spec, 31)
    monkeypatch.setenv("RADIXPI_MAX_DIGITS", "10000000")
    assert default_digit_cap() == 100_000


def test_convergence_table():
    table = convergence_table(get_formula("eq10_hexagon"), 20, CTX)
    assert len(table) == 21
    assert table[0].error_ratio is None
    for rec in table[5:]:
        assert 0.2499 <= rec.error_ratio <= 0.2501
    assert len(convergence_table(get_formula("eq14"), 0, CTX)) == 1


def test_eq17_limit_column():
    spec = get_formula("eq17")
    ctx = RealContext(128)
    est = convergence_table(spec, 40, ctx)[-1].estimate
    with ctx.scope():
        limit = est / spec.mu_real(ctx)
    assert format_fixed(limit, 10) == "1.199981615"
    assert abs(limit - gmpy2.mpfr(6) / 5) < 5e-5


def test_cancellation_exhibit():
    ctx = RealContext(64)
    spec = get_formula("eq10_hexagon")
    naive = correct_bits_profile(spec, 40, ctx, naive=True)
    stable = correct_bits_profile(spec, 40, ctx)
    assert max(naive) <= 40
    assert 24 <= max(naive)
    assert stable[30] >= 50
    for k in range(12, 41):
        assert math.floor(stable[k]) >= math.floor(naive[k])


def test_naive_path_collapses_to_zero():
    states = chord_states(get_formula("eq11"), RealContext(32), naive=True)
    chords = [next(states).chord for _ in range(40)]
    assert chords[-1] == 0


@settings(max_examples=200)
@given(st.floats(0.05, 1.95), st.integers(2, 30))
def test_nested_form_matches_iterated_form(l1, depth):
    ctx = RealContext(128)
    c = ctx.real(l1)
    with ctx.scope():
        l1_sq = c * c
    nested = nested_radical_eval(l1_sq, depth, ctx)
    iterated = c
    for _ in range(depth - 1):
        iterated = chord_double_stable(iterated, ctx)
    with ctx.scope():
        assert abs(nested - iterated) <= gmpy2.mpfr(2) ** -(128 - depth - 8)


@pytest.mark.parametrize("spec_id", formula_ids())
def test_chords_match_sine_oracle(spec_id):
    spec = get_formula(spec_id)
    alpha = arc_of(spec.mu_real(CTX), CTX)
    for state in chord_states(spec, CTX):
        with CTX.scope():
            assert abs(state.chord - sine_oracle(alpha, state.k, CTX)) <= gmpy2.mpfr(2) ** -(256 - 8)
        if state.k == 64:
            break


@pytest.mark.parametrize("spec_id", formula_ids())
def test_estimates_increase_towards_pi(spec_id):
    spec = get_formula(spec_id)
    ref = reference_pi_for(CTX)
    previous = None
    for rec in convergence_table(spec, 30, CTX):
        assert rec.estimate < ref
        if previous is not None:
            assert rec.estimate > previous
        previous = rec.estimate
