"""Registry of the golden-ratio nested-radical formulas and their checks.

Each :class:`FormulaSpec` fixes an arc alpha = 2*pi/mu through its exact arc
ratio ``mu`` and the squared initial chord ``l1_sq`` = (2*sin(alpha/2))**2.
Chords in Q(sqrt5) are stored exactly; the rest (sqrt2, sqrt3 and the
golden-angle sine) are numeric recipes evaluated at the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr

from radixpi.context import RealContext, as_mpfr, format_sci, reference_pi_for
from radixpi.exactfield import (
    GoldenElement,
    PHI,
    ge_is_square_of,
    ge_mul,
    ge_pow,
    ge_to_real,
    format_element,
)
from radixpi.radical_engine import sine_oracle

RECIPE_GUARD_BITS = 32
SERIES_GUARD_BITS = 32


@dataclass(frozen=True)
class NumericRecipe:
    """Squared chord outside Q(sqrt5): text forms plus an evaluator that
    returns ``(l1_sq, 4 - l1_sq)`` at the requested precision."""

    l1_sq_expr: str
    complement_expr: str
    evaluate: Callable[[RealContext], tuple[mpfr, mpfr]] = field(compare=False, repr=False)


ArcRatio = Union[Fraction, GoldenElement]
SquaredChord = Union[GoldenElement, NumericRecipe]


@dataclass(frozen=True)
class FormulaSpec:
    id: str
    mu: ArcRatio
    l1_sq: SquaredChord
    l1_expr: str
    alpha_desc: str
    root_offset: int
    paper_eq: str
    polygon: bool = False

    def __post_init__(self) -> None:
        mu = self.mu_float()
        if not mu > 2:
            raise ValueError(f"{self.id}: arc ratio must exceed 2, got {mu}")
        if self.polygon and (not isinstance(self.mu, Fraction) or self.mu.denominator != 1 or self.mu < 3):
            raise ValueError(f"{self.id}: polygon entries need an integer side count >= 3")
        if isinstance(self.l1_sq, GoldenElement):
            v = float(ge_to_real(self.l1_sq, RealContext(64)))
            if not 0 < v < 4:
                raise ValueError(f"{self.id}: squared chord {v} outside (0, 4)")

    @property
    def exact(self) -> bool:
        return isinstance(self.l1_sq, GoldenElement)

    def mu_float(self) -> float:
        if isinstance(self.mu, GoldenElement):
            return float(ge_to_real(self.mu, RealContext(64)))
        return float(self.mu)

    def mu_real(self, ctx: RealContext) -> mpfr:
        if isinstance(self.mu, GoldenElement):
            return ge_to_real(self.mu, ctx)
        return ctx.real(self.mu)

    def alpha_real(self, ctx: RealContext) -> mpfr:
        with ctx.scope(16):
            value = 2 * gmpy2.const_pi() / self.mu_real(ctx.widened(16))
        with ctx.scope():
            return +value

    def l1_sq_real(self, ctx: RealContext) -> mpfr:
        return self._squares(ctx)[0]

    def _squares(self, ctx: RealContext) -> tuple[mpfr, mpfr]:
        if isinstance(self.l1_sq, GoldenElement):
            return ge_to_real(self.l1_sq, ctx), ge_to_real(4 - self.l1_sq, ctx)
        sq, comp = self.l1_sq.evaluate(ctx.widened(RECIPE_GUARD_BITS))
        with ctx.scope():
            return +sq, +comp

    def seed(self, ctx: RealContext) -> tuple[mpfr, mpfr]:
        """(c_0, s_0) = (L1, sqrt(4 - L1**2)) rounded to the context."""
        wide = ctx.widened(RECIPE_GUARD_BITS)
        sq, comp = self._squares(wide)
        with wide.scope():
            c, s = gmpy2.sqrt(sq), gmpy2.sqrt(comp)
        with ctx.scope():
            return +c, +s

    def printed_roots(self, k: int) -> int:
        """Square-root count of the printed radical matching internal k."""
        return k + self.root_offset

    def mu_text(self) -> str:
        if isinstance(self.mu, GoldenElement):
            return "phi^2" if self.mu == GoldenElement(1, 1) else format_element(self.mu)
        return str(self.mu)

    def l1_sq_text(self) -> str:
        if isinstance(self.l1_sq, GoldenElement):
            return format_element(self.l1_sq)
        return self.l1_sq.l1_sq_expr


def _surd_recipe(a: int, b: int, n: int) -> NumericRecipe:
    """l1_sq = a + b*sqrt(n), complement = (4 - a) - b*sqrt(n)."""
    def evaluate(ctx: RealContext) -> tuple[mpfr, mpfr]:
        with ctx.scope():
            r = gmpy2.sqrt(n)
            return a + b * r, (4 - a) - b * r
    sign = "+" if b > 0 else "-"
    csign = "-" if b > 0 else "+"
    mag = "" if abs(b) == 1 else f"{abs(b)}*"
    return NumericRecipe(f"{a} {sign} {mag}sqrt({n})", f"{4 - a} {csign} {mag}sqrt({n})", evaluate)


def _golden_angle_recipe() -> NumericRecipe:
    def evaluate(ctx: RealContext) -> tuple[mpfr, mpfr]:
        mu = ge_to_real(GoldenElement(1, 1), ctx)
        with ctx.scope():
            x = gmpy2.const_pi() / mu
            sin, cos = gmpy2.sin_cos(x)
            return 4 * sin * sin, 4 * cos * cos
    return NumericRecipe("(2*sin(pi/phi^2))^2", "(2*cos(pi/phi^2))^2", evaluate)


_ENTRIES = [
    FormulaSpec("eq10_triangle", Fraction(3), GoldenElement(3), "sqrt(3)",
                "2pi/3, 120 deg", 0, "(10)", polygon=True),
    FormulaSpec("eq10_hexagon", Fraction(6), GoldenElement(1), "1",
                "pi/3, 60 deg", 1, "(10)", polygon=True),
    FormulaSpec("eq10_dodecagon", Fraction(12), _surd_recipe(2, -1, 3), "(sqrt(6) - sqrt(2))/2",
                "pi/6, 30 deg", 2, "(10)", polygon=True),
    FormulaSpec("eq11", Fraction(4), GoldenElement(2), "sqrt(2)",
                "pi/2, 90 deg", 1, "(11)", polygon=True),
    FormulaSpec("eq12", Fraction(8, 3), _surd_recipe(2, 1, 2), "sqrt(2 + sqrt(2))",
                "3pi/4, 135 deg", 2, "(12)"),
    FormulaSpec("eq13", Fraction(12, 5), _surd_recipe(2, 1, 3), "(sqrt(6) + sqrt(2))/2",
                "5pi/6, 150 deg", 2, "(13)"),
    FormulaSpec("eq14", Fraction(5), GoldenElement(3, -1), "sqrt(3 - phi)",
                "2pi/5, 72 deg", 0, "(14)", polygon=True),
    # 108 deg arc: 2*pi/alpha = 10/3
    FormulaSpec("eq15", Fraction(10, 3), GoldenElement(1, 1), "phi",
                "3pi/5, 108 deg", 1, "(15)"),
    # 144 deg arc: 2*pi/alpha = 5/2
    FormulaSpec("eq16", Fraction(5, 2), GoldenElement(2, 1), "sqrt(2 + phi)",
                "4pi/5, 144 deg", 1, "(16)"),
    FormulaSpec("eq17", GoldenElement(1, 1), _golden_angle_recipe(), "2*sin(pi/phi^2)",
                "2pi/phi^2, golden angle ~137.5 deg", 1, "(17)"),
    FormulaSpec("fig2_decagon", Fraction(10), GoldenElement(2, -1), "sqrt(2 - phi)",
                "pi/5, 36 deg", 1, "(9)", polygon=True),
]

REGISTRY: dict[str, FormulaSpec] = {spec.id: spec for spec in _ENTRIES}


class UnknownFormulaError(KeyError):
    pass


def get_formula(formula_id: str) -> FormulaSpec:
    try:
        return REGISTRY[formula_id]
    except KeyError:
        raise UnknownFormulaError(formula_id) from None


def formula_ids() -> list[str]:
    return list(REGISTRY)


def export_registry() -> str:
    """One ``key: value`` block per formula, blocks separated by a blank line.

    Keys, in order: id, mu, l1, l1_sq, exact, alpha, root_offset, paper_eq.
    """
    blocks = []
    for spec in REGISTRY.values():
        blocks.append("\n".join([
            f"id: {spec.id}",
            f"mu: {spec.mu_text()}",
            f"l1: {spec.l1_expr}",
            f"l1_sq: {spec.l1_sq_text()}",
            f"exact: {'yes' if spec.exact else 'no'}",
            f"alpha: {spec.alpha_desc}",
            f"root_offset: {spec.root_offset}",
            f"paper_eq: {spec.paper_eq}",
        ]))
    return "\n\n".join(blocks) + "\n"


# -- identity reports -------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    anchor: str


def _exact_identities() -> list[tuple[str, bool, str, str]]:
    one_plus_phi = GoldenElement(1, 1)
    three_minus = GoldenElement(3, -1)
    two_plus = GoldenElement(2, 1)
    two_minus = GoldenElement(2, -1)
    phi_sq = ge_mul(PHI, PHI)
    six_fifths = GoldenElement(Fraction(6, 5))
    return [
        ("i: phi^2 = phi + 1", phi_sq == one_plus_phi,
         f"phi^2 = {format_element(phi_sq)}", "golden recursion phi^n = phi^(n-1) + phi^(n-2)"),
        ("ii: 4 - (3 - phi) = 1 + phi and sqrt(1 + phi) = phi",
         4 - three_minus == one_plus_phi and ge_is_square_of(one_plus_phi, PHI),
         f"4 - (3 - phi) = {format_element(4 - three_minus)}",
         "cathetus BF of right triangle ABF"),
        ("iii: phi^2 (3 - phi) = 2 + phi", ge_mul(phi_sq, three_minus) == two_plus,
         f"product = {format_element(ge_mul(phi_sq, three_minus))}",
         "pentagon diagonal D = phi * L"),
        ("iv: 4 - phi^2 = 3 - phi", 4 - phi_sq == three_minus,
         f"4 - phi^2 = {format_element(4 - phi_sq)}", "108 deg chord complement is the pentagon side"),
        ("v: 4 - (2 + phi) = 2 - phi", 4 - two_plus == two_minus,
         f"4 - (2 + phi) = {format_element(4 - two_plus)}", "144 deg chord complement is the decagon side"),
        ("vi: (phi - 1)^2 = 2 - phi", ge_is_square_of(two_minus, PHI - 1),
         f"(phi - 1)^2 = {format_element(ge_mul(PHI - 1, PHI - 1))}", "decagon side 2 sin 18 deg"),
        ("vii: (6/5)(1 + phi) = (6/5) phi^2",
         ge_mul(six_fifths, one_plus_phi) == ge_mul(six_fifths, phi_sq),
         f"(6/5)(1 + phi) = {format_element(ge_mul(six_fifths, one_plus_phi))}",
         "Dixon approximation pi ~ (6/5) phi^2"),
    ]


def verify_exact_identities(include_negative_control: bool = False) -> list[CheckResult]:
    """Golden-ratio identities decided by exact arithmetic in Q(sqrt5)."""
    rows = _exact_identities()
    if include_negative_control:
        lhs = ge_mul(ge_pow(PHI, 2), GoldenElement(3, -1))
        rows.append(("negative control: phi^2 (3 - phi) = 2 + 2 phi", lhs == GoldenElement(2, 2),
                     f"product = {format_element(lhs)}", "deliberate mutation of identity iii"))
    return [CheckResult(*row) for row in rows]


def _digits_agreement(a, b) -> float:
    diff = abs(as_mpfr(a) - as_mpfr(b))
    if diff == 0:
        return float("inf")
    return float(-gmpy2.log10(diff))


def verify_numeric_identities(ctx: RealContext) -> list[CheckResult]:
    """Sine values that equal golden-ratio or surd expressions."""
    if ctx.precision_bits < 192:
        raise ValueError("numeric identities need at least 192 bits")
    tol = ctx.tolerance(16)
    wide = ctx.widened(16)
    with wide.scope():
        pi = gmpy2.const_pi()
        s6, s2 = gmpy2.sqrt(6), gmpy2.sqrt(2)
        cases = [
            ("(2 sin(pi/5))^2 = 3 - phi", sine_oracle(2 * pi / 5, 0, wide) ** 2,
             ge_to_real(GoldenElement(3, -1), wide), "pentagon side sqrt(3 - phi)"),
            ("2 sin(3pi/10) = phi", sine_oracle(3 * pi / 5, 0, wide),
             ge_to_real(PHI, wide), "gnomon of the golden triangle"),
            ("(2 sin(2pi/5))^2 = 2 + phi", sine_oracle(4 * pi / 5, 0, wide) ** 2,
             ge_to_real(GoldenElement(2, 1), wide), "pentagon diagonal sqrt(2 + phi)"),
            ("2 sin(pi/10) = phi - 1", sine_oracle(pi / 5, 0, wide),
             ge_to_real(GoldenElement(-1, 1), wide), "decagon side (sqrt5 - 1)/2"),
            ("2 sin(pi/12) = (sqrt6 - sqrt2)/2", sine_oracle(pi / 6, 0, wide),
             (s6 - s2) / 2, "dodecagon side"),
            ("2 sin(5pi/12) = (sqrt6 + sqrt2)/2", sine_oracle(5 * pi / 6, 0, wide),
             (s6 + s2) / 2, "150 deg chord"),
        ]
    results = []
    for name, lhs, rhs, anchor in cases:
        with wide.scope():
            diff = abs(lhs - rhs)
        results.append(CheckResult(name, diff <= tol,
                                   f"|diff| = {format_sci(diff, 3)}, agree to "
                                   f"{min(_digits_agreement(lhs, rhs), 999):.1f} digits", anchor))
    return results


# -- series cross-checks ----------------------------------------------------

def _phi(ctx: RealContext) -> mpfr:
    return ge_to_real(PHI, ctx)


def series_chan(terms: int, ctx: RealContext) -> mpfr:
    """Golden-ratio BBP-type series for pi, summed smallest term first.

    prefactor 5*sqrt(2+phi)/(2*phi) times
    sum_n (2*phi)**(-5n) * (1/(5n+1) + 1/(2 phi^2 (5n+2))
                            - 1/(4 phi^3 (5n+3)) - 1/(8 phi^3 (5n+4)))
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    wide = ctx.widened(SERIES_GUARD_BITS)
    phi = _phi(wide)
    with wide.scope():
        r5 = 1 / (2 * phi) ** 5
        p2, p3 = phi ** 2, phi ** 3
        total = mpfr(0)
        for n in range(terms - 1, -1, -1):
            m = 5 * n
            bracket = (mpfr(1) / (m + 1) + 1 / (2 * p2 * (m + 2))
                       - 1 / (4 * p3 * (m + 3)) - 1 / (8 * p3 * (m + 4)))
            total += bracket * r5 ** n
        result = 5 * gmpy2.sqrt(2 + phi) / (2 * phi) * total
    with ctx.scope():
        return +result


def _cloitre_sum(terms: int, ctx: RealContext, weights: Callable[[mpfr], tuple]) -> mpfr:
    if terms < 1:
        raise ValueError("terms must be >= 1")
    wide = ctx.widened(SERIES_GUARD_BITS)
    phi = _phi(wide)
    with wide.scope():
        w1, w2, w3, w4, w5 = weights(phi)
        q = phi ** -5
        total = mpfr(0)
        for k in range(terms - 1, -1, -1):
            m = 5 * k
            bracket = (w1 / (m + 1) ** 2 - w2 / (m + 2) ** 2 - w3 / (m + 3) ** 2
                       + w4 / (m + 4) ** 2 + w5 / (m + 5) ** 2)
            total += bracket * q ** k
    with ctx.scope():
        return +total


def series_cloitre(terms: int, ctx: RealContext) -> mpfr:
    """The phi-weighted series for pi**2/50 with weights exactly as printed:
    (phi^2, phi, phi^2, phi^5, 2 phi^2) and ratio phi**-5 per block."""
    return _cloitre_sum(terms, ctx, lambda p: (p ** 2, p, p ** 2, p ** 5, 2 * p ** 2))


def series_cloitre_candidate(terms: int, ctx: RealContext) -> mpfr:
    """Same series with weights (phi^-2, phi^-1, phi^-2, phi^-5, 2 phi^-5);
    used only as a diagnostic in the compatibility report."""
    return _cloitre_sum(terms, ctx, lambda p: (p ** -2, p ** -1, p ** -2, p ** -5, 2 * p ** -5))


SERIES_TARGETS = {"chan": "pi", "cloitre": "pi^2/50"}


def series_target(which: str, ctx: RealContext) -> mpfr:
    ref = reference_pi_for(ctx)
    with ctx.scope():
        if which == "chan":
            return +ref
        if which == "cloitre":
            return ref * ref / 50
    raise ValueError(f"unknown series {which!r}")


def series_value(which: str, terms: int, ctx: RealContext) -> mpfr:
    if which == "chan":
        return series_chan(terms, ctx)
    if which == "cloitre":
        return series_cloitre(terms, ctx)
    raise ValueError(f"unknown series {which!r}")


def dixon_constant() -> GoldenElement:
    """(6/5)(1 + phi), Dixon's approximation of pi."""
    return ge_mul(GoldenElement(Fraction(6, 5)), GoldenElement(1, 1))


# -- compatibility report ---------------------------------------------------

MATCH_THRESHOLD = mpfr("1e-10")
PRINTED_GOLDEN_LIMIT = "1.199981546"


@dataclass(frozen=True)
class CompatEntry:
    topic: str
    matches_printed: bool
    detail: str


def compatibility_report(ctx: RealContext | None = None, terms: int = 60) -> list[CompatEntry]:
    """Where the printed formulas and constants differ from what evaluates."""
    ctx = ctx or RealContext(256)
    entries = []
    ref = reference_pi_for(ctx)
    for which in ("chan", "cloitre"):
        value = series_value(which, terms, ctx)
        target = series_target(which, ctx)
        with ctx.scope():
            dev = abs(value - target)
        line = (f"{terms} terms -> {format_sci(value, 25)}; target {SERIES_TARGETS[which]} = "
                f"{format_sci(target, 25)}; deviation {format_sci(dev, 3)}")
        if which == "cloitre" and dev > MATCH_THRESHOLD:
            cand = series_cloitre_candidate(terms, ctx)
            with ctx.scope():
                cdev = abs(cand - target)
            line += (f"; printed form converges to {format_sci(value, 25)}; weights "
                     f"(phi^-2, phi^-1, phi^-2, phi^-5, 2 phi^-5) give deviation {format_sci(cdev, 3)}")
        entries.append(CompatEntry(f"series {which}", bool(dev <= MATCH_THRESHOLD), line))

    phi_sq = ge_to_real(GoldenElement(1, 1), ctx)
    with ctx.scope():
        limit = ref / phi_sq
        lim_err = abs(limit - mpfr(PRINTED_GOLDEN_LIMIT))
        dixon_gap = abs(limit - mpfr(6) / 5)
    entries.append(CompatEntry(
        "eq17 limit constant",
        bool(lim_err < mpfr("5e-10")),
        f"pi/phi^2 = {format_sci(limit, 16)}; printed {PRINTED_GOLDEN_LIMIT}; "
        f"difference {format_sci(lim_err, 3)}; |limit - 6/5| = {format_sci(dixon_gap, 4)}"))
    entries.append(CompatEntry(
        "eq17 innermost radical",
        False,
        "printed 2*sqrt(1 - L1^2) is imaginary for L1 = 2 sin(pi/phi^2) ~ 1.864; "
        "engine uses sqrt(4 - L1^2) = 2*sqrt(1 - (L1/2)^2)"))
    entries.append(CompatEntry(
        "eq15/eq16 arc ratios",
        False,
        "108 deg arc has mu = 10/3 and 144 deg arc has mu = 5/2 (mu = 2 pi/alpha), "
        "matching the printed prefactors 5/3 and 5/4; catalog uses these"))
    dixon = ge_to_real(dixon_constant(), ctx)
    with ctx.scope():
        gap = dixon - ref
    entries.append(CompatEntry(
        "Dixon error",
        bool(gap < mpfr("5e-5")),
        f"(6/5) phi^2 - pi = {format_sci(gap, 6)}; bound err < 5e-5 holds"))
    return entries
