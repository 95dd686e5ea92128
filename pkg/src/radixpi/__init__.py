"""Exact and arbitrary-precision tools for nested-radical pi formulas."""

from radixpi.catalog import (
    CheckResult,
    FormulaSpec,
    UnknownFormulaError,
    compatibility_report,
    dixon_constant,
    formula_ids,
    get_formula,
    series_chan,
    series_cloitre,
    verify_exact_identities,
    verify_numeric_identities,
)
from radixpi.context import DomainError, RealContext, reference_pi, reference_pi_digits
from radixpi.exactfield import PHI, GoldenElement, Rational, format_element, parse_element
from radixpi.geometry import run_dixon, run_pi_rectangle, verify_figure2_relations
from radixpi.radical_engine import (
    chord_double_naive,
    chord_double_stable,
    compute_pi,
    convergence_table,
    correct_bits_profile,
    nested_radical_eval,
    pi_estimate,
)

__version__ = "0.1.0"
