from fractions import Fraction
import math

import pytest

from transmeasure.bounds import (
    CONSTANTS,
    chain_check_section6,
    chain_check_theorem_derivations,
    constant,
    constants_table,
    lemma1_transfer,
    measure_bound,
    measure_form_check,
    measure_phi,
    theorem1_log_bound,
    theorem5_log_bound,
    theorem6_log_bound,
    transfer_comparison,
)
from transmeasure.errors import HypothesisError, InvalidInputError
from transmeasure.heights import AlgebraicNumber
from transmeasure.interdet import derive_params
from transmeasure.presets import random_parameter_packs, substitution
from transmeasure.schemas import MeasureQuery


def _near(value, expected: float, rel: float = 1e-9) -> bool:
    tol = abs(expected) * rel + 1e-12
    return value.lo <= Fraction(expected + tol) and value.hi >= Fraction(expected - tol)


def test_constants_table_lists_every_constant() -> None:
    table = constants_table()

    assert constant("main") == 211
    assert constant("final.denominator") == Fraction(107, 103)
    assert len(table) == len(CONSTANTS)
    assert {"name": "thm5", "value": "105500", "provenance": CONSTANTS["thm5"].provenance} in table


def test_theorem1_log_bound_at_unit_inputs() -> None:
    params = derive_params(1, 1, 1, "E", 1)
    U = 1 + 3.3 * math.log(3)
    V = 7 + 2 * math.e

    assert _near(theorem1_log_bound(params), -211 * 13 * U * V)


def test_measure_bounds() -> None:
    pi = measure_bound(MeasureQuery(target="pi", form="algebraic-approx", d=2, L=Fraction(10)))
    e = measure_bound(MeasureQuery(target="e", form="polynomial", d=1, L=Fraction(3)))

    expected_pi = -1.2e6 * 2 * (math.log(10) + 2 * math.log(2)) * (1 + math.log(2))
    assert _near(pi, expected_pi)
    assert _near(e, -1.3e5 * (math.log(3) + 1))


def test_measure_phi_matches_the_approximation_exponent() -> None:
    phi = measure_phi("e", 1, 3)

    assert _near(phi, 7.6e4 * (math.log(3) + 1))


@pytest.mark.parametrize("target", ["pi", "log2", "e"])
def test_polynomial_form_is_weaker_than_the_approximation_form(target: str) -> None:
    row = measure_form_check(target, 2, 10)

    assert row.passed
    assert row.strict


def test_lemma1_transfer_closed_form() -> None:
    assert _near(lemma1_transfer(0, 1, 1, 1), -math.log(4))

    with pytest.raises(InvalidInputError):
        lemma1_transfer(0, 1, 0, 1)


def test_transfer_comparison_for_pi() -> None:
    comparison = transfer_comparison("pi", 1, 3)

    assert comparison.d_exponent == 1
    assert comparison.transfer_at_least_direct is True
    assert comparison.direct is not None


def test_transfer_comparison_without_a_direct_form() -> None:
    comparison = transfer_comparison("e", 1, 2)

    assert comparison.direct is None
    assert comparison.transfer_at_least_direct is None


def test_theorem5_log_bound() -> None:
    bound = theorem5_log_bound("exp-minus-alpha", 1, 1, 0)

    assert _near(bound, -105500)

    with pytest.raises(HypothesisError):
        theorem5_log_bound("exp-minus-alpha", 1, 1, 0, E=2)
    with pytest.raises(HypothesisError):
        theorem5_log_bound("beta-minus-log", 1, 1, 0, abs_beta=5)
    with pytest.raises(InvalidInputError):
        theorem5_log_bound("sideways", 1, 1, 0)


def test_theorem6_log_alpha_for_a_rational() -> None:
    report = theorem6_log_bound("log-alpha", AlgebraicNumber.rational(2), 1, 3)

    assert report.number_degree == 1
    assert report.log_bound.hi < 0
    assert report.height_upper >= Fraction(69, 100)

    with pytest.raises(InvalidInputError):
        theorem6_log_bound("log-alpha", AlgebraicNumber.rational(1), 1, 3)


def test_thm2_chain_passes_at_length_ten() -> None:
    report = chain_check_theorem_derivations("thm2", 1, 10)

    assert report.verdict == "pass"
    assert report.instance["D"] == "2"
    assert all(row.passed for row in report.rows if row.label.startswith("assembly:"))


def test_thm2_chain_fails_the_height_row_at_length_three() -> None:
    report = chain_check_theorem_derivations("thm2", 1, 3)

    assert report.verdict == "fail"
    failing = [row.label for row in report.decisive if not row.passed]
    assert failing == ["d(h(xi) + 3log(2d) + 2log(pi) + 14) <= 17(log L + d log d)"]


def test_thm3_chain_reports_the_w_factor_as_a_finding() -> None:
    report = chain_check_theorem_derivations("thm3", 2, 10)

    assert report.verdict == "pass"
    assert any("W factor" in row.label for row in report.findings)


def test_thm4_chain_at_the_smallest_length() -> None:
    report = chain_check_theorem_derivations("thm4", 1, 3)

    assert report.verdict == "pass"


def test_thm5_chain_assembly_meets_the_constant() -> None:
    report = chain_check_theorem_derivations("thm5", 1, 10)

    assembly = [row for row in report.rows if row.label.startswith("assembly:")]
    assert assembly and assembly[0].passed


def test_section6_chain_with_the_pi_substitution() -> None:
    params = derive_params(**substitution("thm2", 1, 10).params())

    report = chain_check_section6(params)

    assert report.verdict == "pass"
    assert report.instance["L"] == str(params.L)


@pytest.mark.parametrize("which", ["thm3", "thm4", "thm5"])
@pytest.mark.parametrize("d", [*range(1, 11), 100, 10**4])
def test_theorem_derivations_hold_across_degrees(which: str, d: int) -> None:
    report = chain_check_theorem_derivations(which, d, 10)

    assert report.verdict == "pass", [row.label for row in report.decisive if not row.passed]


@pytest.mark.parametrize("index", range(10))
def test_section6_chain_on_random_parameter_packs(index: int) -> None:
    pack = random_parameter_packs(count=10, seed=0)[index]

    report = chain_check_section6(derive_params(**pack.params()))

    assert report.verdict == "pass", [row.label for row in report.decisive if not row.passed]
