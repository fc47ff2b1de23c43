from fractions import Fraction
from itertools import combinations
import math
import random

import pytest

from transmeasure.binomial import (
    DeltaParams,
    d_sigma,
    delta_coefficients,
    delta_derivatives,
    delta_eval,
    lemma4_check,
    lemma4_sweep,
    lemma4_sweep_results,
    nu,
)
from transmeasure.errors import InvalidInputError


def _derivative_by_subsets(x: int, params: DeltaParams, u: int) -> Fraction:
    """Product rule over the linear factors ``(z + j)``: drop ``u`` of them in every way."""
    shifts = [j for _ in range(params.q) for j in range(params.H)] + list(range(params.r))
    total = 0
    for dropped in combinations(range(len(shifts)), u):
        kept = set(range(len(shifts))) - set(dropped)
        total += math.prod(x + shifts[i] for i in kept)
    denominator = math.factorial(params.H) ** params.q * math.factorial(params.r)
    return Fraction(math.factorial(u) * total, denominator)


def test_nu_is_the_lcm_of_the_first_integers() -> None:
    assert [nu(1), nu(6), nu(10)] == [1, 60, 2520]

    with pytest.raises(InvalidInputError):
        nu(0)


def test_from_degree_splits_n_with_remainder_in_one_to_h() -> None:
    assert DeltaParams.from_degree(3, 2) == DeltaParams(N=3, H=2, q=1, r=1)
    assert DeltaParams.from_degree(4, 2) == DeltaParams(N=4, H=2, q=1, r=2)
    assert DeltaParams.from_degree(2, 2) == DeltaParams(N=2, H=2, q=0, r=2)
    assert DeltaParams.from_degree(0, 5) == DeltaParams(N=0, H=5, q=0, r=0)

    with pytest.raises(InvalidInputError):
        DeltaParams(N=4, H=2, q=2, r=0)


@pytest.mark.parametrize(
    ("x", "N", "H", "expected"),
    [(0, 3, 2, 0), (1, 3, 2, 1), (-2, 4, 2, 1), (3, 2, 2, 6)],
)
def test_delta_eval(x: int, N: int, H: int, expected: int) -> None:
    assert delta_eval(x, DeltaParams.from_degree(N, H)) == expected


def test_delta_coefficients_agree_with_the_product_form() -> None:
    params = DeltaParams.from_degree(7, 3)
    coefficients = delta_coefficients(params)

    assert len(coefficients) == 8
    for x in (Fraction(-5), Fraction(2, 3), Fraction(11)):
        value = sum(c * x**k for k, c in enumerate(coefficients))
        assert value == delta_eval(x, params)


def test_delta_derivatives() -> None:
    params = DeltaParams.from_degree(3, 2)

    assert delta_derivatives(1, params, 2) == [1, Fraction(5, 2), 4]
    assert delta_derivatives(0, params, 3) == [0, 0, 1, 3]
    assert delta_derivatives(5, DeltaParams.from_degree(1, 1), 3) == [5, 1, 0, 0]


def test_delta_derivatives_match_the_product_rule_on_a_random_sample() -> None:
    rng = random.Random(11)
    for _ in range(40):
        N, H, x = rng.randint(1, 12), rng.randint(1, 5), rng.randint(-10, 10)
        params = DeltaParams.from_degree(N, H)

        expected = [_derivative_by_subsets(x, params, u) for u in range(N + 1)]

        assert delta_derivatives(x, params, N) == expected


@pytest.mark.parametrize(("N", "H"), [(1, 1), (5, 2), (7, 3), (12, 5), (10, 5)])
def test_delta_leading_coefficient(N: int, H: int) -> None:
    params = DeltaParams.from_degree(N, H)

    leading = delta_coefficients(params)[-1]

    assert leading == Fraction(1, math.factorial(H) ** params.q * math.factorial(params.r))


def test_d_sigma() -> None:
    assert [d_sigma(1, 5).value, d_sigma(2, 3).value, d_sigma(3, 2).value] == [1, 8, 36]


def test_lemma4_check_at_a_small_instance() -> None:
    report = lemma4_check(1, DeltaParams.from_degree(3, 2), 2)

    assert report.witnesses == (4, 10, 16)
    assert report.integrality
    assert report.bound_42
    assert report.lhs_43 == 10
    rhs = 4 * math.exp(5) * (3 / 2) ** 3
    assert report.rhs_43.lo <= Fraction(rhs + 1e-6)
    assert report.rhs_43.hi >= Fraction(rhs - 1e-6)
    assert report.passed


def test_lemma4_check_sigma_zero_is_vacuous_for_the_denominator() -> None:
    report = lemma4_check(0, DeltaParams.from_degree(2, 1), 0)

    assert report.bound_42
    assert report.witnesses == (0,)
    assert report.passed


def test_lemma4_check_rejects_degree_zero() -> None:
    with pytest.raises(InvalidInputError):
        lemma4_check(1, DeltaParams.from_degree(0, 2), 1)


def test_lemma4_sweep_on_a_small_grid() -> None:
    summary = lemma4_sweep(N_max=3, H_max=2, sigma_max=2, x_max=2)

    assert summary.passed
    assert summary.checked == 3 * 2 * 3 * 5
    assert summary.first_failure is None
    assert lemma4_sweep_results(summary) == {
        "checked": 90,
        "integrality_failures": 0,
        "bound_42_failures": 0,
        "bound_43_failures": 0,
        "grid": {"N_max": 3, "H_max": 2, "sigma_max": 2, "x_max": 2},
    }


def test_lemma4_check_shares_the_size_bound_between_x_and_minus_x() -> None:
    params = DeltaParams.from_degree(6, 3)

    plus = lemma4_check(4, params, 3)
    minus = lemma4_check(-4, params, 3)

    assert plus.rhs_43 is minus.rhs_43
    assert plus.passed and minus.passed
