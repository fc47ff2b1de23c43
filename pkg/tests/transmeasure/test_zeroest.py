from fractions import Fraction
import random

import pytest

from transmeasure.errors import InvalidInputError
from transmeasure.linalg import mat_vec
from transmeasure.schemas import ZeroEstimateInstance
from transmeasure.zeroest import (
    LaurentBiPoly,
    constraint_matrix,
    delta_apply,
    delta_monomial_value,
    lemma2_check,
    lemma2_sweep,
    monomial_columns,
    polynomial_from_vector,
    random_instance,
)


def _instance(**overrides) -> ZeroEstimateInstance:
    values = {
        "D0": 1,
        "D1": 1,
        "S": 2,
        "M": 1,
        "beta": Fraction(1),
        "points": ((Fraction(0), Fraction(1)),),
    }
    values.update(overrides)
    return ZeroEstimateInstance(**values)


def test_delta_of_a_mixed_monomial() -> None:
    xy = LaurentBiPoly.monomial(1, 1)

    assert xy.delta(2) == LaurentBiPoly({(0, 1): 1, (1, 1): 2})
    assert delta_apply(LaurentBiPoly.monomial(0, 3), 2, 2) == LaurentBiPoly.monomial(0, 3, 36)
    assert delta_apply(xy, 2, 0) == xy


def test_delta_kills_constants_and_lowers_x_degree() -> None:
    assert LaurentBiPoly.constant(5).delta(3).is_zero
    assert LaurentBiPoly.monomial(3, 0).delta(7) == LaurentBiPoly.monomial(2, 0, 3)


def test_closed_form_matches_repeated_delta() -> None:
    beta, xi, eta = Fraction(3, 2), Fraction(-2, 3), Fraction(5)
    for i, j, sigma in [(0, 0, 2), (2, 1, 3), (3, -1, 2), (1, 2, 4)]:
        repeated = delta_apply(LaurentBiPoly.monomial(i, j), beta, sigma).evaluate(xi, eta)
        assert delta_monomial_value(i, j, sigma, beta, xi, eta) == repeated


def test_laurent_arithmetic_and_evaluation() -> None:
    p = LaurentBiPoly({(1, 0): 1, (0, -1): 2})
    q = LaurentBiPoly.constant(Fraction(1, 2))

    assert (p * q).coefficient(0, -1) == 1
    assert not (p * q).is_integral()
    assert (p + (-p)).is_zero
    assert p.evaluate(3, 2) == 4
    assert p.min_j == -1 and p.deg_x == 1

    with pytest.raises(InvalidInputError):
        p.evaluate(1, 0)
    with pytest.raises(InvalidInputError):
        LaurentBiPoly.monomial(-1, 0)


def test_monomial_columns_order_y_outer() -> None:
    assert monomial_columns(1, 1) == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_constraint_matrix_at_a_single_point() -> None:
    assert constraint_matrix(_instance()) == [[1, 0, 1, 0], [0, 1, 1, 1]]


def test_lemma2_check_full_rank_when_the_shape_condition_holds() -> None:
    instance = _instance(
        S=4,
        M=3,
        points=(
            (Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(2)),
            (Fraction(2), Fraction(4)),
        ),
    )

    report = lemma2_check(instance)

    assert report.condition_21
    assert report.kernel_dim == 0
    assert report.rank == 4
    assert report.rows == 12
    assert report.verdict == "consistent-with-lemma"
    assert report.kernel_witness is None


def test_lemma2_check_exhibits_a_kernel_below_the_shape_condition() -> None:
    instance = _instance(
        S=1, M=2, points=((Fraction(0), Fraction(1)), (Fraction(1), Fraction(3)))
    )

    report = lemma2_check(instance)

    assert not report.condition_21
    assert report.kernel_dim >= 2
    assert report.passed
    assert mat_vec(constraint_matrix(instance), report.kernel_witness) == [0, 0]
    witness = polynomial_from_vector(instance, list(report.kernel_witness))
    assert not witness.is_zero
    for xi, eta in instance.points:
        assert witness.evaluate(xi, eta) == 0


def test_random_instance_is_valid_and_deterministic() -> None:
    first = random_instance(random.Random(7), 2, 2, 3, 4)
    second = random_instance(random.Random(7), 2, 2, 3, 4)

    assert first == second
    assert len({xi for xi, _ in first.points}) == 4
    assert all(eta != 0 for _, eta in first.points)


def test_lemma2_sweep_finds_no_counterexample() -> None:
    summary = lemma2_sweep(bound=3, trials=2, seed=0)

    assert summary.passed
    assert summary.counterexamples == 0
    assert summary.first_counterexample is None
    assert summary.violating_instances == summary.kernel_witnesses > 0
    assert summary.instances > summary.violating_instances
    assert len(summary.witness_examples) == 5


def test_lemma2_sweep_rejects_empty_grids() -> None:
    with pytest.raises(InvalidInputError):
        lemma2_sweep(bound=0)


def _random_laurent(rng: random.Random, terms: int = 4) -> LaurentBiPoly:
    terms_by_monomial = {}
    for _ in range(terms):
        monomial = (rng.randint(0, 3), rng.randint(-2, 3))
        terms_by_monomial[monomial] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return LaurentBiPoly(terms_by_monomial)


def test_delta_satisfies_the_leibniz_rule() -> None:
    rng = random.Random(21)
    for _ in range(25):
        f, g = _random_laurent(rng), _random_laurent(rng)
        beta = Fraction(rng.randint(-6, 6), rng.randint(1, 3))

        assert (f * g).delta(beta) == f.delta(beta) * g + f * g.delta(beta)


def test_delta_powers_compose() -> None:
    rng = random.Random(22)
    for _ in range(25):
        poly = _random_laurent(rng)
        beta = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        a, b = rng.randint(0, 3), rng.randint(0, 3)

        assert delta_apply(poly, beta, a + b) == delta_apply(delta_apply(poly, beta, b), beta, a)


def test_delta_apply_evaluates_to_the_closed_form() -> None:
    rng = random.Random(23)
    for _ in range(25):
        poly = _random_laurent(rng)
        beta = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        xi = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
        eta = Fraction(rng.choice([-1, 1]) * rng.randint(1, 8), rng.randint(1, 5))
        sigma = rng.randint(0, 4)

        expected = sum(
            (c * delta_monomial_value(i, j, sigma, beta, xi, eta) for (i, j), c in poly),
            Fraction(0),
        )

        assert delta_apply(poly, beta, sigma).evaluate(xi, eta) == expected
