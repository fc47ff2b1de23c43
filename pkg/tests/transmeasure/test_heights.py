from fractions import Fraction
import math
import random

import pytest
import sympy

from transmeasure.errors import InvalidInputError, ReducibleInputError
from transmeasure.heights import (
    AlgebraicNumber,
    LiouvilleContext,
    check_height_length,
    height,
    length,
    liouville_bound,
    liouville_check,
    log_mahler_measure,
    validate_minimal_polynomial,
)
from transmeasure.numerics import CertifiedReal, escalate
from transmeasure.schemas import IntPolynomial


def _near(value, expected: float, tol: float = 1e-12) -> bool:
    return value.lo <= Fraction(expected + tol) and value.hi >= Fraction(expected - tol)


def test_length_sums_absolute_coefficients() -> None:
    assert length("1,0,-2") == 3
    assert length([2, -1]) == 3
    assert length(IntPolynomial.of(5)) == 5


@pytest.mark.parametrize(
    ("minpoly", "expected"),
    [
        ("1,-2", math.log(2)),
        ("1,0,1", 0.0),
        ("1,0,-2", math.log(2) / 2),
        ("2,-3", math.log(3)),
    ],
)
def test_height_of_small_algebraic_numbers(minpoly: str, expected: float) -> None:
    number = AlgebraicNumber.from_minpoly(minpoly)

    value = height(number, Fraction(1, 10**20))

    assert value.width_at_most(Fraction(1, 10**20))
    assert _near(value, expected)


def test_log_mahler_measure_counts_the_leading_coefficient() -> None:
    # 2x^2 - 1 has both roots inside the unit circle
    assert _near(log_mahler_measure("2,0,-1", Fraction(1, 10**20)), math.log(2))


def test_check_height_length_passes_for_irreducible_polynomials() -> None:
    rational = check_height_length("1,-2")
    quadratic = check_height_length("1,0,-2")
    cubic = check_height_length("2,0,3,-7")

    assert rational.verdict == "pass" and rational.exact
    assert quadratic.verdict == "pass"
    assert cubic.verdict == "pass"


def test_validate_minimal_polynomial() -> None:
    assert validate_minimal_polynomial(IntPolynomial.of(-1, 0, 2)).coefficients == (1, 0, -2)

    with pytest.raises(ReducibleInputError):
        validate_minimal_polynomial(IntPolynomial.of(1, 0, -1))
    with pytest.raises(InvalidInputError):
        validate_minimal_polynomial(IntPolynomial.of(2, 0, -4))
    with pytest.raises(InvalidInputError):
        validate_minimal_polynomial(IntPolynomial.of(3))


def test_from_minpoly_selects_roots_in_sorted_order() -> None:
    negative = AlgebraicNumber.from_minpoly("1,0,-2", 0)
    positive = AlgebraicNumber.from_minpoly("1,0,-2", 1)

    assert negative.is_real and positive.is_real
    assert negative.which_root.root.re.hi < 0 < positive.which_root.root.re.lo

    with pytest.raises(InvalidInputError):
        AlgebraicNumber.from_minpoly("1,0,-2", 2)
    with pytest.raises(InvalidInputError):
        AlgebraicNumber.from_minpoly("1,-2", 1)


def test_rational_numbers() -> None:
    number = AlgebraicNumber.rational(3, 2)

    assert number.is_rational
    assert number.rational_value() == Fraction(3, 2)
    assert number.minpoly.coefficients == (2, -3)
    assert number.reciprocal().rational_value() == Fraction(2, 3)


def test_reciprocal_of_a_quadratic_irrational() -> None:
    inverse = AlgebraicNumber.from_minpoly("1,0,-2", 1).reciprocal()

    assert inverse.minpoly.coefficients == (2, 0, -1)
    assert inverse.root_index == 1


def test_liouville_at_a_rational_point() -> None:
    report = liouville_check(
        sympy.sympify("x0**2 - 2"),
        [AlgebraicNumber.rational(3, 2)],
        LiouvilleContext(field_degree=1),
    )

    assert report.degrees == (2,)
    assert report.poly_length == 3
    assert _near(report.bound, -2 * math.log(3))
    assert report.passed


def test_liouville_at_a_quadratic_point() -> None:
    report = liouville_check(
        sympy.sympify("x0**2 - 2"),
        [AlgebraicNumber.from_minpoly("1,0,-3", 1)],
        LiouvilleContext(field_degree=2),
    )

    assert _near(report.bound, -3 * math.log(3))
    assert _near(report.log_value, 0.0)
    assert report.passed


def test_liouville_rejects_a_vanishing_polynomial() -> None:
    with pytest.raises(InvalidInputError):
        liouville_check(
            sympy.sympify("x0 - 2"), [AlgebraicNumber.rational(2)], LiouvilleContext(1)
        )


def test_liouville_context_requires_even_degree_for_non_real_fields() -> None:
    assert LiouvilleContext(4, is_real_field=False).d_prime == 2

    with pytest.raises(InvalidInputError):
        LiouvilleContext(3, is_real_field=False)


def test_liouville_bound_from_heights() -> None:
    bound = liouville_bound(
        [2], 3, [CertifiedReal.exact(Fraction(1, 2))], LiouvilleContext(field_degree=2)
    )

    assert _near(bound, -math.log(3) - 2)


def test_liouville_bound_rejects_mismatched_heights() -> None:
    with pytest.raises(InvalidInputError):
        liouville_bound([1, 1], 2, [CertifiedReal.exact(0)], LiouvilleContext(field_degree=1))


def _random_minimal_polynomials(rng: random.Random, count: int) -> list[IntPolynomial]:
    found: list[IntPolynomial] = []
    while len(found) < count:
        degree = rng.randint(1, 4)
        coefficients = [rng.randint(1, 9)] + [rng.randint(-9, 9) for _ in range(degree)]
        try:
            found.append(validate_minimal_polynomial(IntPolynomial.of(*coefficients)))
        except (InvalidInputError, ReducibleInputError):
            continue
    return found


def test_height_length_inequality_on_random_irreducible_polynomials() -> None:
    for poly in _random_minimal_polynomials(random.Random(31), 15):
        assert check_height_length(poly).verdict == "pass", str(poly)


def test_liouville_on_random_rational_pairs() -> None:
    rng = random.Random(32)
    x0, x1 = sympy.symbols("x0 x1")
    checked = 0
    while checked < 10:
        points = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(2)]
        terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-5, 5) for _ in range(3)}
        exact = sum(c * points[0] ** a * points[1] ** b for (a, b), c in terms.items())
        if exact == 0:
            continue
        expr = sum(c * x0**a * x1**b for (a, b), c in terms.items())

        report = liouville_check(
            expr, [AlgebraicNumber.rational(p) for p in points], LiouvilleContext(1)
        )

        assert report.passed, (expr, points)
        checked += 1


@pytest.mark.parametrize("minpoly", ["1,0,-2", "2,-3", "1,-1,-1", "3,0,0,-2", "1,0,1", "5,1,-7"])
def test_reciprocal_has_the_same_height(minpoly: str) -> None:
    number = AlgebraicNumber.from_minpoly(minpoly)

    forward = height(number, Fraction(1, 10**20))
    backward = height(number.reciprocal(), Fraction(1, 10**20))

    assert forward.overlaps(backward)


@pytest.mark.parametrize(("p", "q"), [(3, 2), (-7, 5), (1, 9), (12, 1), (-1, 1), (6, 4)])
def test_height_of_a_rational_is_the_log_of_the_larger_term(p: int, q: int) -> None:
    value = Fraction(p, q)

    result = height(AlgebraicNumber.rational(p, q), Fraction(1, 10**20))

    assert _near(result, math.log(max(abs(value.numerator), value.denominator)))


def test_enclosure_follows_the_stored_root_not_its_index() -> None:
    for minpoly, index in (("1,0,-2", 1), ("1,0,1", 1), ("1,0,1", 0)):
        selected = AlgebraicNumber.from_minpoly(minpoly, index)
        relabeled = AlgebraicNumber(selected.minpoly, selected.which_root, root_index=1 - index)

        value = escalate(lambda _bits, number=relabeled: number.enclosure(), label="enclosure")

        expected = selected.which_root.root
        assert value.overlaps(expected.re if selected.is_real else expected)
