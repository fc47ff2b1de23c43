from fractions import Fraction
import json

import pytest
import sympy

from transmeasure.errors import InvalidInputError
from transmeasure.numerics import CertifiedReal
from transmeasure.schemas import (
    CheckModel,
    IntPolynomial,
    MeasureQuery,
    VanishingOrderCase,
    ZeroEstimateInstance,
    build_model,
    interval_json,
    load_model,
)


def test_int_polynomial_basics() -> None:
    poly = IntPolynomial.parse("0,2,0,-4")

    assert poly.coefficients == (2, 0, -4)
    assert poly.degree == 2
    assert poly.leading == 2
    assert poly.content() == 2
    assert poly.evaluate_exact(Fraction(1, 2)) == Fraction(-7, 2)
    assert poly.derivative() == IntPolynomial.of(4, 0)
    assert poly.reversed() == IntPolynomial.of(-4, 0, 2)
    assert poly.to_text() == "2,0,-4"
    assert str(poly) == "2*x**2 - 4"


def test_int_polynomial_zero_and_constants() -> None:
    zero = IntPolynomial.of(0, 0)

    assert zero.is_zero
    assert zero.coefficients == (0,)
    assert IntPolynomial.of(5).derivative().is_zero


def test_int_polynomial_sympy_roundtrip() -> None:
    x = sympy.Symbol("x")
    poly = IntPolynomial.from_sympy(sympy.Poly(x**3 - 2 * x + 1, x))

    assert poly.coefficients == (1, 0, -2, 1)
    assert poly.to_sympy(x) == sympy.Poly(x**3 - 2 * x + 1, x)
    assert poly.evaluate(2).contains(5)


@pytest.mark.parametrize(
    "overrides",
    [
        {"beta": "0"},
        {"M": 2},
        {"M": 2, "points": [["1", "1"], ["1", "2"]]},
        {"points": [["1", "0"]]},
    ],
)
def test_zero_estimate_instance_validation(overrides: dict) -> None:
    values = {"D0": 1, "D1": 1, "S": 2, "M": 1, "beta": "1", "points": [["0", "1"]]}
    values.update(overrides)

    with pytest.raises(InvalidInputError):
        build_model(ZeroEstimateInstance, **values)


def test_zero_estimate_instance_shape_condition() -> None:
    instance = build_model(
        ZeroEstimateInstance,
        D0=1,
        D1=0,
        S=3,
        M=1,
        beta="1/2",
        points=[["0", "1"]],
    )

    assert instance.beta == Fraction(1, 2)
    assert instance.condition_21
    assert instance.column_count == 2


def test_load_model_from_a_json_file(tmp_path) -> None:
    path = tmp_path / "case.json"
    path.write_text(
        json.dumps({"exponents": [0, 1], "orders": [0, 0], "points": ["1/2", "3"]}),
        encoding="utf-8",
    )

    case = load_model(VanishingOrderCase, path)

    assert case.points == (Fraction(1, 2), Fraction(3))
    assert case.lower_bound == 1


def test_load_model_errors(tmp_path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text('{"exponents": [0], "orders": [0, 1], "points": ["1"]}', encoding="utf-8")

    with pytest.raises(InvalidInputError):
        load_model(VanishingOrderCase, bad)
    with pytest.raises(InvalidInputError):
        load_model(VanishingOrderCase, tmp_path / "absent.json")


def test_measure_query_needs_a_length_of_three() -> None:
    with pytest.raises(InvalidInputError):
        build_model(MeasureQuery, target="pi", d=1, L=Fraction(2))
    with pytest.raises(InvalidInputError):
        build_model(MeasureQuery, target="zeta3", d=1, L=Fraction(10))


def test_check_model_accepts_either_name() -> None:
    by_alias = CheckModel.model_validate({"label": "a", "pass": True})
    by_name = CheckModel(label="a", passed=True)

    assert by_alias == by_name
    assert by_name.model_dump(by_alias=True)["pass"] is True


def test_interval_json_rounds_outward() -> None:
    third = CertifiedReal.exact(Fraction(1, 3))

    assert interval_json(third, 5) == {"lo": "0.33333", "hi": "0.33334", "digits": 5}
    assert interval_json("not an interval") == "not an interval"
