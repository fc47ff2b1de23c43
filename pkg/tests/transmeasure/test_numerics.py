from fractions import Fraction

import pytest

from transmeasure.config import PrecisionConfig
from transmeasure.errors import (
    InconclusivePrecisionError,
    InvalidInputError,
    UndecidedComparison,
)
from transmeasure.numerics import (
    CertifiedReal,
    check_row,
    const_eval,
    decide_inequality,
    decided_floor,
    enclose_real,
    parse_expression,
    root_enclosures,
    to_fraction,
)
from transmeasure.usage import track_precision


def test_to_fraction_accepts_exact_inputs_and_rejects_others() -> None:
    assert to_fraction("3/2") == Fraction(3, 2)
    assert to_fraction(7) == Fraction(7)
    assert to_fraction(0.5) == Fraction(1, 2)

    with pytest.raises(InvalidInputError):
        to_fraction(True)
    with pytest.raises(InvalidInputError):
        to_fraction(float("nan"))
    with pytest.raises(InvalidInputError):
        to_fraction("pi")


def test_parse_expression_rejects_free_symbols() -> None:
    assert str(parse_expression("pi*i")) == "I*pi"

    with pytest.raises(InvalidInputError):
        parse_expression("x + 1")


def test_const_eval_pi_meets_the_requested_width() -> None:
    value = const_eval("pi", Fraction(1, 10**30))

    assert value.width_at_most(Fraction(1, 10**30))
    assert value.lo < Fraction("3.14159265358979323846264338327950289")
    assert value.hi > Fraction("3.14159265358979323846264338327950288")


def test_const_eval_log2_and_e() -> None:
    log2 = const_eval("log2", Fraction(1, 10**10))
    e = const_eval("e", 1)

    assert log2.lo < Fraction("0.6931471806") and log2.hi > Fraction("0.6931471805")
    assert e.width_at_most(1)
    assert e.lo < Fraction("2.7183") and e.hi > Fraction("2.7182")


def test_const_eval_rejects_unknown_names_and_bad_precision() -> None:
    with pytest.raises(InvalidInputError):
        const_eval("nosuch", 1)
    with pytest.raises(InvalidInputError):
        const_eval("pi", 0)


def test_const_eval_escalates_and_records_precision() -> None:
    with track_precision() as tracker:
        const_eval("pi", Fraction(1, 10**30))

    assert tracker.escalations >= 1
    assert tracker.max_bits_used >= 128
    assert tracker.details["const:pi"] == 1


def test_const_eval_is_inconclusive_below_the_cap() -> None:
    config = PrecisionConfig(working_bits=64, max_bits=64)

    with track_precision() as tracker:
        with pytest.raises(InconclusivePrecisionError) as excinfo:
            const_eval("pi", Fraction(1, 10**30), config)

    assert excinfo.value.max_bits == 64
    assert tracker.inconclusive == 1


def test_less_than_raises_on_overlap() -> None:
    left = CertifiedReal.from_bounds(0, 2)
    right = CertifiedReal.from_bounds(1, 3)

    with pytest.raises(UndecidedComparison):
        left.less_than(right)
    assert CertifiedReal.exact(1).less_than(CertifiedReal.exact(2))
    assert CertifiedReal.exact(1).less_than(1, strict=False)


def test_sign_and_log_of_non_positive_values() -> None:
    assert CertifiedReal.exact(-3).sign() == -1
    assert CertifiedReal.exact(0).sign() == 0

    with pytest.raises(InvalidInputError):
        CertifiedReal.exact(-1).log()
    with pytest.raises(UndecidedComparison):
        CertifiedReal.from_bounds(-1, 1).log()


def test_to_decimal_pair_rounds_outward() -> None:
    assert CertifiedReal.exact(Fraction(1, 3)).to_decimal_pair(5) == ("0.33333", "0.33334")


def test_decide_inequality_exact_and_interval_paths() -> None:
    interval = decide_inequality("log(2)", "1", strict=True)
    exact = decide_inequality(1, "3/2")

    assert interval.holds and not interval.exact
    assert exact.holds and exact.exact


def test_decide_inequality_proves_symbolic_equality() -> None:
    non_strict = decide_inequality("log(4)", "2*log(2)")
    strict = decide_inequality("log(4)", "2*log(2)", strict=True)

    assert non_strict.holds and non_strict.exact
    assert not strict.holds


def test_check_row_reports_undecidable_rows_as_inconclusive() -> None:
    row = check_row(
        "pi < pi(1 + 10^-40)",
        "pi",
        "pi*(1 + 10**-40)",
        strict=True,
        config=PrecisionConfig(working_bits=64, max_bits=64),
    )

    assert row.inconclusive
    assert not row.passed
    assert row.lhs is None and row.rhs is None
    assert "undecided at 64 bits" in row.detail


def test_decided_floor() -> None:
    assert decided_floor("7/2") == 3
    assert decided_floor("10*pi") == 31
    assert decided_floor("-e") == -3


def test_enclose_real_of_imaginary_free_expression() -> None:
    value = enclose_real("exp(2)", Fraction(1, 10**20))

    assert value.width_at_most(Fraction(1, 10**20))
    assert value.lo < Fraction("7.389056098930651")
    assert value.hi > Fraction("7.38905609893065")


def test_root_enclosures_of_linear_and_quadratic_polynomials() -> None:
    (linear,) = root_enclosures([1, -3], Fraction(1, 10**10))
    minus, plus = root_enclosures([1, 0, -2], Fraction(1, 10**10))

    assert linear.root.re.contains(3)
    assert linear.is_real
    assert minus.root.re.hi < 0 < plus.root.re.lo
    assert plus.root.re.lo < Fraction("1.4142135624")
    assert plus.root.re.hi > Fraction("1.4142135623")


def test_root_enclosures_of_complex_roots() -> None:
    lower, upper = root_enclosures([1, 0, 1], Fraction(1, 10**10))

    assert not lower.is_real and not upper.is_real
    assert lower.root.im.hi < 0 < upper.root.im.lo
    assert lower.modulus.contains(1)


def test_root_enclosures_report_multiplicities() -> None:
    # (x + 1)(x - 1)^2
    enclosures = root_enclosures([1, -1, -1, 1], Fraction(1, 10**10))

    assert [e.multiplicity for e in enclosures] == [1, 2]
    assert sum(e.multiplicity for e in enclosures) == 3


def test_root_enclosures_reject_invalid_input() -> None:
    with pytest.raises(InvalidInputError):
        root_enclosures([0, 0], Fraction(1, 10))
    with pytest.raises(InvalidInputError):
        root_enclosures([1, -2], 0)
