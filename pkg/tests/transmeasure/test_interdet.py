from fractions import Fraction
import math
import random

import pytest

from transmeasure.errors import CapExceededError, HypothesisError, InvalidInputError
from transmeasure.interdet import (
    EntryIndex,
    InterpolationShape,
    a_entry_poly,
    derive_params,
    determinant_decay_check,
    entry_consistency_check,
    entry_consistency_sweep,
    entry_integrality_sweep,
    gamma_entry,
    lemma3_monotonicity_grid,
    lemma3_rhs,
    toy_rank_check,
    vanishing_order_check,
)
from transmeasure.schemas import Lemma3Config, ToyInterpolationConfig, VanishingOrderCase
from transmeasure.zeroest import LaurentBiPoly


def _near(value, expected: float, tol: float = 1e-9) -> bool:
    return value.lo <= Fraction(expected + tol) and value.hi >= Fraction(expected - tol)


def test_shape_ranges() -> None:
    shape = InterpolationShape(S=1, S1=2, T=1, T1=1, H=1)

    assert shape.L == 6
    assert len(shape.columns()) == 6
    assert shape.rows()[:3] == [(0, 0), (0, 1), (0, 2)]
    assert len(shape.rows()) == 6
    assert len(list(shape.indices())) == 6 * 2 * 5

    with pytest.raises(InvalidInputError):
        InterpolationShape(S=-1, S1=0, T=0, T1=0, H=1)


def test_derive_params_at_unit_inputs() -> None:
    params = derive_params(1, 1, 1, "E", 1)

    assert _near(params.U, 1 + 3.3 * math.log(3))
    assert _near(params.V, 7 + 2 * math.e)
    assert _near(params.W, 13)
    assert (params.S, params.S1, params.T, params.T1, params.H) == (604, 156, 3265, 19, 19)
    assert params.L == 3266 * 39
    assert params.passed
    assert [row.label for row in params.checks][:3] == ["U >= 1", "V >= 6", "W >= 2"]


def test_derive_params_with_an_imaginary_theta() -> None:
    params = derive_params(2, "1/2", "log(10)", "exp(2)", "pi*I")

    assert _near(params.V, (2 * math.exp(2) * math.pi + 13) / 2)
    assert _near(params.theta.im, math.pi)
    assert params.passed
    assert params.shape().theta == "I*pi"


def test_derive_params_rejects_violated_hypotheses() -> None:
    with pytest.raises(HypothesisError):
        derive_params(1, 1, 1, 2, 1)
    with pytest.raises(HypothesisError):
        derive_params(2, "1/4", 1, "E", 1)
    with pytest.raises(InvalidInputError):
        derive_params(0, 1, 1, "E", 1)


def test_gamma_entry_values() -> None:
    shape = InterpolationShape(S=1, S1=1, T=3, T1=1, H=2)

    assert gamma_entry(EntryIndex(0, 0, 0, 0), shape).re.contains(1)
    assert _near(gamma_entry(EntryIndex(3, 1, 1, 1), shape).re, 3.5 * math.e)

    with pytest.raises(InvalidInputError):
        gamma_entry(EntryIndex(4, 0, 0, 0), shape)


def test_algebraic_entries_are_integral_laurent_polynomials() -> None:
    shape = InterpolationShape(S=1, S1=2, T=3, T1=2, H=2)

    assert a_entry_poly(EntryIndex(3, 2, 1, 1), shape) == LaurentBiPoly(
        {(1, 2): 4, (0, 2): 5}
    )
    assert a_entry_poly(EntryIndex(0, -1, 0, 2), shape) == LaurentBiPoly.monomial(0, -2)

    with pytest.raises(InvalidInputError):
        a_entry_poly(EntryIndex(0, 3, 0, 0), shape)


def test_entry_integrality_sweep() -> None:
    summary = entry_integrality_sweep(InterpolationShape(S=2, S1=2, T=3, T1=1, H=2))

    assert summary.checked == 180
    assert summary.passed
    assert summary.first_failure is None


@pytest.mark.parametrize("theta", ["log(2)", "1", "1/2"])
def test_entry_consistency(theta: str) -> None:
    shape = InterpolationShape(S=2, S1=1, T=2, T1=1, H=2, theta=theta)

    single = entry_consistency_check(EntryIndex(2, 1, 2, -1), shape)
    sweep = entry_consistency_sweep(shape, samples=10, seed=3)

    assert single.passed
    assert sweep.passed
    assert sweep.checked == 10


def test_toy_rank_default_is_full_rank() -> None:
    report = toy_rank_check(ToyInterpolationConfig())

    assert report.L == 6
    assert report.rows == 9
    assert report.rank == 6
    assert report.verdict == "full-rank"
    assert report.minor_determinant
    assert len(report.selected_rows) == 6


def test_toy_rank_under_determined_shape_reports_a_kernel() -> None:
    report = toy_rank_check(ToyInterpolationConfig(S=0, S1=0))

    assert report.verdict == "under-determined"
    assert not report.shape_regime
    assert report.rank == 1
    assert len(report.kernel) == 5
    assert report.passed


def test_toy_rank_refuses_matrices_above_the_cap() -> None:
    with pytest.raises(CapExceededError):
        toy_rank_check(ToyInterpolationConfig(), matrix_cap=5)


def test_lemma3_rhs_closed_forms() -> None:
    assert _near(lemma3_rhs(Lemma3Config(L=4, M="1", S="1")), 1 + math.log(8))
    assert _near(lemma3_rhs(Lemma3Config(L=2)), math.log(4))

    with pytest.raises(InvalidInputError):
        lemma3_rhs(Lemma3Config(L=2, epsilon=Fraction(1, 2)))


def test_lemma3_monotonicity_grid() -> None:
    rows = lemma3_monotonicity_grid(L_max=4, S_max=2)

    assert len(rows) == 4 * 3
    assert all(row.step_M and row.step_S for row in rows)
    assert all(row.step_L in (True, None) for row in rows)
    assert [(row.L, row.S) for row in rows if row.step_L] == [(3, 0), (4, 0)]


def test_determinant_decay_closed_form_at_a_small_shape() -> None:
    report = determinant_decay_check(InterpolationShape(S=2, S1=1, T=0, T1=1, H=1))

    # |det| = e + 1/e - 2
    assert _near(report.abs_determinant, math.e + 1 / math.e - 2)
    assert report.method == "expansion"
    assert report.L == 3
    assert report.S == 1
    assert report.passed


def test_determinant_decay_needs_enough_rows() -> None:
    with pytest.raises(InvalidInputError):
        determinant_decay_check(InterpolationShape(S=0, S1=0, T=1, T1=1, H=1))


def test_vanishing_order_of_a_vandermonde() -> None:
    report = vanishing_order_check(
        VanishingOrderCase(
            exponents=(0, 1, 2),
            orders=(0, 0, 0),
            points=(Fraction(1), Fraction(2), Fraction(3)),
        )
    )

    assert report.computed_order == 3
    assert report.lower_bound == 3
    assert report.passed
    assert report.determinant == "2*z**3"


def test_vanishing_order_with_derivatives() -> None:
    report = vanishing_order_check(
        VanishingOrderCase(exponents=(0, 1), orders=(0, 1), points=(Fraction(2), Fraction(3)))
    )

    assert report.computed_order == 0
    assert report.lower_bound == 0
    assert report.passed


def test_vanishing_order_identically_zero() -> None:
    report = vanishing_order_check(
        VanishingOrderCase(exponents=(0, 1), orders=(1, 1), points=(Fraction(1), Fraction(1)))
    )

    assert report.identically_zero
    assert report.computed_order is None
    assert report.lower_bound == -1
    assert report.passed


@pytest.mark.parametrize(
    "shape",
    [
        InterpolationShape(S=2, S1=1, T=0, T1=1, H=1),
        InterpolationShape(S=1, S1=2, T=1, T1=0, H=2),
        InterpolationShape(S=2, S1=1, T=1, T1=1, H=2),
        InterpolationShape(S=3, S1=0, T=0, T1=1, H=1, theta="log(2)"),
        InterpolationShape(S=1, S1=3, T=2, T1=0, H=1, theta="1/2"),
    ],
)
def test_determinant_decay_holds_on_small_shapes(shape: InterpolationShape) -> None:
    report = determinant_decay_check(shape)

    assert report.method == "expansion"
    assert report.L == shape.L
    assert report.passed


def test_vanishing_order_on_random_cases() -> None:
    rng = random.Random(41)
    for _ in range(24):
        size = rng.randint(1, 4)
        exponents = tuple(rng.sample(range(7), size))
        orders = tuple(rng.randint(0, 2) for _ in range(size))
        points = tuple(
            Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 4))
            for _ in range(size)
        )
        case = VanishingOrderCase(exponents=exponents, orders=orders, points=points)

        report = vanishing_order_check(case)

        assert report.passed, case
        if not report.identically_zero:
            assert report.computed_order == sum(exponents) - sum(orders)


def test_toy_rank_is_full_inside_the_multiplicity_regime() -> None:
    report = toy_rank_check(ToyInterpolationConfig(S=4, S1=1, T=1, T1=1))

    assert report.shape_regime
    assert report.rows == 10
    assert report.rank == report.L == 6
    assert report.verdict == "full-rank"


def test_toy_rank_regime_counts_only_the_rows_built() -> None:
    # (S+1)(S1+1) = (T+S1+1)(2*T1+1) = 6: the boundary is outside the regime
    report = toy_rank_check(ToyInterpolationConfig(S=2, S1=1, T=4, T1=0))

    assert not report.shape_regime
    assert report.rows == 6
    assert report.L == 5
    assert report.passed
