from fractions import Fraction

import pytest

from transmeasure.errors import CapExceededError, InvalidInputError
from transmeasure.logging import read_run_log
from transmeasure.schemas import MeasureQuery, SearchSpace
from transmeasure.search import (
    enumerate_min_alg_approx,
    enumerate_min_poly_value,
    enumerate_space,
    lattice_count,
    monotonicity_violations,
    search_results,
    sweep,
    verify_against_bound,
)


def test_lattice_count_matches_the_enumeration() -> None:
    assert lattice_count(1, 10) == 110
    assert lattice_count(0, 5) == 5
    assert len(list(enumerate_space(1, 3))) == lattice_count(1, 3) == 12
    assert all(coefficients[0] > 0 for coefficients in enumerate_space(2, 3))


@pytest.mark.parametrize(
    ("target", "expected"),
    [("pi", (1, -3)), ("log2", (3, -2)), ("e", (1, -3))],
)
def test_poly_minimum_over_linear_polynomials(target: str, expected: tuple[int, ...]) -> None:
    result = enumerate_min_poly_value(SearchSpace(target=target, d_max=1, L_max=10))

    assert result.best_poly.coefficients == expected
    assert result.enumerated == 110
    assert result.best_value.width_at_most(Fraction(1, 10**6))
    assert result.best_value.lo > 0


def test_alg_minimum_for_pi_is_three() -> None:
    result = enumerate_min_alg_approx(SearchSpace(target="pi", d_max=1, L_max=10))

    assert result.best_poly.coefficients == (1, -3)
    assert result.witness_root.contains(3)
    assert result.root_index == 0


def test_search_results_do_not_depend_on_the_worker_count() -> None:
    space = SearchSpace(target="e", d_max=2, L_max=8)

    results = [enumerate_min_poly_value(space, workers=workers) for workers in (1, 4, 8)]

    sequential = results[0]
    for parallel in results[1:]:
        assert parallel.best_poly == sequential.best_poly
        assert parallel.enumerated == sequential.enumerated
        assert parallel.survivors == sequential.survivors
        assert (parallel.best_value.lo, parallel.best_value.hi) == (
            sequential.best_value.lo,
            sequential.best_value.hi,
        )


def test_search_refuses_spaces_above_the_cap() -> None:
    with pytest.raises(CapExceededError):
        enumerate_min_poly_value(SearchSpace(target="pi", d_max=1, L_max=10), cap=100)


def test_verify_against_bound() -> None:
    result = enumerate_min_poly_value(SearchSpace(target="pi", d_max=1, L_max=10))
    query = MeasureQuery(target="pi", form="polynomial", d=1, L=Fraction(10))

    verification = verify_against_bound(result, query)
    block = search_results(result, verification)

    assert verification.passed
    assert not verification.inconclusive
    assert verification.margin.lo > 0
    assert block["best_poly"] == "1,-3"
    assert block["passed"] is True
    assert set(block["best_value"]) == {"lo", "hi", "digits"}

    with pytest.raises(InvalidInputError):
        verify_against_bound(
            result, MeasureQuery(target="pi", form="algebraic-approx", d=1, L=Fraction(10))
        )
    with pytest.raises(InvalidInputError):
        verify_against_bound(
            result, MeasureQuery(target="pi", form="polynomial", d=1, L=Fraction(9))
        )


def test_sweep_resumes_from_the_run_log(tmp_path) -> None:
    run_log = tmp_path / "runs" / "log2.jsonl"

    first = sweep(["log2"], 1, 4, run_log)
    second = sweep(["log2"], 1, 4, run_log)

    assert (first.computed, first.skipped) == (4, 0)
    assert (second.computed, second.skipped) == (0, 4)
    assert len(read_run_log(run_log)) == 4
    assert first.passed and second.passed
    assert [record["L"] for record in second.records] == [1, 2, 3, 4]
    assert "passed" not in second.records[0]
    assert second.records[3]["passed"] is True


def test_sweep_rejects_unknown_targets() -> None:
    with pytest.raises(InvalidInputError):
        sweep(["gamma"], 1, 3)


def test_monotonicity_violations_flag_a_larger_minimum() -> None:
    def record(L: int, lo: str, hi: str) -> dict:
        return {
            "target": "pi",
            "mode": "poly",
            "d": 1,
            "L": L,
            "best_value": {"lo": lo, "hi": hi, "digits": 5},
        }

    consistent = [record(3, "0.14159", "0.14160"), record(4, "0.14159", "0.14160")]
    broken = [record(3, "0.14159", "0.14160"), record(4, "0.5", "0.6")]

    assert monotonicity_violations(consistent) == []
    assert monotonicity_violations(broken) == [("pi/poly d=1 L=4", "d=1 L=3")]


def test_sweep_minima_shrink_as_the_space_grows() -> None:
    summary = sweep(["pi", "e"], 2, 5)

    assert summary.computed == 2 * 2 * 5
    assert monotonicity_violations(summary.records) == []
    assert summary.passed
