"""Exhaustive search for small values of integer polynomials at pi, log 2 and e.

The space of a `SearchSpace` is every nonzero integer polynomial of degree
at most ``d_max`` and length at most ``L_max`` whose leading coefficient is
positive (``P`` and ``-P`` give equal values). Two modes:

- ``poly``: minimize ``|P(target)|``;
- ``alg``: minimize ``|target - xi|`` over the real roots ``xi`` of the
  irreducible polynomials of the space.

Screening runs in worker processes at a fixed low precision and keeps every
candidate whose interval overlaps the chunk's running minimum. The merged
survivors are then re-evaluated sequentially with precision escalation until
one minimizer is separated from all others.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal
import math

import sympy

from transmeasure.bounds import measure_bound
from transmeasure.config import DEFAULT_SEARCH_CAP, TARGETS, PrecisionConfig
from transmeasure.errors import (
    CapExceededError,
    CounterexampleError,
    InconclusivePrecisionError,
    InvalidInputError,
    UndecidedComparison,
)
from transmeasure.logging import append_run_log_entry, read_run_log
from transmeasure.numerics import (
    NAMED_CONSTANTS,
    CertifiedReal,
    escalate,
    eval_expression,
    horner,
    working_precision,
)
from transmeasure.schemas import IntPolynomial, MeasureQuery, SearchSpace, Target, interval_json

SearchMode = Literal["poly", "alg"]

_X = sympy.Symbol("x")


def lattice_count(d_max: int, L_max: int) -> int:
    """Size of the sign-normalized space, counted from lattice points.

    The cross-polytope ``sum |a_i| <= L`` in ``n = d_max + 1`` dimensions
    holds ``sum_k 2^k C(n, k) C(L, k)`` integer points; drop the origin and
    halve.
    """
    if d_max < 0 or L_max < 0:
        raise InvalidInputError("d_max and L_max must be non-negative")
    n = d_max + 1
    points = sum(
        2**k * math.comb(n, k) * math.comb(L_max, k) for k in range(min(n, L_max) + 1)
    )
    return (points - 1) // 2


def _tails(length: int, budget: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for head in range(-budget, budget + 1):
        for rest in _tails(length - 1, budget - abs(head)):
            yield (head, *rest)


def enumerate_space(d_max: int, L_max: int) -> Iterator[tuple[int, ...]]:
    """Coefficient tuples (leading first, leading > 0) of the space, in chunk order."""
    for degree, leading in _prefixes(d_max, L_max):
        for tail in _tails(degree, L_max - leading):
            yield (leading, *tail)


def _prefixes(d_max: int, L_max: int) -> list[tuple[int, int]]:
    return [(degree, leading) for degree in range(d_max + 1) for leading in range(1, L_max + 1)]


def _target_value(target: Target) -> CertifiedReal:
    return eval_expression(NAMED_CONSTANTS[target])


def _is_primitive_irreducible(coefficients: tuple[int, ...]) -> bool:
    if len(coefficients) < 2 or math.gcd(*coefficients) != 1:
        return False
    return sympy.Poly(list(coefficients), _X, domain="QQ").is_irreducible


def _real_root_boxes(
    coefficients: tuple[int, ...], eps: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Exact rational isolating intervals of the real roots, increasing."""
    poly = sympy.Poly(list(coefficients), _X)
    boxes = []
    for (lo, hi), _multiplicity in poly.intervals(eps=sympy.Rational(eps.numerator, eps.denominator)):
        boxes.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    return boxes


def _refine_box(
    coefficients: tuple[int, ...], box: tuple[Fraction, Fraction], eps: Fraction
) -> tuple[Fraction, Fraction]:
    lo, hi = box
    if lo == hi:
        return box
    poly = sympy.Poly(list(coefficients), _X)
    s, t = poly.refine_root(
        sympy.Rational(lo.numerator, lo.denominator),
        sympy.Rational(hi.numerator, hi.denominator),
        eps=sympy.Rational(eps.numerator, eps.denominator),
    )
    return Fraction(int(s.p), int(s.q)), Fraction(int(t.p), int(t.q))


@dataclass(frozen=True, order=True)
class Candidate:
    """A polynomial and, in ``alg`` mode, one of its real roots."""

    coefficients: tuple[int, ...]
    root_index: int = -1
    root_box: tuple[Fraction, Fraction] | None = field(default=None, compare=False)


def _value(candidate: Candidate, theta: CertifiedReal) -> CertifiedReal:
    if candidate.root_box is None:
        return abs(CertifiedReal(horner(candidate.coefficients, theta.value)))
    root = CertifiedReal.from_bounds(*candidate.root_box)
    return abs(theta - root)


@dataclass(frozen=True)
class _ScreenTask:
    target: Target
    mode: SearchMode
    degree: int
    leading: int
    L_max: int
    bits: int


@dataclass(frozen=True)
class _ScreenResult:
    enumerated: int
    survivors: list[tuple[Candidate, Fraction, Fraction]]


def _chunk_candidates(task: _ScreenTask) -> Iterator[Candidate | None]:
    eps = Fraction(1, 2**task.bits)
    for tail in _tails(task.degree, task.L_max - task.leading):
        coefficients = (task.leading, *tail)
        if task.mode == "poly":
            yield Candidate(coefficients)
            continue
        if not _is_primitive_irreducible(coefficients):
            yield None
            continue
        boxes = _real_root_boxes(coefficients, eps)
        if not boxes:
            yield None
        for index, box in enumerate(boxes):
            yield Candidate(coefficients, index, box)


def _screen_chunk(task: _ScreenTask) -> _ScreenResult:
    """Screen one (degree, leading coefficient) chunk at fixed precision."""
    enumerated = 0
    kept: list[tuple[Candidate, Fraction, Fraction]] = []
    best_hi: Fraction | None = None
    with working_precision(task.bits):
        theta = _target_value(task.target)
        previous: tuple[int, ...] | None = None
        for candidate in _chunk_candidates(task):
            if candidate is None:
                enumerated += 1
                continue
            if candidate.coefficients != previous:
                enumerated += 1
                previous = candidate.coefficients
            value = _value(candidate, theta)
            if best_hi is not None and value.lo > best_hi:
                continue
            if best_hi is None or value.hi < best_hi:
                best_hi = value.hi
                kept = [item for item in kept if item[1] <= best_hi]
            kept.append((candidate, value.lo, value.hi))
    return _ScreenResult(enumerated, kept)


@dataclass(frozen=True)
class SearchResult:
    """Certified minimizer of one search space.

    ``best_value`` is ``|P(target)|`` in ``poly`` mode and ``|target - xi|``
    in ``alg`` mode; ``best_root_distance`` is the distance from the target
    to the nearest real root of ``best_poly`` (``None`` without real roots).
    """

    target: Target
    mode: SearchMode
    d_max: int
    L_max: int
    best_poly: IntPolynomial
    best_value: CertifiedReal
    best_root_distance: CertifiedReal | None
    witness_root: CertifiedReal | None
    root_index: int | None
    enumerated: int
    survivors: int


def _check_space(space: SearchSpace, cap: int) -> int:
    size = lattice_count(space.d_max, space.L_max)
    if size > cap:
        raise CapExceededError(
            f"search space holds {size} polynomials, above the cap of {cap}"
        )
    return size


def _screen(space: SearchSpace, mode: SearchMode, workers: int) -> tuple[int, list[Candidate]]:
    tasks = [
        _ScreenTask(space.target, mode, degree, leading, space.L_max, space.screen_bits)
        for degree, leading in _prefixes(space.d_max, space.L_max)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_screen_chunk, tasks))
    else:
        results = [_screen_chunk(task) for task in tasks]

    enumerated = sum(result.enumerated for result in results)
    pooled = [item for result in results for item in result.survivors]
    if not pooled:
        return enumerated, []
    # every chunk keeps its own minimum, so this is the global minimum
    best_hi = min(hi for _, _, hi in pooled)
    survivors = sorted({candidate for candidate, lo, _ in pooled if lo <= best_hi})
    return enumerated, survivors


def _describe(candidates: Sequence[Candidate]) -> str:
    shown = ", ".join(
        IntPolynomial(coefficients=c.coefficients).to_text()
        + (f"#{c.root_index}" if c.root_index >= 0 else "")
        for c in candidates[:8]
    )
    more = f" and {len(candidates) - 8} more" if len(candidates) > 8 else ""
    return f"{{{shown}{more}}}"


def _nearest_root_distance(
    coefficients: tuple[int, ...], theta: CertifiedReal, eps: Fraction
) -> tuple[CertifiedReal | None, CertifiedReal | None, int | None]:
    if len(coefficients) < 2:
        return None, None, None
    squarefree = sympy.Poly(list(coefficients), _X).sqf_part()
    squarefree_coefficients = tuple(int(c) for c in squarefree.all_coeffs())
    boxes = _real_root_boxes(squarefree_coefficients, eps)
    if not boxes:
        return None, None, None
    distances = []
    for box in boxes:
        root = CertifiedReal.from_bounds(*box)
        distances.append((abs(theta - root), root))
    nearest_hi = min(distance.hi for distance, _ in distances)
    contenders = [i for i, (distance, _) in enumerate(distances) if distance.lo <= nearest_hi]
    if len(contenders) > 1:
        raise UndecidedComparison("nearest real root not separated")
    index = contenders[0]
    return distances[index][0], distances[index][1], index


def _refine(
    space: SearchSpace,
    mode: SearchMode,
    survivors: list[Candidate],
    config: PrecisionConfig | None,
) -> tuple[Candidate, CertifiedReal, CertifiedReal | None, CertifiedReal | None, int | None]:
    def attempt(bits: int):
        eps = Fraction(1, 2**bits)
        theta = _target_value(space.target)
        evaluated: list[tuple[Candidate, CertifiedReal]] = []
        for candidate in survivors:
            if candidate.root_box is not None:
                candidate = Candidate(
                    candidate.coefficients,
                    candidate.root_index,
                    _refine_box(candidate.coefficients, candidate.root_box, eps),
                )
            value = _value(candidate, theta)
            if value.hi == 0:
                raise CounterexampleError(
                    f"certified zero of {_describe([candidate])} at {space.target}"
                )
            evaluated.append((candidate, value))
        best_hi = min(value.hi for _, value in evaluated)
        contenders = [(c, v) for c, v in evaluated if v.lo <= best_hi]
        if len(contenders) > 1:
            raise UndecidedComparison(
                f"minimum not separated among {_describe([c for c, _ in contenders])}"
            )
        best, value = contenders[0]
        if value.lo <= 0:
            raise UndecidedComparison("minimum not separated from 0")
        if not value.width_at_most(space.width):
            raise UndecidedComparison("minimum wider than the requested width")
        if mode == "alg":
            witness = CertifiedReal.from_bounds(*best.root_box)
            return best, value, value, witness, best.root_index
        distance, witness, index = _nearest_root_distance(best.coefficients, theta, eps)
        return best, value, distance, witness, index

    return escalate(attempt, config, label=f"search:{mode}")


def _search(
    space: SearchSpace,
    mode: SearchMode,
    *,
    workers: int,
    cap: int,
    config: PrecisionConfig | None,
) -> SearchResult:
    _check_space(space, cap)
    enumerated, survivors = _screen(space, mode, workers)
    if not survivors:
        raise InvalidInputError(
            f"no {'real algebraic approximants' if mode == 'alg' else 'polynomials'} "
            f"in the space d<={space.d_max}, L<={space.L_max}"
        )
    best, value, distance, witness, index = _refine(space, mode, survivors, config)
    return SearchResult(
        target=space.target,
        mode=mode,
        d_max=space.d_max,
        L_max=space.L_max,
        best_poly=IntPolynomial(coefficients=best.coefficients),
        best_value=value,
        best_root_distance=distance,
        witness_root=witness,
        root_index=index,
        enumerated=enumerated,
        survivors=len(survivors),
    )


def enumerate_min_poly_value(
    space: SearchSpace,
    *,
    workers: int = 1,
    cap: int = DEFAULT_SEARCH_CAP,
    config: PrecisionConfig | None = None,
) -> SearchResult:
    """Exact minimizer of ``|P(target)|`` over the space.

    Raises:
        CapExceededError: the space is larger than ``cap``.
        InconclusivePrecisionError: the minimum could not be separated at the
            precision cap; the message lists the ambiguous set.
        CounterexampleError: a polynomial evaluated to a certified zero.
    """
    return _search(space, "poly", workers=workers, cap=cap, config=config)


def enumerate_min_alg_approx(
    space: SearchSpace,
    *,
    workers: int = 1,
    cap: int = DEFAULT_SEARCH_CAP,
    config: PrecisionConfig | None = None,
) -> SearchResult:
    """Closest real root of an irreducible polynomial of the space to the target.

    Non-primitive polynomials are skipped: their roots are those of their
    primitive part, which lies in the space with a smaller length.
    """
    return _search(space, "alg", workers=workers, cap=cap, config=config)


@dataclass(frozen=True)
class BoundVerification:
    """Certified comparison of ``log(best_value)`` with a theorem bound."""

    query: MeasureQuery
    log_best: CertifiedReal | None
    bound: CertifiedReal
    margin: CertifiedReal | None
    passed: bool
    inconclusive: bool = False


def verify_against_bound(
    result: SearchResult,
    q: MeasureQuery,
    *,
    bound: CertifiedReal | None = None,
    config: PrecisionConfig | None = None,
) -> BoundVerification:
    """Pass iff ``log(best_value) >= bound`` is certified.

    ``bound`` overrides the theorem bound for ``q``.
    """
    expected_form = "polynomial" if result.mode == "poly" else "algebraic-approx"
    if q.target != result.target or q.form != expected_form:
        raise InvalidInputError(
            f"query ({q.target}, {q.form}) does not match the search "
            f"({result.target}, {expected_form})"
        )
    if q.d != result.d_max or q.L != result.L_max:
        raise InvalidInputError("query degree and length must match the search space")
    theorem_bound = bound if bound is not None else measure_bound(q, config=config)

    def attempt(_bits: int) -> tuple[CertifiedReal, bool]:
        log_best = result.best_value.log()
        return log_best, theorem_bound.less_than(log_best, strict=False)

    try:
        log_best, passed = escalate(attempt, config, label="verify_against_bound")
    except InconclusivePrecisionError:
        return BoundVerification(q, None, theorem_bound, None, False, inconclusive=True)
    with working_precision((config or PrecisionConfig()).working_bits):
        margin = log_best - theorem_bound
    return BoundVerification(q, log_best, theorem_bound, margin, passed)


def search_results(result: SearchResult, verification: BoundVerification | None) -> dict[str, Any]:
    """JSON results block for one search cell."""
    block: dict[str, Any] = {
        "target": result.target,
        "mode": result.mode,
        "d": result.d_max,
        "L": result.L_max,
        "best_poly": result.best_poly.to_text(),
        "best_value": interval_json(result.best_value),
        "best_root_distance": interval_json(result.best_root_distance),
        "witness_root": interval_json(result.witness_root),
        "root_index": result.root_index,
        "enumerated": result.enumerated,
        "survivors": result.survivors,
    }
    if verification is not None:
        block.update(
            {
                "form": verification.query.form,
                "log_best": interval_json(verification.log_best),
                "bound": interval_json(verification.bound),
                "margin": interval_json(verification.margin),
                "passed": verification.passed,
                "inconclusive": verification.inconclusive,
            }
        )
    return block


@dataclass
class SweepSummary:
    records: list[dict[str, Any]] = field(default_factory=list)
    computed: int = 0
    skipped: int = 0

    @property
    def failures(self) -> list[dict[str, Any]]:
        return [r for r in self.records if r.get("passed") is False and not r.get("inconclusive")]

    @property
    def inconclusive(self) -> list[dict[str, Any]]:
        return [r for r in self.records if r.get("inconclusive")]

    @property
    def passed(self) -> bool:
        return not self.failures and not monotonicity_violations(self.records)


def _cell_key(record: dict[str, Any]) -> tuple[str, str, int, int]:
    return (record["target"], record["mode"], int(record["d"]), int(record["L"]))


def sweep(
    targets: Sequence[Target],
    d_max: int,
    L_max: int,
    run_log: str | Path | None = None,
    *,
    modes: Sequence[SearchMode] = ("poly",),
    workers: int = 1,
    cap: int = DEFAULT_SEARCH_CAP,
    screen_bits: int = 64,
    width: Fraction = Fraction(1, 10**6),
    config: PrecisionConfig | None = None,
) -> SweepSummary:
    """Search every cell ``(target, mode, d, L)`` with ``d <= d_max``, ``L <= L_max``.

    Cells already recorded in ``run_log`` are skipped; each new cell is
    appended as one JSON line as soon as it finishes. Cells with ``L >= 3``
    are verified against the theorem bound.
    """
    for target in targets:
        if target not in TARGETS:
            raise InvalidInputError(f"unknown target {target!r}")
    summary = SweepSummary()
    done: dict[tuple[str, str, int, int], dict[str, Any]] = {}
    if run_log is not None:
        done = {_cell_key(record): record for record in read_run_log(run_log)}

    for target in targets:
        for mode in modes:
            for d in range(1, d_max + 1):
                for L in range(1, L_max + 1):
                    key = (target, mode, d, L)
                    if key in done:
                        summary.records.append(done[key])
                        summary.skipped += 1
                        continue
                    space = SearchSpace(
                        target=target, d_max=d, L_max=L, screen_bits=screen_bits, width=width
                    )
                    result = _search(space, mode, workers=workers, cap=cap, config=config)
                    verification = None
                    if L >= 3:
                        form = "polynomial" if mode == "poly" else "algebraic-approx"
                        query = MeasureQuery(target=target, form=form, d=d, L=Fraction(L))
                        verification = verify_against_bound(result, query, config=config)
                    record = search_results(result, verification)
                    if run_log is not None:
                        append_run_log_entry(run_log, record)
                    summary.records.append(record)
                    summary.computed += 1
    return summary


def _interval_bounds(value: Any) -> tuple[Fraction, Fraction]:
    return Fraction(value["lo"]), Fraction(value["hi"])


def monotonicity_violations(records: Sequence[dict[str, Any]]) -> list[tuple[str, str]]:
    """Cells whose minimum is certifiably larger than that of a smaller space.

    The minimum over a larger space can only be smaller, so any pair with
    ``d' <= d``, ``L' <= L`` and ``min(d, L) > min(d', L')`` is a violation.
    """
    by_key = {_cell_key(r): r for r in records}
    violations = []
    for key, record in by_key.items():
        target, mode, d, L = key
        lo, _ = _interval_bounds(record["best_value"])
        for smaller in ((target, mode, d - 1, L), (target, mode, d, L - 1)):
            other = by_key.get(smaller)
            if other is None:
                continue
            _, other_hi = _interval_bounds(other["best_value"])
            if lo > other_hi:
                violations.append(
                    (f"{target}/{mode} d={d} L={L}", f"d={smaller[2]} L={smaller[3]}")
                )
    return violations


__all__ = [
    "BoundVerification",
    "Candidate",
    "SearchMode",
    "SearchResult",
    "SweepSummary",
    "enumerate_min_alg_approx",
    "enumerate_min_poly_value",
    "enumerate_space",
    "lattice_count",
    "monotonicity_violations",
    "search_results",
    "sweep",
    "verify_against_bound",
]
