"""The derivation ``delta = d/dX + beta*Y*d/dY`` and the multiplicity estimate.

A nonzero ``P`` with ``deg_X P <= D0`` and ``deg_Y P <= D1`` cannot have
``delta^sigma P(xi_mu, eta_mu) = 0`` for all ``sigma < S`` and ``mu <= M``
once ``S*M > (D0 + M)(D1 + 1)``. `lemma2_check` verifies this per instance
by the exact rank of the constraint matrix.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Literal
import random

from transmeasure.errors import CounterexampleError, InvalidInputError
from transmeasure.linalg import greedy_row_basis, mat_vec, nullspace
from transmeasure.numerics import Certified, CertifiedReal
from transmeasure.schemas import ZeroEstimateInstance

Monomial = tuple[int, int]


@dataclass(frozen=True, eq=False)
class LaurentBiPoly:
    """``sum c_ij X^i Y^j`` with ``i >= 0``, ``j`` of any sign, no zero terms."""

    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[Monomial, Fraction] = {}
        for (i, j), coefficient in self.terms.items():
            if i < 0:
                raise InvalidInputError("negative powers of X are not allowed")
            value = Fraction(coefficient)
            if value:
                cleaned[(int(i), int(j))] = value
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    @classmethod
    def monomial(cls, i: int, j: int, coefficient: Any = 1) -> LaurentBiPoly:
        return cls({(i, j): Fraction(coefficient)})

    @classmethod
    def constant(cls, value: Any) -> LaurentBiPoly:
        return cls.monomial(0, 0, value)

    @classmethod
    def zero(cls) -> LaurentBiPoly:
        return cls({})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def max_j(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def min_j(self) -> int:
        return min((j for _, j in self.terms), default=0)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentBiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentBiPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: LaurentBiPoly) -> LaurentBiPoly:
        result = dict(self.terms)
        for key, value in other.terms.items():
            result[key] = result.get(key, Fraction(0)) + value
        return LaurentBiPoly(result)

    def __neg__(self) -> LaurentBiPoly:
        return self.scale(-1)

    def __sub__(self, other: LaurentBiPoly) -> LaurentBiPoly:
        return self + (-other)

    def __mul__(self, other: LaurentBiPoly | int | Fraction) -> LaurentBiPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        result: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                result[key] = result.get(key, Fraction(0)) + c1 * c2
        return LaurentBiPoly(result)

    __rmul__ = __mul__

    def scale(self, factor: Any) -> LaurentBiPoly:
        factor = Fraction(factor)
        return LaurentBiPoly({key: value * factor for key, value in self.terms.items()})

    def delta(self, beta: Any) -> LaurentBiPoly:
        """One application of ``d/dX + beta*Y*d/dY``."""
        beta = Fraction(beta)
        result: dict[Monomial, Fraction] = {}
        for (i, j), coefficient in self.terms.items():
            if i:
                key = (i - 1, j)
                result[key] = result.get(key, Fraction(0)) + i * coefficient
            if j:
                result[(i, j)] = result.get((i, j), Fraction(0)) + beta * j * coefficient
        return LaurentBiPoly(result)

    def evaluate(self, x: Any, y: Any) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        if y == 0 and self.min_j < 0:
            raise InvalidInputError("negative powers of Y at Y = 0")
        return sum(
            (c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0)
        )

    def evaluate_interval(self, x: Certified, y: Certified) -> Certified:
        """Evaluate at certified values (ambient working precision)."""
        total: Any = CertifiedReal.exact(0)
        for (i, j), coefficient in self.terms.items():
            term: Any = CertifiedReal.exact(coefficient)
            if i:
                term = term * x**i
            if j:
                term = term * y**j
            total = total + term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentBiPoly(0)"
        parts = [f"{c}*X^{i}*Y^{j}" for (i, j), c in self.terms.items()]
        return f"LaurentBiPoly({' + '.join(parts)})"


def delta_apply(poly: LaurentBiPoly, beta: Any, order: int) -> LaurentBiPoly:
    """``delta^order P``; ``delta^0 P = P``."""
    if order < 0:
        raise InvalidInputError("order must be non-negative")
    for _ in range(order):
        poly = poly.delta(beta)
    return poly


def delta_monomial_value(
    i: int, j: int, sigma: int, beta: Fraction, xi: Fraction, eta: Fraction
) -> Fraction:
    """``delta^sigma(X^i Y^j)`` at ``(xi, eta)`` in closed form.

    ``d/dX`` and ``beta*Y*d/dY`` commute and the latter multiplies
    ``X^a Y^j`` by ``beta*j``, so the binomial theorem applies.
    """
    scalar = beta * j
    total = Fraction(0)
    for k in range(min(sigma, i) + 1):
        falling = factorial(i) // factorial(i - k)
        total += comb(sigma, k) * scalar ** (sigma - k) * falling * xi ** (i - k)
    return total * eta**j


def monomial_columns(D0: int, D1: int) -> list[Monomial]:
    """Columns ``X^i Y^j``: ``j`` outer, ``i`` inner (``1, X, Y, XY`` for D0 = D1 = 1)."""
    return [(i, j) for j in range(D1 + 1) for i in range(D0 + 1)]


def constraint_matrix(inst: ZeroEstimateInstance) -> list[list[Fraction]]:
    """Rows ``(mu, sigma)``, columns `monomial_columns`; ``S*M`` rows."""
    columns = monomial_columns(inst.D0, inst.D1)
    return [
        [delta_monomial_value(i, j, sigma, inst.beta, xi, eta) for i, j in columns]
        for xi, eta in inst.points
        for sigma in range(inst.S)
    ]


def polynomial_from_vector(
    inst: ZeroEstimateInstance, vector: list[Fraction]
) -> LaurentBiPoly:
    columns = monomial_columns(inst.D0, inst.D1)
    return LaurentBiPoly({column: value for column, value in zip(columns, vector)})


Lemma2Verdict = Literal["consistent-with-lemma", "COUNTEREXAMPLE"]


@dataclass(frozen=True)
class Lemma2Report:
    condition_21: bool
    rank: int
    kernel_dim: int
    verdict: Lemma2Verdict
    rows: int
    columns: int
    kernel_witness: tuple[Fraction, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "consistent-with-lemma"


def lemma2_check(inst: ZeroEstimateInstance) -> Lemma2Report:
    """Exact rank of the constraint matrix against the shape condition ``S*M > (D0+M)(D1+1)``."""
    matrix = constraint_matrix(inst)
    columns = inst.column_count
    matrix_rank = greedy_row_basis(matrix).rank
    kernel_dim = columns - matrix_rank

    witness: tuple[Fraction, ...] | None = None
    if kernel_dim:
        vector = nullspace(matrix, columns)[0]
        if any(mat_vec(matrix, vector)):
            raise CounterexampleError("nullspace vector does not annihilate the matrix")
        witness = tuple(vector)

    verdict: Lemma2Verdict = (
        "COUNTEREXAMPLE" if inst.condition_21 and kernel_dim else "consistent-with-lemma"
    )
    return Lemma2Report(
        condition_21=inst.condition_21,
        rank=matrix_rank,
        kernel_dim=kernel_dim,
        verdict=verdict,
        rows=len(matrix),
        columns=columns,
        kernel_witness=witness,
    )


def random_instance(
    rng: random.Random, D0: int, D1: int, S: int, M: int, *, spread: int = 20
) -> ZeroEstimateInstance:
    """Random rational instance with distinct ``xi`` and nonzero ``eta``, ``beta``."""

    def fraction(nonzero: bool = False) -> Fraction:
        while True:
            value = Fraction(rng.randint(-spread, spread), rng.randint(1, 5))
            if value or not nonzero:
                return value

    xis: list[Fraction] = []
    while len(xis) < M:
        candidate = fraction()
        if candidate not in xis:
            xis.append(candidate)
    points = tuple((xi, fraction(nonzero=True)) for xi in xis)
    return ZeroEstimateInstance(
        D0=D0, D1=D1, S=S, M=M, beta=fraction(nonzero=True), points=points
    )


@dataclass
class Lemma2SweepSummary:
    instances: int = 0
    counterexamples: int = 0
    violating_instances: int = 0
    kernel_witnesses: int = 0
    first_counterexample: ZeroEstimateInstance | None = None
    witness_examples: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexamples == 0 and self.kernel_witnesses == self.violating_instances


def lemma2_sweep(
    bound: int = 5, trials: int = 50, seed: int = 0, *, witness_examples: int = 5
) -> Lemma2SweepSummary:
    """Random instances for every ``1 <= D0, D1, S, M <= bound``.

    Shapes with ``S*M > (D0+M)(D1+1)`` must have a trivial kernel; each shape with
    ``S*M < (D0+1)(D1+1)`` is run once and must exhibit a kernel element.
    """
    if bound < 1 or trials < 1:
        raise InvalidInputError("bound and trials must be positive")
    rng = random.Random(seed)
    summary = Lemma2SweepSummary()
    shapes = [
        (D0, D1, S, M)
        for D0 in range(1, bound + 1)
        for D1 in range(1, bound + 1)
        for S in range(1, bound + 1)
        for M in range(1, bound + 1)
    ]
    for D0, D1, S, M in shapes:
        if S * M > (D0 + M) * (D1 + 1):
            for _ in range(trials):
                instance = random_instance(rng, D0, D1, S, M)
                report = lemma2_check(instance)
                summary.instances += 1
                if not report.passed:
                    summary.counterexamples += 1
                    if summary.first_counterexample is None:
                        summary.first_counterexample = instance
        elif S * M < (D0 + 1) * (D1 + 1):
            instance = random_instance(rng, D0, D1, S, M)
            report = lemma2_check(instance)
            summary.instances += 1
            summary.violating_instances += 1
            if report.kernel_witness is not None:
                summary.kernel_witnesses += 1
                if len(summary.witness_examples) < witness_examples:
                    summary.witness_examples.append(
                        {
                            "shape": {"D0": D0, "D1": D1, "S": S, "M": M},
                            "kernel_dim": report.kernel_dim,
                            "polynomial": repr(
                                polynomial_from_vector(instance, list(report.kernel_witness))
                            ),
                        }
                    )
    return summary


__all__ = [
    "LaurentBiPoly",
    "Lemma2Report",
    "Lemma2SweepSummary",
    "constraint_matrix",
    "delta_apply",
    "delta_monomial_value",
    "lemma2_check",
    "lemma2_sweep",
    "monomial_columns",
    "polynomial_from_vector",
    "random_instance",
]
