"""Interpolation determinants at configurable scale.

Columns are indexed by ``(tau, t)`` with ``0 <= tau <= T`` and
``|t| <= T1``; rows by ``(sigma, s)``. The analytic entry is the
``sigma``-th derivative of ``Delta(z, tau, H) * exp(theta*t*z)`` at
``z = s``; the algebraic entry replaces ``theta`` by ``X`` and
``exp(theta)`` by ``Y`` and clears denominators with ``d_sigma``.

The full-size parameters are only ever derived as integers. Matrices are
built for small overridden shapes and refuse ``L`` above the matrix cap.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Any, Literal
import random

import sympy

from transmeasure.binomial import DeltaParams, d_sigma, delta_coefficients, delta_derivatives
from transmeasure.config import DEFAULT_MATRIX_CAP, DEFAULT_TARGET_WIDTH, PrecisionConfig
from transmeasure.errors import (
    CapExceededError,
    CounterexampleError,
    HypothesisError,
    InvalidInputError,
    UndecidedComparison,
)
from transmeasure.linalg import bareiss_determinant, greedy_row_basis, nullspace, submatrix
from transmeasure.numerics import (
    Certified,
    CertifiedComplex,
    CertifiedReal,
    CheckRow,
    check_row,
    decide_inequality,
    decided_floor,
    enclose,
    enclose_real,
    escalate,
    eval_expression,
    parse_expression,
    to_fraction,
)
from transmeasure.schemas import Lemma3Config, ToyInterpolationConfig, VanishingOrderCase
from transmeasure.zeroest import LaurentBiPoly

_Z = sympy.Symbol("z")


@dataclass(frozen=True)
class EntryIndex:
    """Column ``(tau, t)`` and row ``(sigma, s)`` of one matrix entry."""

    tau: int
    t: int
    sigma: int
    s: int


@dataclass(frozen=True)
class InterpolationShape:
    """Ranges of the construction and the closed-form ``theta``."""

    S: int
    S1: int
    T: int
    T1: int
    H: int
    theta: str = "1"

    def __post_init__(self) -> None:
        if min(self.S, self.S1, self.T, self.T1) < 0 or self.H < 1:
            raise InvalidInputError("shape needs S, S1, T, T1 >= 0 and H >= 1")

    @classmethod
    def from_toy(cls, toy: ToyInterpolationConfig) -> InterpolationShape:
        return cls(S=toy.S, S1=toy.S1, T=toy.T, T1=toy.T1, H=toy.H, theta=toy.theta)

    @property
    def L(self) -> int:
        return (self.T + 1) * (2 * self.T1 + 1)

    @property
    def theta_expr(self) -> sympy.Expr:
        return parse_expression(self.theta)

    def columns(self) -> list[tuple[int, int]]:
        return [(tau, t) for tau in range(self.T + 1) for t in range(-self.T1, self.T1 + 1)]

    def rows(self) -> list[tuple[int, int]]:
        """Rows with ``s >= 0`` in lexicographic ``(sigma, s)`` order."""
        return [(sigma, s) for sigma in range(self.S + 1) for s in range(self.S1 + 1)]

    def contains(self, idx: EntryIndex) -> bool:
        return (
            0 <= idx.tau <= self.T
            and abs(idx.t) <= self.T1
            and 0 <= idx.sigma <= self.S
            and abs(idx.s) <= self.S1
        )

    def indices(self) -> Iterator[EntryIndex]:
        """Every index of the construction range (``|s| <= S1``)."""
        for tau, t in self.columns():
            for sigma in range(self.S + 1):
                for s in range(-self.S1, self.S1 + 1):
                    yield EntryIndex(tau, t, sigma, s)


def _check_index(idx: EntryIndex, shape: InterpolationShape) -> None:
    if not shape.contains(idx):
        raise InvalidInputError(f"index {idx} outside the construction range")


# Parameters


@dataclass(frozen=True)
class BoundParams:
    """Derived real and integer parameters of the construction."""

    D: int
    logA: CertifiedReal
    logB: CertifiedReal
    E: CertifiedReal
    abs_theta: CertifiedReal
    theta: CertifiedComplex
    U: CertifiedReal
    V: CertifiedReal
    W: CertifiedReal
    S: int
    S1: int
    T: int
    T1: int
    H: int
    L: int
    expressions: Mapping[str, sympy.Expr] = field(default_factory=dict)
    checks: tuple[CheckRow, ...] = ()

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.checks)

    def shape(self) -> InterpolationShape:
        return InterpolationShape(
            S=self.S,
            S1=self.S1,
            T=self.T,
            T1=self.T1,
            H=self.H,
            theta=str(self.expressions["theta"]),
        )


def parameter_expressions(
    D: int, logA: Any, logB: Any, E: Any, theta: Any
) -> dict[str, sympy.Expr]:
    """Closed forms of ``U``, ``V``, ``W`` and their ingredients."""
    logA_expr, logB_expr = parse_expression(logA), parse_expression(logB)
    E_expr, theta_expr = parse_expression(E), parse_expression(theta)
    logE = sympy.expand_log(sympy.log(E_expr), force=True)
    abs_theta = sympy.Abs(theta_expr)
    abs_theta_plus = sympy.Max(1, abs_theta)
    U = (sympy.Rational(33, 10) * D * sympy.log(D + 2) + logE) / logE
    V = (2 * E_expr * abs_theta + D * logA_expr + 6 * logE) / logE
    W = (
        logB_expr
        + sympy.log(logA_expr)
        + 4 * sympy.log(D)
        + 2 * sympy.log(E_expr * abs_theta_plus)
        + 10
    ) / logE
    return {
        "logA": logA_expr,
        "logB": logB_expr,
        "E": E_expr,
        "logE": logE,
        "theta": theta_expr,
        "abs_theta": abs_theta,
        "U": U,
        "V": V,
        "W": W,
    }


def derive_params(
    D: int,
    logA: Any,
    logB: Any,
    E: Any,
    theta: Any,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> BoundParams:
    """Derive ``U, V, W`` and the integer parameters ``S, S1, T, T1, H, L``.

    Raises:
        HypothesisError: ``E < e`` or ``logA < 1/D`` is certified.
        InconclusivePrecisionError: a floor straddles an integer at the cap.
    """
    if isinstance(D, bool) or not isinstance(D, int) or D < 1:
        raise InvalidInputError("D must be a positive integer")
    expr = parameter_expressions(D, logA, logB, E, theta)

    if not decide_inequality(sympy.E, expr["E"], config=config).holds:
        raise HypothesisError(f"E must be at least e, got {expr['E']}")
    if not decide_inequality(sympy.Rational(1, D), expr["logA"], config=config).holds:
        raise HypothesisError(f"logA must be at least 1/D, got {expr['logA']}")

    def value(name: str) -> CertifiedReal:
        return enclose_real(expr[name], precision, config, label=name)

    theta_value = enclose(expr["theta"], precision, config, label="theta")
    if isinstance(theta_value, CertifiedReal):
        theta_value = CertifiedComplex.from_parts(theta_value)

    U, V, W, logE = expr["U"], expr["V"], expr["W"], expr["logE"]
    S = decided_floor(sympy.Rational(21, 2) * U * V, config)
    S1 = decided_floor(12 * D * W + sympy.Rational(1, 2), config)
    T = decided_floor(sympy.Rational(101, 5) * D * V * W, config)
    T1 = decided_floor(sympy.Rational(21, 5) * U + sympy.Rational(1, 2), config)
    H = decided_floor(sympy.Rational(3, 2) * W * logE, config)
    L = (T + 1) * (2 * T1 + 1)

    checks = (
        check_row("U >= 1", 1, U, config=config),
        check_row("V >= 6", 6, V, config=config),
        check_row("W >= 2", 2, W, config=config),
        check_row("L < 211*D*U*V*W", L, 211 * D * U * V * W, strict=True, config=config),
    )
    return BoundParams(
        D=D,
        logA=value("logA"),
        logB=value("logB"),
        E=value("E"),
        abs_theta=value("abs_theta"),
        theta=theta_value,
        U=value("U"),
        V=value("V"),
        W=value("W"),
        S=S,
        S1=S1,
        T=T,
        T1=T1,
        H=H,
        L=L,
        expressions=expr,
        checks=checks,
    )


# Entries


def _delta_terms(idx: EntryIndex, H: int) -> list[tuple[int, Fraction]]:
    """``(k, C(sigma, k) * Delta^(k)(s, tau, H))`` for ``k <= min(tau, sigma)``."""
    derivatives = delta_derivatives(idx.s, DeltaParams.from_degree(idx.tau, H), idx.sigma)
    return [
        (k, comb(idx.sigma, k) * derivatives[k])
        for k in range(min(idx.tau, idx.sigma) + 1)
        if derivatives[k]
    ]


def gamma_expression(idx: EntryIndex, shape: InterpolationShape) -> sympy.Expr:
    theta = shape.theta_expr
    total = sympy.Integer(0)
    for k, weight in _delta_terms(idx, shape.H):
        total += sympy.Rational(weight.numerator, weight.denominator) * (
            idx.t * theta
        ) ** (idx.sigma - k)
    return total * sympy.exp(theta * idx.t * idx.s)


def gamma_entry(
    idx: EntryIndex,
    shape: InterpolationShape,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedComplex:
    """Certified analytic entry at ``idx``."""
    _check_index(idx, shape)
    value = enclose(gamma_expression(idx, shape), precision, config, label="gamma_entry")
    if isinstance(value, CertifiedReal):
        return CertifiedComplex.from_parts(value)
    return value


def _entry_poly_unchecked(idx: EntryIndex, H: int) -> LaurentBiPoly:
    denominator = d_sigma(H, idx.sigma).value
    terms: dict[tuple[int, int], Fraction] = {}
    for k, weight in _delta_terms(idx, H):
        power = idx.sigma - k
        terms[(power, idx.t * idx.s)] = denominator * weight * idx.t**power
    return LaurentBiPoly(terms)


def a_entry_poly(idx: EntryIndex, shape: InterpolationShape) -> LaurentBiPoly:
    """Algebraic entry as a Laurent polynomial in ``X, Y`` with integer coefficients.

    Raises:
        CounterexampleError: a coefficient is not an integer after clearing.
    """
    _check_index(idx, shape)
    poly = _entry_poly_unchecked(idx, shape.H)
    if not poly.is_integral():
        raise CounterexampleError(f"non-integral algebraic entry at {idx}: {poly!r}")
    return poly


@dataclass
class IntegralitySweepSummary:
    checked: int = 0
    failures: int = 0
    first_failure: EntryIndex | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def entry_integrality_sweep(shape: InterpolationShape) -> IntegralitySweepSummary:
    """Check integrality of every algebraic entry of the construction range."""
    summary = IntegralitySweepSummary()
    for idx in shape.indices():
        summary.checked += 1
        if not _entry_poly_unchecked(idx, shape.H).is_integral():
            summary.failures += 1
            if summary.first_failure is None:
                summary.first_failure = idx
    return summary


def _as_complex(value: Certified) -> CertifiedComplex:
    if isinstance(value, CertifiedReal):
        return CertifiedComplex.from_parts(value)
    return value


def _as_real(value: Certified) -> CertifiedReal:
    if isinstance(value, CertifiedComplex):
        return value.as_real()
    return value


@dataclass(frozen=True)
class ConsistencyResult:
    index: EntryIndex
    polynomial_value: CertifiedComplex
    scaled_gamma: CertifiedComplex
    passed: bool


def entry_consistency_check(
    idx: EntryIndex,
    shape: InterpolationShape,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> ConsistencyResult:
    """The algebraic entry at ``X = theta, Y = exp(theta)`` against ``d_sigma * gamma``."""
    poly = a_entry_poly(idx, shape)
    scale = d_sigma(shape.H, idx.sigma).value
    theta_expr = shape.theta_expr
    # exp(log 2) collapses to 2, keeping that path exact
    y_expr = sympy.exp(theta_expr)
    gamma_expr = gamma_expression(idx, shape)
    width = to_fraction(precision)

    def attempt(_bits: int) -> ConsistencyResult:
        x = eval_expression(theta_expr)
        y = eval_expression(y_expr)
        polynomial_value = _as_complex(poly.evaluate_interval(x, y))
        scaled = _as_complex(eval_expression(gamma_expr) * scale)
        if not scaled.width_at_most(width * max(scale, 1)):
            raise UndecidedComparison(f"entry width above {float(width):.3g}")
        return ConsistencyResult(
            idx, polynomial_value, scaled, polynomial_value.overlaps(scaled)
        )

    return escalate(attempt, config, label="entry_consistency")


@dataclass
class ConsistencySweepSummary:
    checked: int = 0
    failures: list[EntryIndex] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def entry_consistency_sweep(
    shape: InterpolationShape,
    samples: int | None = 20,
    seed: int = 0,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> ConsistencySweepSummary:
    """Run `entry_consistency_check` on a seeded sample (or all indices for ``None``)."""
    indices = list(shape.indices())
    if samples is not None and samples < len(indices):
        indices = random.Random(seed).sample(indices, samples)
    summary = ConsistencySweepSummary()
    for idx in indices:
        summary.checked += 1
        if not entry_consistency_check(idx, shape, precision, config).passed:
            summary.failures.append(idx)
    return summary


# Toy matrices

ToyVerdict = Literal["full-rank", "under-determined", "RANK-DEFICIENT"]


@dataclass(frozen=True)
class ToyRankReport:
    L: int
    rows: int
    rank: int
    selected_rows: tuple[tuple[int, int], ...]
    shape_regime: bool
    verdict: ToyVerdict
    minor_determinant: Fraction | None = None
    kernel: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict != "RANK-DEFICIENT"


def toy_matrix(toy: ToyInterpolationConfig) -> list[list[Fraction]]:
    """Algebraic entries at ``X = beta``, ``Y = alpha``; rows `InterpolationShape.rows`."""
    shape = InterpolationShape.from_toy(toy)
    return [
        [
            a_entry_poly(EntryIndex(tau, t, sigma, s), shape).evaluate(toy.beta, toy.alpha)
            for tau, t in shape.columns()
        ]
        for sigma, s in shape.rows()
    ]


def toy_rank_check(
    toy: ToyInterpolationConfig, matrix_cap: int = DEFAULT_MATRIX_CAP
) -> ToyRankReport:
    """Exact rank of the toy matrix with a nonzero minor or a kernel as witness.

    The rows are ``S+1`` derivatives at the ``S1+1`` points ``s >= 0``, so a
    rank deficiency when ``(S+1)(S1+1) > (T+S1+1)(2*T1+1)`` contradicts the
    multiplicity estimate and is reported as ``RANK-DEFICIENT``.

    Raises:
        CapExceededError: ``L`` exceeds ``matrix_cap``.
    """
    shape = InterpolationShape.from_toy(toy)
    L = shape.L
    if L > matrix_cap:
        raise CapExceededError(f"L = {L} exceeds the matrix cap {matrix_cap}")
    matrix = toy_matrix(toy)
    rows = shape.rows()
    basis = greedy_row_basis(matrix)
    selected = tuple(rows[i] for i in basis.pivot_rows)
    regime = (toy.S + 1) * (toy.S1 + 1) > (toy.T + toy.S1 + 1) * (2 * toy.T1 + 1)

    if basis.rank == L:
        determinant = bareiss_determinant(submatrix(matrix, basis.pivot_rows, range(L)))
        if determinant == 0:
            raise CounterexampleError("selected rows give a singular minor")
        return ToyRankReport(
            L=L,
            rows=len(rows),
            rank=basis.rank,
            selected_rows=selected,
            shape_regime=regime,
            verdict="full-rank",
            minor_determinant=determinant,
        )
    kernel = tuple(tuple(vector) for vector in nullspace(matrix, L))
    return ToyRankReport(
        L=L,
        rows=len(rows),
        rank=basis.rank,
        selected_rows=selected,
        shape_regime=regime,
        verdict="RANK-DEFICIENT" if regime else "under-determined",
        kernel=kernel,
    )


# Analytic upper bound


def lemma3_expression(cfg: Lemma3Config) -> sympy.Expr:
    E = parse_expression(cfg.E)
    logE = sympy.expand_log(sympy.log(E), force=True)
    return (
        -sympy.Rational(cfg.L, 2) * logE
        + parse_expression(cfg.M)
        + parse_expression(cfg.S) * logE
        + sympy.log(2 * cfg.L * E)
    )


def lemma3_rhs(
    cfg: Lemma3Config,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified bound on ``log|det| / L``.

    Raises:
        InvalidInputError: ``epsilon`` is not in ``(0, E^-L)``.
    """
    E = parse_expression(cfg.E)
    if not decide_inequality(0, E, strict=True, config=config).holds:
        raise InvalidInputError("E must be positive")
    if cfg.epsilon is not None:
        if cfg.epsilon <= 0:
            raise InvalidInputError("epsilon must be positive")
        if not decide_inequality(cfg.epsilon, E ** (-cfg.L), strict=True, config=config).holds:
            raise InvalidInputError(f"epsilon must be below E^-L = {E ** (-cfg.L)}")
    return enclose_real(lemma3_expression(cfg), precision, config, label="lemma3_rhs")


@dataclass(frozen=True)
class MonotonicityRow:
    L: int
    S: int
    step_M: bool
    step_S: bool
    step_L: bool | None


def lemma3_monotonicity_grid(
    L_max: int = 6,
    S_max: int = 4,
    E: str = "E",
    M: str = "1",
    config: PrecisionConfig | None = None,
) -> list[MonotonicityRow]:
    """Signs of the differences of `lemma3_rhs` in ``M``, ``S`` and ``L``.

    The step in ``L`` is asserted negative only where ``L > 2*(S+1)``
    (with ``E > 1``); elsewhere it is ``None``.
    """
    rows: list[MonotonicityRow] = []
    for L in range(1, L_max + 1):
        for S in range(S_max + 1):
            base = lemma3_expression(Lemma3Config(L=L, E=E, M=M, S=str(S)))
            more_M = lemma3_expression(Lemma3Config(L=L, E=E, M=f"({M}) + 1", S=str(S)))
            more_S = lemma3_expression(Lemma3Config(L=L, E=E, M=M, S=str(S + 1)))
            step_M = sympy.simplify(more_M - base) == 1
            step_S = decide_inequality(base, more_S, strict=True, config=config).holds
            step_L: bool | None = None
            if L > 2 * (S + 1):
                more_L = lemma3_expression(Lemma3Config(L=L + 1, E=E, M=M, S=str(S)))
                step_L = decide_inequality(more_L, base, strict=True, config=config).holds
            rows.append(MonotonicityRow(L, S, step_M, step_S, step_L))
    return rows


@dataclass(frozen=True)
class DecayReport:
    L: int
    S: int
    M: CertifiedReal
    rhs: CertifiedReal
    abs_determinant: CertifiedReal
    method: Literal["expansion", "hadamard"]
    passed: bool


def _majorant(
    idx: EntryIndex, H: int, radius: CertifiedReal, abs_theta: CertifiedReal
) -> CertifiedReal:
    # |phi^(sigma)(w)| on |w| <= radius, from absolute coefficients
    coefficients = delta_coefficients(DeltaParams.from_degree(idx.tau, H))
    speed = abs_theta * abs(idx.t)
    total = CertifiedReal.exact(0)
    for k in range(min(idx.tau, idx.sigma) + 1):
        bound = CertifiedReal.exact(0)
        for j in range(k, len(coefficients)):
            falling = factorial(j) // factorial(j - k)
            bound = bound + radius ** (j - k) * (abs(coefficients[j]) * falling)
        total = total + bound * speed ** (idx.sigma - k) * comb(idx.sigma, k)
    return total * (speed * radius).exp()


def _permutation_sign(permutation: Sequence[int]) -> int:
    sign = 1
    for i in range(len(permutation)):
        for j in range(i + 1, len(permutation)):
            if permutation[i] > permutation[j]:
                sign = -sign
    return sign


def _determinant_modulus(matrix: list[list[CertifiedComplex]]) -> CertifiedReal:
    size = len(matrix)
    total = CertifiedComplex.exact(0)
    for permutation in permutations(range(size)):
        term = CertifiedComplex.exact(_permutation_sign(permutation))
        for row, column in enumerate(permutation):
            term = term * matrix[row][column]
        total = total + term
    return abs(total)


def _hadamard_bound(matrix: list[list[CertifiedComplex]]) -> CertifiedReal:
    bound = CertifiedReal.exact(1)
    for row in matrix:
        squares = CertifiedReal.exact(0)
        for entry in row:
            squares = squares + abs(entry) ** 2
        bound = bound * squares.sqrt()
    return bound


def determinant_decay_check(
    shape: InterpolationShape,
    E: Any = "E",
    config: PrecisionConfig | None = None,
    *,
    expansion_limit: int = 7,
) -> DecayReport:
    """Certified ``log|det| / L`` of the analytic matrix against `lemma3_rhs`.

    Uses the first ``L`` rows of `InterpolationShape.rows`, ``epsilon * b = 0``
    and ``M`` as the log of the largest entry majorant on ``|z| <= E``.
    """
    L = shape.L
    rows = shape.rows()
    if len(rows) < L:
        raise InvalidInputError(f"{len(rows)} rows cannot form an {L}x{L} determinant")
    rows = rows[:L]
    S = max(sigma for sigma, _ in rows)
    indices = [[EntryIndex(tau, t, sigma, s) for tau, t in shape.columns()] for sigma, s in rows]
    gamma = [[gamma_expression(idx, shape) for idx in row] for row in indices]
    E_expr = parse_expression(E)
    theta_expr = shape.theta_expr
    method: Literal["expansion", "hadamard"] = (
        "expansion" if L <= expansion_limit else "hadamard"
    )

    def attempt(_bits: int) -> DecayReport:
        E_value = _as_real(eval_expression(E_expr))
        abs_theta = abs(_as_complex(eval_expression(theta_expr)))
        majorant = CertifiedReal.exact(0)
        for row in indices:
            for idx in row:
                majorant = majorant.maximum(
                    _majorant(idx, shape.H, E_value * abs(idx.s), abs_theta)
                )
        M = majorant.log()
        logE = E_value.log()
        rhs = -(logE * L) / 2 + M + logE * S + (E_value * (2 * L)).log()
        matrix = [[_as_complex(eval_expression(entry)) for entry in row] for row in gamma]
        if method == "expansion":
            modulus = _determinant_modulus(matrix)
        else:
            modulus = _hadamard_bound(matrix)
        passed = modulus.less_than((rhs * L).exp(), strict=False)
        return DecayReport(L, S, M, rhs, modulus, method, passed)

    return escalate(attempt, config, label="determinant_decay")


# Vanishing order


@dataclass(frozen=True)
class VanishingOrderReport:
    computed_order: int | None
    lower_bound: int
    identically_zero: bool
    passed: bool
    determinant: str


def vanishing_order_check(case: VanishingOrderCase) -> VanishingOrderReport:
    """Order at ``z = 0`` of ``det(C(n, sigma) sigma! (z*zeta)^(n - sigma))``."""
    matrix = sympy.Matrix(
        [
            [
                sympy.binomial(n, sigma)
                * sympy.factorial(sigma)
                * (_Z * sympy.Rational(zeta.numerator, zeta.denominator)) ** (n - sigma)
                if n >= sigma
                else sympy.Integer(0)
                for n in case.exponents
            ]
            for sigma, zeta in zip(case.orders, case.points)
        ]
    )
    determinant = sympy.expand(matrix.det())
    bound = case.lower_bound
    if determinant == 0:
        return VanishingOrderReport(None, bound, True, True, "0")
    order = min(monomial[0] for monomial in sympy.Poly(determinant, _Z).monoms())
    return VanishingOrderReport(order, bound, False, order >= bound, str(determinant))


__all__ = [
    "BoundParams",
    "ConsistencyResult",
    "ConsistencySweepSummary",
    "DecayReport",
    "EntryIndex",
    "IntegralitySweepSummary",
    "InterpolationShape",
    "MonotonicityRow",
    "ToyRankReport",
    "VanishingOrderReport",
    "a_entry_poly",
    "derive_params",
    "determinant_decay_check",
    "entry_consistency_check",
    "entry_consistency_sweep",
    "entry_integrality_sweep",
    "gamma_entry",
    "gamma_expression",
    "lemma3_expression",
    "lemma3_monotonicity_grid",
    "lemma3_rhs",
    "parameter_expressions",
    "toy_matrix",
    "toy_rank_check",
    "vanishing_order_check",
]
