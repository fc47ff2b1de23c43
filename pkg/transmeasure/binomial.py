"""Binomial (Feldman) polynomials and the denominator lemma.

``Delta(z, N, H) = (z(z+1)...(z+H-1)/H!)^q * z(z+1)...(z+r-1)/r!`` with
``N = qH + r``, ``1 <= r <= H``; ``Delta(z, 0, H) = 1``. Derivatives come
from exact coefficients expanded once per ``(N, H)``. The derivatives of
order ``u <= sigma`` become integers after multiplying by
``d_sigma = nu(H)^sigma``, ``nu(H) = lcm(1, ..., H)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm
from typing import Any

import sympy

from transmeasure.config import PrecisionConfig
from transmeasure.errors import InvalidInputError, UndecidedComparison
from transmeasure.numerics import (
    CertifiedReal,
    decide_inequality,
    escalate,
    eval_expression,
)

# log d_sigma < (107/103) sigma H
LEMMA4_LOG_DENOMINATOR_RATIO = Fraction(107, 103)


@lru_cache(maxsize=None)
def nu(k: int) -> int:
    """``lcm(1, ..., k)``."""
    if k < 1:
        raise InvalidInputError("nu(k) needs k >= 1")
    return lcm(*range(1, k + 1))


@dataclass(frozen=True)
class DeltaParams:
    """``N = qH + r`` with ``1 <= r <= H`` (``q = r = 0`` when ``N = 0``)."""

    N: int
    H: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if self.N < 0 or self.H < 1:
            raise InvalidInputError("Delta needs N >= 0 and H >= 1")
        if self.N == 0:
            if (self.q, self.r) != (0, 0):
                raise InvalidInputError("N = 0 has q = r = 0")
        elif not (1 <= self.r <= self.H and self.N == self.q * self.H + self.r):
            raise InvalidInputError(f"inconsistent split N={self.N}, H={self.H}")

    @classmethod
    def from_degree(cls, N: int, H: int) -> DeltaParams:
        if N < 0 or H < 1:
            raise InvalidInputError("Delta needs N >= 0 and H >= 1")
        if N == 0:
            return cls(N=0, H=H, q=0, r=0)
        q = -(-N // H) - 1
        return cls(N=N, H=H, q=q, r=N - q * H)


@dataclass(frozen=True)
class DenominatorPower:
    """``d_sigma = nu(H)^sigma``."""

    H: int
    sigma: int
    value: int


def _rising_factor(length: int) -> list[int]:
    # z(z+1)...(z+length-1), ascending coefficients
    coefficients = [1]
    for shift in range(length):
        shifted = [0] * (len(coefficients) + 1)
        for k, c in enumerate(coefficients):
            shifted[k] += c * shift
            shifted[k + 1] += c
        coefficients = shifted
    return coefficients


def _multiply(left: list[int], right: list[int]) -> list[int]:
    product = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a:
            for j, b in enumerate(right):
                product[i + j] += a * b
    return product


@lru_cache(maxsize=512)
def _delta_numerator(N: int, H: int) -> tuple[tuple[int, ...], int]:
    params = DeltaParams.from_degree(N, H)
    if N == 0:
        return (1,), 1
    block = _rising_factor(H)
    numerator = [1]
    for _ in range(params.q):
        numerator = _multiply(numerator, block)
    numerator = _multiply(numerator, _rising_factor(params.r))
    return tuple(numerator), factorial(H) ** params.q * factorial(params.r)


def delta_coefficients(p: DeltaParams) -> tuple[Fraction, ...]:
    """Exact coefficients of ``Delta(z, N, H)``, constant term first."""
    numerator, denominator = _delta_numerator(p.N, p.H)
    return tuple(Fraction(c, denominator) for c in numerator)


def delta_eval(x: int | Fraction, p: DeltaParams) -> Fraction:
    """Exact value of ``Delta(x, N, H)`` from the product form."""
    x = Fraction(x)
    if p.N == 0:
        return Fraction(1)
    block = Fraction(1)
    for k in range(p.H):
        block *= x + k
    tail = Fraction(1)
    for k in range(p.r):
        tail *= x + k
    return (block / factorial(p.H)) ** p.q * tail / factorial(p.r)


def delta_derivatives(x: int | Fraction, p: DeltaParams, sigma: int) -> list[Fraction]:
    """``[Delta^(u)(x, N, H) for u in 0..sigma]``; entries beyond ``N`` are 0."""
    if sigma < 0:
        raise InvalidInputError("sigma must be non-negative")
    x = Fraction(x)
    coefficients = delta_coefficients(p)
    powers = [Fraction(1)]
    for _ in range(len(coefficients)):
        powers.append(powers[-1] * x)
    values: list[Fraction] = []
    for u in range(sigma + 1):
        total = Fraction(0)
        for k in range(u, len(coefficients)):
            total += coefficients[k] * (factorial(k) // factorial(k - u)) * powers[k - u]
        values.append(total)
    return values


def d_sigma(H: int, sigma: int) -> DenominatorPower:
    if H < 1:
        raise InvalidInputError("H must be positive")
    if sigma < 0:
        raise InvalidInputError("sigma must be non-negative")
    return DenominatorPower(H=H, sigma=sigma, value=nu(H) ** sigma)


@dataclass(frozen=True)
class Lemma4Report:
    """Integrality and the two size bounds at one ``(x, N, H, sigma)``."""

    x: int
    N: int
    H: int
    sigma: int
    integrality: bool
    bound_42: bool
    bound_43: bool
    witnesses: tuple[Fraction, ...]
    lhs_43: Fraction
    rhs_43: CertifiedReal | None = None
    log_d_sigma: CertifiedReal | None = None

    @property
    def passed(self) -> bool:
        return self.integrality and self.bound_42 and self.bound_43


@lru_cache(maxsize=4096)
def _bound_42(H: int, sigma: int, config: PrecisionConfig) -> tuple[bool, CertifiedReal]:
    if sigma == 0:
        # Both sides vanish; read as vacuously true.
        return True, CertifiedReal.exact(0)
    outcome = decide_inequality(
        sigma * sympy.log(nu(H)),
        sympy.Rational(
            LEMMA4_LOG_DENOMINATOR_RATIO.numerator * sigma * H,
            LEMMA4_LOG_DENOMINATOR_RATIO.denominator,
        ),
        strict=True,
        config=config,
    )
    return outcome.holds, outcome.lhs


def _bound_43_rhs_expr(x: int, N: int, H: int, sigma: int) -> sympy.Expr:
    # sigma^sigma read as 1 at sigma = 0
    power = sympy.Integer(sigma) ** sigma if sigma else sympy.Integer(1)
    return power * sympy.exp(N + H) * (1 + sympy.Rational(abs(x), H)) ** N


@lru_cache(maxsize=65536)
def _bound_43_rhs(
    abs_x: int, N: int, H: int, sigma: int, config: PrecisionConfig
) -> CertifiedReal:
    expr = _bound_43_rhs_expr(abs_x, N, H, sigma)
    return escalate(lambda _bits: eval_expression(expr), config, label="lemma4_bound_43_rhs")


def lemma4_check(
    x: int,
    p: DeltaParams,
    sigma: int,
    config: PrecisionConfig | None = None,
) -> Lemma4Report:
    """Check integrality of ``d_sigma * Delta^(u)(x)`` and its denominator and size bounds."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInputError("x must be an integer")
    if p.N < 1:
        raise InvalidInputError("the binomial bounds need N >= 1")
    if sigma < 0:
        raise InvalidInputError("sigma must be non-negative")
    config = config or PrecisionConfig()

    derivatives = delta_derivatives(x, p, sigma)
    denominator = d_sigma(p.H, sigma).value
    witnesses = tuple(denominator * value for value in derivatives)
    integrality = all(value.denominator == 1 for value in witnesses)

    bound_42, log_denominator = _bound_42(p.H, sigma, config)

    lhs = sum(
        (comb(sigma, u) * abs(value) for u, value in enumerate(derivatives)),
        Fraction(0),
    )
    rhs = _bound_43_rhs(abs(x), p.N, p.H, sigma, config)
    try:
        bound_43 = CertifiedReal.exact(lhs).less_than(rhs, strict=True)
    except UndecidedComparison:
        rhs_expr = _bound_43_rhs_expr(x, p.N, p.H, sigma)

        def attempt(_bits: int) -> tuple[bool, CertifiedReal]:
            rhs = eval_expression(rhs_expr)
            return CertifiedReal.exact(lhs).less_than(rhs, strict=True), rhs

        bound_43, rhs = escalate(attempt, config, label="lemma4_bound_43")
    return Lemma4Report(
        x=x,
        N=p.N,
        H=p.H,
        sigma=sigma,
        integrality=integrality,
        bound_42=bound_42,
        bound_43=bound_43,
        witnesses=witnesses,
        lhs_43=lhs,
        rhs_43=rhs,
        log_d_sigma=log_denominator,
    )


@dataclass
class Lemma4SweepSummary:
    """Counts of the grid run; ``first_failure`` keeps the earliest failing report."""

    checked: int = 0
    integrality_failures: int = 0
    bound_42_failures: int = 0
    bound_43_failures: int = 0
    first_failure: Lemma4Report | None = None
    grid: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (
            self.integrality_failures or self.bound_42_failures or self.bound_43_failures
        )


def lemma4_sweep(
    N_max: int = 20,
    H_max: int = 10,
    sigma_max: int = 10,
    x_max: int = 30,
    config: PrecisionConfig | None = None,
) -> Lemma4SweepSummary:
    """Run `lemma4_check` over ``1<=N<=N_max, 1<=H<=H_max, 0<=sigma<=sigma_max, |x|<=x_max``."""
    if min(N_max, H_max) < 1 or min(sigma_max, x_max) < 0:
        raise InvalidInputError("sweep bounds must be non-negative (N, H at least 1)")
    summary = Lemma4SweepSummary(
        grid={"N_max": N_max, "H_max": H_max, "sigma_max": sigma_max, "x_max": x_max}
    )
    for N in range(1, N_max + 1):
        for H in range(1, H_max + 1):
            params = DeltaParams.from_degree(N, H)
            for sigma in range(sigma_max + 1):
                for x in range(-x_max, x_max + 1):
                    report = lemma4_check(x, params, sigma, config)
                    summary.checked += 1
                    summary.integrality_failures += not report.integrality
                    summary.bound_42_failures += not report.bound_42
                    summary.bound_43_failures += not report.bound_43
                    if not report.passed and summary.first_failure is None:
                        summary.first_failure = report
    return summary


def lemma4_sweep_results(summary: Lemma4SweepSummary) -> dict[str, Any]:
    return {
        "checked": summary.checked,
        "integrality_failures": summary.integrality_failures,
        "bound_42_failures": summary.bound_42_failures,
        "bound_43_failures": summary.bound_43_failures,
        "grid": summary.grid,
    }


__all__ = [
    "DeltaParams",
    "DenominatorPower",
    "LEMMA4_LOG_DENOMINATOR_RATIO",
    "Lemma4Report",
    "Lemma4SweepSummary",
    "d_sigma",
    "delta_coefficients",
    "delta_derivatives",
    "delta_eval",
    "lemma4_check",
    "lemma4_sweep",
    "lemma4_sweep_results",
    "nu",
]
