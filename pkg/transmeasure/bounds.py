"""Explicit lower bounds and the instance checks of their derivations.

Every bound is returned on the log scale: a value ``b`` certifies that the
quantity in question is at least ``exp(b)``. Constants live in one table,
`CONSTANTS`, each with the statement it comes from.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import sympy

from transmeasure.config import DEFAULT_TARGET_WIDTH, PrecisionConfig
from transmeasure.errors import HypothesisError, InvalidInputError
from transmeasure.heights import AlgebraicNumber, height
from transmeasure.interdet import BoundParams, parameter_expressions
from transmeasure.numerics import (
    CertifiedComplex,
    CertifiedReal,
    CheckRow,
    check_row,
    decide_inequality,
    enclose_real,
    escalate,
    eval_expression,
    parse_expression,
)
from transmeasure.presets import substitution
from transmeasure.schemas import MeasureForm, MeasureQuery, Target


@dataclass(frozen=True)
class BoundConstant:
    name: str
    value: Fraction
    provenance: str


def _table(*rows: tuple[str, str, str]) -> dict[str, BoundConstant]:
    return {name: BoundConstant(name, Fraction(value), source) for name, value, source in rows}


CONSTANTS: dict[str, BoundConstant] = _table(
    # Main lower bound and the parameter displays
    ("main", "211", "main bound: leading constant of the exponent"),
    ("U.log", "33/10", "main bound: 3.3*D*log(D+2) in the U factor"),
    ("S.ratio", "21/2", "construction: S = [10.5*U*V]"),
    ("S1.ratio", "12", "construction: S1 = [12*D*W + 0.5]"),
    ("T.ratio", "101/5", "construction: T = [20.2*D*V*W]"),
    ("T1.ratio", "21/5", "construction: T1 = [4.2*U + 0.5]"),
    ("H.ratio", "3/2", "construction: H = [1.5*W*log E]"),
    # Measures for pi, log 2 and e
    ("pi.algebraic", "1200000", "pi, approximation: |pi - xi|"),
    ("pi.polynomial", "2000000", "pi, polynomial: |P(pi)|"),
    ("log2.algebraic", "151000", "log 2, approximation: |log 2 - xi|"),
    ("log2.polynomial", "260000", "log 2, polynomial: |P(log 2)|"),
    ("e.algebraic", "76000", "e, approximation: |e - xi|"),
    ("e.polynomial", "130000", "e, polynomial: |P(e)|"),
    ("thm5", "105500", "exponential-logarithm: |e^beta - alpha| and |beta - log alpha|"),
    # Substitution inequalities
    ("thm2.U", "56/5", "pi substitution: 6.6d log(2d+2) + log E < 11.2d(1 + log d)"),
    ("thm2.W", "17", "pi substitution: d(h + 3log(2d) + 2log pi + 14) <= 17(...)"),
    ("thm2.V", "119/2", "pi substitution: 1 + 2E|theta| + 6 log E <= 59.5"),
    ("thm3.W", "13", "log 2 substitution: d(h + 4log d + 12) <= 13(...)"),
    ("thm3.U", "5", "log 2 substitution: 3.3d log(d+2) + log(ed) < 5d(1 + log d)"),
    ("thm3.V", "11", "log 2 substitution: d + 2E|theta| + 6 log E <= 11d"),
    ("thm4.W", "9", "e substitution: ... <= 9(1 + log D + log log A)"),
    ("thm4.U", "10/3", "e substitution: 3.3d log(d+2) + log E <= (10/3)d log E"),
    ("thm4.V", "12", "e substitution: d log A + 2E|theta| + 6 log E <= 12(d + log L)"),
    ("thm5.W", "12", "exponential-logarithm substitution: W factor <= 12(h + log+ log A + log D + log E)"),
    ("thm5.V", "9", "exponential-logarithm substitution: D log A + 2E|beta| + 6 log E <= 9D log A"),
    ("thm5.U", "500", "exponential-logarithm substitution: 9*12*(3.3D log(D+2) + log E) <= 500(...)"),
    # Final comparison of the upper and lower bounds
    ("final.first_group", "637/20", "31.85*D*U*V*W*log E bounds the first group"),
    ("final.second_group", "101/5", "20.2*D*U*V*W*log E bounds the second group"),
    ("final.third_group", "21/2", "10.5*D*U*V*W*log E bounds the third group"),
    ("final.remaining", "557/25", "22.28*D*U*V*W*log E bounds the remaining terms"),
    ("final.total", "8483/100", "84.83 = 31.85 + 20.2 + 10.5 + 22.28"),
    ("final.L", "211", "L = (T+1)(2*T1+1) < 211*D*U*V*W"),
    ("final.T", "1213/60", "T + 1 <= (20.2 + 1/12)*D*V*W"),
    ("final.T1", "26/5", "T1 + 1/2 <= 5.2*U"),
    ("final.S1", "49/4", "S1 <= 12.25*D*W"),
    ("final.log_S1_H", "13/5", "log(1 + S1/H) <= 2.6 + log D"),
    ("final.U", "47/10", "U <= 1 + 3.3D log(D+2) <= 4.7*D^(3/2)"),
    ("final.V", "49/5", "V <= 9.8*E*|theta|+ * D log A"),
    ("final.S_T1", "50", "log(S*T1*E*|theta|+) <= log(50*U^2*V*E*|theta|+)"),
    ("final.log_L", "7/5", "W log E + log W <= 1.4*W log E"),
    ("final.log_L_UVW", "6/25", "1.4*W log E <= 0.24*U*V*W log E"),
    ("final.DSH", "63/4", "D*S*H <= 15.75*D*U*V*W log E"),
    ("final.DH", "1/4", "D*H <= 1.5*D*W log E <= 0.25*D*U*V*W log E"),
    ("final.S_logE", "21/4", "S log E <= 10.5*U*V log E <= 5.25*D*U*V*W log E"),
    ("final.log_2E", "1/6", "log(2E) <= 2 log E <= D*U*V*W*log E / 6"),
    ("final.denominator", "107/103", "log d_sigma < (107/103)*sigma*H"),
    ("selection.rows", "24", "2*S1 + 1 >= 24*D*W"),
    ("selection.T1", "52/5", "2*T1 + 1 <= 10.4*U"),
)


def constant(name: str) -> sympy.Rational:
    value = CONSTANTS[name].value
    return sympy.Rational(value.numerator, value.denominator)


def constants_table() -> list[dict[str, str]]:
    """The constants table for audit output."""
    return [
        {"name": c.name, "value": str(c.value), "provenance": c.provenance}
        for c in CONSTANTS.values()
    ]


# Main lower bound


def theorem1_expression(
    D: int, logA: Any, logB: Any, E: Any, theta: Any
) -> sympy.Expr:
    """Exponent of the main lower bound as a closed form (non-positive)."""
    expr = parameter_expressions(D, logA, logB, E, theta)
    return -constant("main") * D * expr["U"] * expr["V"] * expr["W"] * expr["logE"]


def theorem1_log_bound(
    params: BoundParams,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified ``b`` with ``|e^theta - alpha| + |theta - beta| >= exp(b)``."""
    expr = params.expressions
    value = -constant("main") * params.D * expr["U"] * expr["V"] * expr["W"] * expr["logE"]
    return enclose_real(value, precision, config, label="theorem1")


# Measures for pi, log 2 and e


def _measure_magnitude(target: Target, form: MeasureForm, d: int, L: Any) -> sympy.Expr:
    constant_name = f"{target}.{'algebraic' if form == 'algebraic-approx' else 'polynomial'}"
    c = constant(constant_name)
    log_L = sympy.log(parse_expression(L))
    log_d = sympy.log(d)
    if target == "pi":
        return c * d * (log_L + d * log_d) * (1 + log_d)
    if target == "log2":
        return c * d**2 * (log_L + d * log_d) / (1 + log_d)
    return c * d**2 * (log_L + d)


def measure_expression(q: MeasureQuery) -> sympy.Expr:
    return -_measure_magnitude(q.target, q.form, q.d, _rational(q.L))


def measure_bound(
    q: MeasureQuery,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified log lower bound for ``|target - xi|`` or ``|P(target)|``."""
    if q.L < 3:
        raise InvalidInputError("L must be at least 3")
    return enclose_real(measure_expression(q), precision, config, label="measure_bound")


def measure_phi_expression(target: Target, d: Any, L: Any) -> sympy.Expr:
    """``phi(d, L)`` with the approximation measure written as ``exp(-d*phi(d, L))``."""
    d_expr = parse_expression(d)
    log_L = sympy.log(parse_expression(L))
    log_d = sympy.log(d_expr)
    if target == "pi":
        return constant("pi.algebraic") * (log_L + d_expr * log_d) * (1 + log_d)
    if target == "log2":
        return constant("log2.algebraic") * d_expr * (log_L + d_expr * log_d) / (1 + log_d)
    return constant("e.algebraic") * d_expr * (log_L + d_expr)


def measure_phi(
    target: Target,
    d: int,
    L: Any,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    return enclose_real(measure_phi_expression(target, d, L), precision, config, label="phi")


def measure_form_check(
    target: Target, d: int, L: Any, config: PrecisionConfig | None = None
) -> CheckRow:
    """The polynomial form lies strictly below the approximation form."""
    polynomial = MeasureQuery(target=target, form="polynomial", d=d, L=_fraction(L))
    algebraic = MeasureQuery(target=target, form="algebraic-approx", d=d, L=_fraction(L))
    return check_row(
        f"{target} polynomial < algebraic-approx at d={d}, L={L}",
        measure_expression(polynomial),
        measure_expression(algebraic),
        strict=True,
        config=config,
    )


def _fraction(value: Any) -> Fraction:
    return Fraction(value) if not isinstance(value, Fraction) else value


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


# Transfer from approximation to polynomial measures


def transfer_expression(phi_value: Any, d_exponent: int, N: int, M: Any) -> sympy.Expr:
    M_expr = parse_expression(M)
    return -d_exponent * parse_expression(phi_value) - N * sympy.log(
        4 * M_expr * sympy.sqrt(N)
    )


def lemma1_transfer(
    phi_value: Any,
    d_exponent: int,
    N: int,
    M: Any,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Log of ``exp(-d_exponent * phi) * (4*M*sqrt(N))^(-N)``.

    ``phi_value`` is ``phi(N, 2^N * M)`` supplied by the caller, either as a
    closed form or as a `CertifiedReal`.
    """
    if N < 1 or parse_expression(M) < 1:
        raise InvalidInputError("the transfer needs N >= 1 and M >= 1")
    if d_exponent < 1:
        raise InvalidInputError("the exponent multiplier must be positive")
    if not isinstance(phi_value, CertifiedReal):
        return enclose_real(
            transfer_expression(phi_value, d_exponent, N, M),
            precision,
            config,
            label="lemma1_transfer",
        )
    penalty = N * sympy.log(4 * parse_expression(M) * sympy.sqrt(N))

    def attempt(_bits: int) -> CertifiedReal:
        return phi_value * (-d_exponent) - _real(eval_expression(penalty))

    return escalate(attempt, config, label="lemma1_transfer")


def _real(value: CertifiedReal | CertifiedComplex) -> CertifiedReal:
    return value.as_real() if isinstance(value, CertifiedComplex) else value


@dataclass(frozen=True)
class TransferComparison:
    target: Target
    N: int
    M: int
    d_exponent: int
    transfer: CertifiedReal
    direct: CertifiedReal | None
    transfer_at_least_direct: bool | None


def transfer_comparison(
    target: Target,
    N: int,
    M: int,
    d_exponent: int | None = None,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> TransferComparison:
    """Transferred approximation measure against the direct polynomial form."""
    exponent = N if d_exponent is None else d_exponent
    phi = measure_phi_expression(target, N, 2**N * M)
    transfer = transfer_expression(phi, exponent, N, M)
    transfer_value = lemma1_transfer(phi, exponent, N, M, precision, config)
    if M < 3:
        return TransferComparison(target, N, M, exponent, transfer_value, None, None)
    direct = measure_expression(
        MeasureQuery(target=target, form="polynomial", d=N, L=Fraction(M))
    )
    outcome = decide_inequality(direct, transfer, config=config)
    return TransferComparison(
        target,
        N,
        M,
        exponent,
        transfer_value,
        enclose_real(direct, precision, config, label="direct"),
        outcome.holds,
    )


# Exponential-logarithm bound and its transfer

Theorem5Kind = Literal["exp-minus-alpha", "beta-minus-log"]


def theorem5_expression(D: int, logA: Any, h_beta: Any, E: Any = "E") -> sympy.Expr:
    logA_expr, E_expr = parse_expression(logA), parse_expression(E)
    logE = sympy.expand_log(sympy.log(E_expr), force=True)
    log_plus = sympy.log(sympy.Max(1, logA_expr))
    return (
        -constant("thm5")
        * D**2
        * logA_expr
        * (parse_expression(h_beta) + log_plus + sympy.log(D) + logE)
        * (D * sympy.log(D) + logE)
        / logE**2
    )


def theorem5_log_bound(
    kind: Theorem5Kind,
    D: int,
    logA: Any,
    h_beta: Any,
    E: Any = "E",
    *,
    h_alpha: Any = None,
    abs_beta: Any = None,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified log lower bound for ``|e^beta - alpha|`` or ``|beta - log alpha|``.

    Both kinds share one formula.

    Raises:
        HypothesisError: ``E < e`` or ``log A`` below ``h(alpha)``,
            ``log(E)/D`` or ``|beta|*E/D``.
    """
    if kind not in ("exp-minus-alpha", "beta-minus-log"):
        raise InvalidInputError(f"unknown kind {kind!r}")
    if isinstance(D, bool) or not isinstance(D, int) or D < 1:
        raise InvalidInputError("D must be a positive integer")
    logA_expr, E_expr = parse_expression(logA), parse_expression(E)
    lower_bounds = {"log(E)/D": sympy.log(E_expr) / D}
    if h_alpha is not None:
        lower_bounds["h(alpha)"] = parse_expression(h_alpha)
    if abs_beta is not None:
        lower_bounds["|beta|*E/D"] = parse_expression(abs_beta) * E_expr / D
    if not decide_inequality(sympy.E, E_expr, config=config).holds:
        raise HypothesisError(f"E must be at least e, got {E_expr}")
    for label, bound in lower_bounds.items():
        if not decide_inequality(bound, logA_expr, config=config).holds:
            raise HypothesisError(f"log A must be at least {label}")
    return enclose_real(
        theorem5_expression(D, logA_expr, h_beta, E_expr), precision, config, label="theorem5"
    )


Theorem6Kind = Literal["log-alpha", "exp-beta"]


@dataclass(frozen=True)
class Theorem6Report:
    kind: Theorem6Kind
    N: int
    M: int
    number_degree: int
    height_upper: Fraction
    modulus_upper: Fraction
    log_bound: CertifiedReal
    expression: str


def _theorem6_scaled_phi(
    kind: Theorem6Kind,
    degree: int,
    h: Fraction,
    modulus: Fraction,
    d: Any,
    L: Any,
) -> sympy.Expr:
    # d*phi(d, L) from the exponential-logarithm bound with E = e and D <= degree*d
    d_expr, L_expr = parse_expression(d), parse_expression(L)
    D = degree * d_expr
    h_expr, modulus_expr = sympy.Rational(h.numerator, h.denominator), sympy.Rational(
        modulus.numerator, modulus.denominator
    )
    if kind == "log-alpha":
        logA = sympy.Max(h_expr, 1, (modulus_expr + 1) * sympy.E)
        h_beta = sympy.log(L_expr) / d_expr
    else:
        logA = sympy.log(L_expr) + sympy.Max(1, modulus_expr * sympy.E)
        h_beta = h_expr
    return (
        constant("thm5")
        * D**2
        * logA
        * (h_beta + sympy.log(sympy.Max(1, logA)) + sympy.log(D) + 1)
        * (D * sympy.log(D) + 1)
    )


def theorem6_log_bound(
    kind: Theorem6Kind,
    number: AlgebraicNumber,
    N: int,
    M: int,
    precision: Any = DEFAULT_TARGET_WIDTH,
    config: PrecisionConfig | None = None,
) -> Theorem6Report:
    """Explicit measure for ``log(alpha)`` or ``e^beta``: the exponential-logarithm bound, then the transfer.

    ``number`` is ``alpha`` (principal logarithm) for ``log-alpha`` and
    ``beta`` for ``exp-beta``.
    """
    if N < 1 or M < 1:
        raise InvalidInputError("N and M must be positive")
    if kind == "log-alpha":
        if number.is_rational and number.rational_value() in (0, 1):
            raise InvalidInputError("alpha must differ from 0 and 1")
    elif kind == "exp-beta":
        if number.is_rational and number.rational_value() == 0:
            raise InvalidInputError("beta must be nonzero")
    else:
        raise InvalidInputError(f"unknown kind {kind!r}")

    h = height(number, Fraction(1, 10**6), config).hi

    def modulus_attempt(_bits: int) -> Fraction:
        value = number.enclosure()
        if kind == "log-alpha":
            if isinstance(value, CertifiedReal):
                value = CertifiedComplex.from_parts(value)
            return abs(value.log()).hi
        return abs(value).hi

    modulus = escalate(modulus_attempt, config, label="theorem6_modulus")
    scaled_phi = _theorem6_scaled_phi(kind, number.degree, h, modulus, N, 2**N * M)
    bound = -scaled_phi - N * sympy.log(4 * M * sympy.sqrt(N))
    return Theorem6Report(
        kind=kind,
        N=N,
        M=M,
        number_degree=number.degree,
        height_upper=h,
        modulus_upper=modulus,
        log_bound=enclose_real(bound, precision, config, label="theorem6"),
        expression=str(bound),
    )


# Chains

ChainName = Literal["thm2", "thm3", "thm4", "thm5", "section6"]
ChainVerdict = Literal["pass", "fail", "inconclusive"]


@dataclass(frozen=True)
class ChainReport:
    """Instance checks of one derivation; advisory rows never decide the verdict."""

    name: ChainName
    rows: tuple[CheckRow, ...]
    instance: Mapping[str, str] = field(default_factory=dict)

    @property
    def decisive(self) -> tuple[CheckRow, ...]:
        return tuple(row for row in self.rows if not row.advisory)

    @property
    def findings(self) -> tuple[CheckRow, ...]:
        return tuple(row for row in self.rows if row.advisory and not row.passed)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.decisive)

    @property
    def verdict(self) -> ChainVerdict:
        if self.passed:
            return "pass"
        if any(row.inconclusive for row in self.decisive):
            return "inconclusive"
        return "fail"


def _factor_rows(
    factors: Mapping[str, sympy.Expr],
    displayed: Mapping[str, sympy.Expr],
    config: PrecisionConfig | None,
) -> list[CheckRow]:
    return [
        check_row(
            f"substitution: {name} factor <= {displayed[name]}",
            factors[name],
            displayed[name],
            advisory=True,
            config=config,
        )
        for name in ("W", "V", "U")
        if name in displayed
    ]


def _theorem1_factors(D: int, logA: Any, logB: Any, E: Any, theta: Any) -> dict[str, sympy.Expr]:
    expr = parameter_expressions(D, logA, logB, E, theta)
    logE = expr["logE"]
    return {
        "W": expr["W"] * logE,
        "V": expr["V"] * logE,
        "U": expr["U"] * logE,
        "logE": logE,
        "magnitude": constant("main") * D * expr["U"] * expr["V"] * expr["W"] * logE,
    }


def chain_check_theorem_derivations(
    which: Literal["thm2", "thm3", "thm4", "thm5"],
    d: int = 1,
    L: Any = 10,
    *,
    h_xi: Any = None,
    abs_beta: Any = 1,
    h_alpha: Any = 0,
    config: PrecisionConfig | None = None,
) -> ChainReport:
    """Check every displayed inequality of a derivation at one substitution.

    ``h_xi`` is the certified height of the approximant; without it the
    height is bounded by ``log(L)/d``. With it, the ``log(L)/d`` variant is
    reported as an advisory row.
    """
    sub = substitution(which, d, L, h_xi=h_xi, abs_beta=abs_beta, h_alpha=h_alpha)
    factors = _theorem1_factors(sub.D, sub.logA, sub.logB, sub.E, sub.theta)
    logE = factors["logE"]
    log_d = sympy.log(d)
    log_L = sympy.log(sub.L)
    h = sub.h_xi
    abs_theta = sympy.Abs(sub.theta)
    rows: list[CheckRow] = []

    if which == "thm2":
        W_display = lambda height_: d * (  # noqa: E731
            height_ + 3 * sympy.log(2 * d) + 2 * sympy.log(sympy.pi) + 14
        )
        rows += [
            check_row(
                "6.6d log(2d+2) + log E < 11.2d(1 + log d)",
                sympy.Rational(33, 5) * d * sympy.log(2 * d + 2) + logE,
                constant("thm2.U") * d * (1 + log_d),
                strict=True,
                config=config,
            ),
            check_row(
                "d(h(xi) + 3log(2d) + 2log(pi) + 14) <= 17(log L + d log d)",
                W_display(h),
                constant("thm2.W") * (log_L + d * log_d),
                config=config,
            ),
            check_row(
                "1 + 2E|theta| + 6 log E <= 59.5",
                1 + 2 * sub.E * abs_theta + 6 * logE,
                constant("thm2.V"),
                config=config,
            ),
        ]
        if h_xi is not None:
            rows.append(
                check_row(
                    "height via length: d(log(L)/d + 3log(2d) + 2log(pi) + 14) <= 17(...)",
                    W_display(log_L / d),
                    constant("thm2.W") * (log_L + d * log_d),
                    advisory=True,
                    config=config,
                )
            )
        rows += _factor_rows(
            factors,
            {
                "W": h + 3 * sympy.log(2 * d) + 2 * sympy.log(sympy.pi) + 14,
                "V": 1 + 2 * sub.E * abs_theta + 6 * logE,
                "U": sympy.Rational(33, 5) * d * sympy.log(2 * d + 2) + logE,
            },
            config,
        )
        assembly = (
            constant("main") * 2 * constant("thm2.W") * constant("thm2.V") * constant("thm2.U")
            / 4
        )
        displayed = -measure_expression(
            MeasureQuery(target="pi", form="algebraic-approx", d=d, L=_fraction_of(sub.L))
        )
        rows += _assembly_rows(assembly, "pi.algebraic", factors["magnitude"], displayed, config)

    elif which == "thm3":
        rows += [
            check_row(
                "d(h(xi) + 4 log d + 12) <= 13(log L + d log d)",
                d * (h + 4 * log_d + 12),
                constant("thm3.W") * (log_L + d * log_d),
                config=config,
            ),
            check_row(
                "3.3d log(d+2) + log(ed) < 5d(1 + log d)",
                constant("U.log") * d * sympy.log(d + 2) + sympy.log(sympy.E * d),
                constant("thm3.U") * d * (1 + log_d),
                strict=True,
                config=config,
            ),
            check_row(
                "d + 2E|theta| + 6 log E <= 11d",
                d + 2 * sub.E * abs_theta + 6 * logE,
                constant("thm3.V") * d,
                config=config,
            ),
        ]
        rows += _factor_rows(
            factors,
            {
                "W": h + 4 * log_d + 12,
                "V": d + 2 * sub.E * abs_theta + 6 * logE,
                "U": constant("U.log") * d * sympy.log(d + 2) + sympy.log(sympy.E * d),
            },
            config,
        )
        rows.append(
            check_row(
                "substitution: d*W factor <= 13(log L + d log d)",
                d * factors["W"],
                constant("thm3.W") * (log_L + d * log_d),
                advisory=True,
                config=config,
            )
        )
        assembly = (
            constant("main") * constant("thm3.W") * constant("thm3.V") * constant("thm3.U")
        )
        displayed = -measure_expression(
            MeasureQuery(target="log2", form="algebraic-approx", d=d, L=_fraction_of(sub.L))
        )
        rows += _assembly_rows(
            assembly, "log2.algebraic", factors["magnitude"], displayed, config
        )

    elif which == "thm4":
        log_log_A = sympy.log(sub.logA)
        rows += [
            check_row(
                "3 log log A + 6 log d + 12 <= 9(1 + log D + log log A)",
                3 * log_log_A + 6 * log_d + 12,
                constant("thm4.W") * (1 + sympy.log(sub.D) + log_log_A),
                config=config,
            ),
            check_row(
                "9(1 + log D + log log A) <= 9 log E",
                constant("thm4.W") * (1 + sympy.log(sub.D) + log_log_A),
                constant("thm4.W") * logE,
                config=config,
            ),
            check_row(
                "3.3d log(d+2) + log E <= (10/3) d log E",
                constant("U.log") * d * sympy.log(d + 2) + logE,
                constant("thm4.U") * d * logE,
                config=config,
            ),
            check_row(
                "d log A + 2E|theta| + 6 log E <= 12(d + log L)",
                d * sub.logA + 2 * sub.E * abs_theta + 6 * logE,
                constant("thm4.V") * (d + log_L),
                config=config,
            ),
        ]
        rows += _factor_rows(
            factors,
            {
                "W": 3 * log_log_A + 6 * log_d + 12,
                "V": d * sub.logA + 2 * sub.E * abs_theta + 6 * logE,
                "U": constant("U.log") * d * sympy.log(d + 2) + logE,
            },
            config,
        )
        assembly = (
            constant("main") * constant("thm4.W") * constant("thm4.V") * constant("thm4.U")
        )
        displayed = -measure_expression(
            MeasureQuery(target="e", form="algebraic-approx", d=d, L=_fraction_of(sub.L))
        )
        rows += _assembly_rows(assembly, "e.algebraic", factors["magnitude"], displayed, config)

    elif which == "thm5":
        D = sub.D
        beta = sub.abs_beta
        log_plus = sympy.log(sympy.Max(1, sub.logA))
        shared = h + log_plus + sympy.log(D) + logE
        rows += [
            check_row("log A >= h(alpha)", sub.h_alpha, sub.logA, config=config),
            check_row("log A >= log(E)/D", logE / D, sub.logA, config=config),
            check_row("log A >= |beta| E/D", beta * sub.E / D, sub.logA, config=config),
            check_row(
                "h(beta) + log log A + 4 log D + 2 log(E|beta|+) + 10"
                " <= 12(h(beta) + log+ log A + log D + log E)",
                factors["W"],
                constant("thm5.W") * shared,
                config=config,
            ),
            check_row(
                "D log A + 2E|beta| + 6 log E <= 9 D log A",
                factors["V"],
                constant("thm5.V") * D * sub.logA,
                config=config,
            ),
            check_row(
                "9*12*(3.3D log(D+2) + log E) <= 500(D log D + log E)",
                constant("thm5.V") * constant("thm5.W") * factors["U"],
                constant("thm5.U") * (D * sympy.log(D) + logE),
                config=config,
            ),
        ]
        assembly = (
            constant("main") * constant("thm5.W") * constant("thm5.V") * constant("thm5.U")
            / 108
        )
        displayed = -theorem5_expression(D, sub.logA, h, sub.E)
        rows += _assembly_rows(assembly, "thm5", factors["magnitude"], displayed, config)
    else:
        raise InvalidInputError(f"unknown derivation {which!r}")

    return ChainReport(name=which, rows=tuple(rows), instance=sub.describe())


def _fraction_of(value: sympy.Expr) -> Fraction:
    if not value.is_Rational:
        raise InvalidInputError(f"L must be rational, got {value}")
    return Fraction(int(value.p), int(value.q))


def _assembly_rows(
    assembly: sympy.Expr,
    constant_name: str,
    magnitude: sympy.Expr,
    displayed: sympy.Expr,
    config: PrecisionConfig | None,
) -> list[CheckRow]:
    return [
        check_row(
            f"assembly: product of the displayed constants <= {CONSTANTS[constant_name].value}",
            assembly,
            constant(constant_name),
            advisory=True,
            config=config,
        ),
        check_row(
            "end to end: main bound at the substitution is at least the displayed bound",
            magnitude,
            displayed,
            advisory=True,
            config=config,
        ),
    ]


def chain_check_section6(
    params: BoundParams, config: PrecisionConfig | None = None
) -> ChainReport:
    """Check the final comparison of the construction at concrete parameters."""
    if not params.passed:
        raise HypothesisError("parameter checks failed; the chain needs U>=1, V>=6, W>=2")
    expr = params.expressions
    D = params.D
    U, V, W, logE = expr["U"], expr["V"], expr["W"], expr["logE"]
    logA, logB, E = expr["logA"], expr["logB"], expr["E"]
    abs_theta = expr["abs_theta"]
    theta_plus = sympy.Max(1, abs_theta)
    S, S1, T, T1, H, L = params.S, params.S1, params.T, params.T1, params.H, params.L
    DUVW_logE = D * U * V * W * logE
    half = sympy.Rational(1, 2)
    log_log_A = sympy.log(logA)
    W_num = logB + log_log_A + 4 * sympy.log(D) + 2 * sympy.log(E * theta_plus) + 10

    def c(name: str) -> sympy.Rational:
        return constant(name)

    first_group = half * S1 * (T1 + half) * (D * logA + 2 * E * abs_theta + 2)
    second_group = D * T * sympy.log(1 + sympy.Rational(S1, H)) + D * T + T * logE
    third_group = D * S * (logB + sympy.log(S) + sympy.log(E * theta_plus * T1))
    log_L_chain = 10 + sympy.Rational(7, 2) * sympy.log(D) + sympy.log(E * theta_plus)
    remaining = (
        D * H
        + c("final.denominator") * D * S * H
        + S * logE
        + sympy.log(2 * E)
        + D * sympy.log(L)
    )

    rows = [
        # row and column selection
        check_row("2*S1 + 1 >= 24*D*W", c("selection.rows") * D * W, 2 * S1 + 1, config=config),
        check_row("2*T1 + 1 <= 10.4*U", 2 * T1 + 1, c("selection.T1") * U, config=config),
        check_row("S + 1 >= 10.5*U*V", c("S.ratio") * U * V, S + 1, config=config),
        check_row("T <= 20.2*D*V*W", T, c("T.ratio") * D * V * W, config=config),
        check_row(
            "(T + 2*S1 + 1)(2*T1 + 1) < (S + 1)(2*S1 + 1)",
            (T + 2 * S1 + 1) * (2 * T1 + 1),
            (S + 1) * (2 * S1 + 1),
            strict=True,
            config=config,
        ),
        # L
        check_row("T + 1 <= (20.2 + 1/12)*D*V*W", T + 1, c("final.T") * D * V * W, config=config),
        check_row("T1 + 1/2 <= 5.2*U", T1 + half, c("final.T1") * U, config=config),
        check_row("L < 211*D*U*V*W", L, c("final.L") * D * U * V * W, strict=True, config=config),
        # First group
        check_row("S1 <= 12.25*D*W", S1, c("final.S1") * D * W, config=config),
        check_row(
            "S1(T1 + 0.5)(D log A + 2E|theta| + 2)/2 <= 31.85*D*U*V*W*log E",
            first_group,
            c("final.first_group") * DUVW_logE,
            config=config,
        ),
        # Second group
        check_row(
            "log(1 + S1/H) <= 2.6 + log D",
            sympy.log(1 + sympy.Rational(S1, H)),
            c("final.log_S1_H") + sympy.log(D),
            config=config,
        ),
        check_row(
            "D*T*log(1 + S1/H) + D*T + T log E <= 20.2*D*U*V*W*log E",
            second_group,
            c("final.second_group") * DUVW_logE,
            config=config,
        ),
        # Size of U and V
        check_row(
            "U <= 1 + 3.3D log(D+2)",
            U,
            1 + c("U.log") * D * sympy.log(D + 2),
            config=config,
        ),
        check_row(
            "1 + 3.3D log(D+2) <= 4.7*D^(3/2)",
            1 + c("U.log") * D * sympy.log(D + 2),
            c("final.U") * sympy.Integer(D) ** sympy.Rational(3, 2),
            config=config,
        ),
        check_row(
            "V <= 9.8*E*|theta|+ * D log A",
            V,
            c("final.V") * E * theta_plus * D * logA,
            config=config,
        ),
        # Third group
        check_row(
            "log(S*T1*E|theta|+) <= log(50*U^2*V*E|theta|+)",
            sympy.log(S * T1 * E * theta_plus),
            sympy.log(c("final.S_T1") * U**2 * V * E * theta_plus),
            config=config,
        ),
        check_row(
            "log(50*U^2*V*E|theta|+) <= log log A + 4 log D + 2 log(E|theta|+) + 10",
            sympy.log(c("final.S_T1") * U**2 * V * E * theta_plus),
            W_num - logB,
            config=config,
        ),
        check_row(
            "D*S*(log B + log S + log(E|theta|+ T1)) <= 10.5*D*U*V*W*log E",
            third_group,
            c("final.third_group") * DUVW_logE,
            config=config,
        ),
        # log L
        check_row("log L <= log(211*D*U*V*W)", sympy.log(L), sympy.log(c("final.L") * D * U * V * W), config=config),
        check_row(
            "log(211*D*U*V*W) <= 10 + 3.5 log D + log(E|theta|+) + log log A + log W",
            sympy.log(c("final.L") * D * U * V * W),
            log_L_chain + log_log_A + sympy.log(W),
            config=config,
        ),
        check_row(
            "10 + 3.5 log D + log(E|theta|+) + log log A + log W <= W log E + log W",
            log_L_chain + log_log_A + sympy.log(W),
            W * logE + sympy.log(W),
            config=config,
        ),
        check_row(
            "W log E + log W <= 1.4*W log E",
            W * logE + sympy.log(W),
            c("final.log_L") * W * logE,
            config=config,
        ),
        check_row(
            "1.4*W log E <= 0.24*U*V*W log E",
            c("final.log_L") * W * logE,
            c("final.log_L_UVW") * U * V * W * logE,
            config=config,
        ),
        # Remaining terms
        check_row("D*S*H <= 15.75*D*U*V*W*log E", D * S * H, c("final.DSH") * DUVW_logE, config=config),
        check_row(
            "D*H <= 1.5*D*W log E", D * H, c("H.ratio") * D * W * logE, config=config
        ),
        check_row(
            "1.5*D*W log E <= 0.25*D*U*V*W*log E",
            c("H.ratio") * D * W * logE,
            c("final.DH") * DUVW_logE,
            config=config,
        ),
        check_row(
            "S log E <= 10.5*U*V log E <= 5.25*D*U*V*W*log E",
            S * logE,
            c("final.S_logE") * DUVW_logE,
            config=config,
        ),
        check_row(
            "log(2E) <= 2 log E <= D*U*V*W*log E/6",
            sympy.log(2 * E),
            c("final.log_2E") * DUVW_logE,
            config=config,
        ),
        check_row(
            "15.75*107/103 + 5.25 + 0.49 + 1/6 < 22.28",
            c("final.DSH") * c("final.denominator") + c("final.S_logE") + sympy.Rational(49, 100)
            + c("final.log_2E"),
            c("final.remaining"),
            strict=True,
            config=config,
        ),
        check_row(
            "D*H + (107/103)*D*S*H + S log E + log(2E) + D log L < 22.28*D*U*V*W*log E",
            remaining,
            c("final.remaining") * DUVW_logE,
            strict=True,
            config=config,
        ),
        # Final comparison
        check_row(
            "31.85 + 20.2 + 10.5 + 22.28 = 84.83",
            c("final.first_group") + c("final.second_group") + c("final.third_group") + c("final.remaining"),
            c("final.total"),
            config=config,
        ),
        check_row(
            "84.83 <= 31.85 + 20.2 + 10.5 + 22.28",
            c("final.total"),
            c("final.first_group") + c("final.second_group") + c("final.third_group") + c("final.remaining"),
            config=config,
        ),
        check_row(
            "84.83*D*U*V*W*log E < (L/2) log E",
            c("final.total") * DUVW_logE,
            sympy.Rational(L, 2) * logE,
            strict=True,
            config=config,
        ),
    ]
    instance = {
        "D": str(D),
        "logA": str(logA),
        "logB": str(logB),
        "E": str(E),
        "theta": str(expr["theta"]),
        "S": str(S),
        "S1": str(S1),
        "T": str(T),
        "T1": str(T1),
        "H": str(H),
        "L": str(L),
    }
    return ChainReport(name="section6", rows=tuple(rows), instance=instance)


__all__ = [
    "BoundConstant",
    "CONSTANTS",
    "ChainReport",
    "Theorem6Report",
    "TransferComparison",
    "chain_check_section6",
    "chain_check_theorem_derivations",
    "constant",
    "constants_table",
    "lemma1_transfer",
    "measure_bound",
    "measure_expression",
    "measure_form_check",
    "measure_phi",
    "measure_phi_expression",
    "theorem1_expression",
    "theorem1_log_bound",
    "theorem5_expression",
    "theorem5_log_bound",
    "theorem6_log_bound",
    "transfer_comparison",
    "transfer_expression",
]
