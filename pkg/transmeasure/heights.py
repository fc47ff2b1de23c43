"""Lengths, absolute logarithmic Weil heights and Liouville's inequality.

For an algebraic number with minimal polynomial ``a0 (x - a1)...(x - ad)``
the height is ``(log|a0| + sum log max(1, |ai|)) / d``, i.e. the d-th part
of the logarithmic Mahler measure. Every conjugate enters through a
certified root enclosure, never only the selected root.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal

import sympy

from transmeasure.config import PrecisionConfig
from transmeasure.errors import (
    InconclusivePrecisionError,
    InvalidInputError,
    ReducibleInputError,
    UndecidedComparison,
)
from transmeasure.numerics import (
    Certified,
    CertifiedComplex,
    CertifiedReal,
    RootEnclosure,
    escalate,
    isolate_roots,
    root_enclosures,
    to_fraction,
)
from transmeasure.schemas import IntPolynomial

Verdict = Literal["pass", "fail", "inconclusive"]

# Width of the selection box stored on an AlgebraicNumber.
_SELECTION_WIDTH = Fraction(1, 2**32)


def _as_polynomial(value: IntPolynomial | str | Sequence[int]) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, str):
        return IntPolynomial.parse(value)
    return IntPolynomial(coefficients=tuple(value))


def length(poly: IntPolynomial | str | Sequence[int]) -> int:
    """``L(P)``: the sum of the absolute values of the coefficients."""
    return sum(abs(c) for c in _as_polynomial(poly).coefficients)


def validate_minimal_polynomial(poly: IntPolynomial) -> IntPolynomial:
    """Return ``poly`` with a positive leading coefficient.

    Raises:
        InvalidInputError: constant polynomial or content other than 1.
        ReducibleInputError: ``poly`` factors over the rationals.
    """
    if poly.degree < 1:
        raise InvalidInputError("a minimal polynomial has degree at least 1")
    if poly.content() != 1:
        raise InvalidInputError(f"polynomial {poly} is not primitive")
    if poly.leading < 0:
        poly = IntPolynomial(coefficients=tuple(-c for c in poly.coefficients))
    _, factors = poly.to_sympy().factor_list()
    if len(factors) != 1 or factors[0][1] != 1:
        raise ReducibleInputError(f"polynomial {poly} is reducible over Q")
    return poly


@dataclass(frozen=True)
class AlgebraicNumber:
    """An irreducible primitive minimal polynomial plus one selected root."""

    minpoly: IntPolynomial
    which_root: RootEnclosure
    root_index: int = 0

    @classmethod
    def from_minpoly(
        cls,
        minpoly: IntPolynomial | str | Sequence[int],
        root_index: int = 0,
        config: PrecisionConfig | None = None,
    ) -> AlgebraicNumber:
        """Select root ``root_index`` (roots sorted by real, then imaginary part)."""
        poly = validate_minimal_polynomial(_as_polynomial(minpoly))
        if poly.degree == 1:
            root = RootEnclosure(
                CertifiedComplex.exact(Fraction(-poly.coefficients[1], poly.leading)),
                1,
                True,
            )
            if root_index != 0:
                raise InvalidInputError("a rational number has a single root index 0")
            return cls(minpoly=poly, which_root=root, root_index=0)

        enclosures = root_enclosures(poly, _SELECTION_WIDTH, config)
        if not 0 <= root_index < len(enclosures):
            raise InvalidInputError(
                f"root index {root_index} out of range for degree {poly.degree}"
            )
        return cls(minpoly=poly, which_root=enclosures[root_index], root_index=root_index)

    @classmethod
    def rational(cls, p: int | Fraction, q: int = 1) -> AlgebraicNumber:
        value = Fraction(p) / q
        return cls.from_minpoly(
            IntPolynomial.of(value.denominator, -value.numerator), 0
        )

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def length(self) -> int:
        return length(self.minpoly)

    @property
    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    @property
    def is_real(self) -> bool:
        return self.which_root.is_real

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvalidInputError("not a rational number")
        a, b = self.minpoly.coefficients
        return Fraction(-b, a)

    def enclosure(self) -> Certified:
        """The selected root at the ambient working precision.

        The root is matched against the stored selection box, not by its
        sorted position, which can swap between conjugates.
        """
        if self.is_rational:
            return CertifiedReal.exact(self.rational_value())
        matches = [
            candidate
            for candidate in isolate_roots(self.minpoly)
            if candidate.root.overlaps(self.which_root.root)
        ]
        if len(matches) != 1:
            raise UndecidedComparison("selected root not separated from its conjugates")
        root = matches[0]
        return root.root.as_real() if root.is_real else root.root

    def reciprocal(self) -> AlgebraicNumber:
        """``1/alpha`` via coefficient reversal."""
        if self.minpoly.coefficients[-1] == 0:
            raise InvalidInputError("zero has no reciprocal")
        if self.is_rational:
            return AlgebraicNumber.rational(1 / self.rational_value())
        reversed_poly = validate_minimal_polynomial(self.minpoly.reversed())
        inverse = 1 / self.which_root.root
        candidates = root_enclosures(reversed_poly, _SELECTION_WIDTH)
        matches = [i for i, e in enumerate(candidates) if e.root.overlaps(inverse)]
        if len(matches) != 1:
            raise InconclusivePrecisionError("cannot identify the reciprocal root")
        return AlgebraicNumber(reversed_poly, candidates[matches[0]], matches[0])


def _log_mahler_at_current_precision(poly: IntPolynomial) -> CertifiedReal:
    total = CertifiedReal.exact(abs(poly.leading)).log()
    if poly.degree < 1:
        return total
    for enclosure in isolate_roots(poly):
        total = total + enclosure.multiplicity * enclosure.modulus.log_plus()
    return total


def log_mahler_measure(
    poly: IntPolynomial | str | Sequence[int],
    precision: Any,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified ``log M(P) = log|a0| + sum log max(1, |ai|)``."""
    poly = _as_polynomial(poly)
    if poly.is_zero:
        raise InvalidInputError("the zero polynomial has no Mahler measure")
    width = to_fraction(precision)

    def attempt(_bits: int) -> CertifiedReal:
        value = _log_mahler_at_current_precision(poly)
        if not value.width_at_most(width):
            raise UndecidedComparison("Mahler measure wider than requested")
        return value

    return escalate(attempt, config, label="log_mahler_measure")


def height(
    alpha: AlgebraicNumber,
    precision: Any,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """Certified absolute logarithmic Weil height of ``alpha``."""
    width = to_fraction(precision)
    if width <= 0:
        raise InvalidInputError("precision must be positive")

    if alpha.is_rational:
        value = alpha.rational_value()
        top = max(abs(value.numerator), abs(value.denominator))

        def rational_attempt(_bits: int) -> CertifiedReal:
            result = CertifiedReal.exact(top).log()
            if not result.width_at_most(width):
                raise UndecidedComparison("height wider than requested")
            return result

        return escalate(rational_attempt, config, label="height")

    degree = alpha.degree

    def attempt(_bits: int) -> CertifiedReal:
        result = _log_mahler_at_current_precision(alpha.minpoly) / degree
        if not result.width_at_most(width):
            raise UndecidedComparison("height wider than requested")
        return result

    return escalate(attempt, config, label="height")


@dataclass(frozen=True)
class HeightLengthCheck:
    """Outcome of ``h(alpha) <= log L(alpha) / d``."""

    verdict: Verdict
    height: CertifiedReal | None
    bound: CertifiedReal | None
    exact: bool = False


def check_height_length(
    poly: IntPolynomial | str | Sequence[int],
    precision: Any = Fraction(1, 10**20),
    config: PrecisionConfig | None = None,
) -> HeightLengthCheck:
    """Check ``h <= d^-1 log L`` for the roots of an irreducible polynomial.

    Raises:
        ReducibleInputError: ``poly`` is reducible.
    """
    poly = validate_minimal_polynomial(_as_polynomial(poly))
    degree = poly.degree
    poly_length = length(poly)
    width = to_fraction(precision)

    if degree == 1:
        # h = log max(|a|, |b|) and L = |a| + |b|: an integer comparison.
        top = max(abs(c) for c in poly.coefficients)

        def exact_attempt(_bits: int) -> HeightLengthCheck:
            return HeightLengthCheck(
                verdict="pass" if top <= poly_length else "fail",
                height=CertifiedReal.exact(top).log(),
                bound=CertifiedReal.exact(poly_length).log(),
                exact=True,
            )

        return escalate(exact_attempt, config, label="check_height_length")

    def attempt(_bits: int) -> HeightLengthCheck:
        value = _log_mahler_at_current_precision(poly) / degree
        bound = CertifiedReal.exact(poly_length).log() / degree
        holds = value.less_than(bound, strict=False)
        if not value.width_at_most(width):
            raise UndecidedComparison("height wider than requested")
        return HeightLengthCheck("pass" if holds else "fail", value, bound)

    try:
        return escalate(attempt, config, label="check_height_length")
    except InconclusivePrecisionError:
        return HeightLengthCheck("inconclusive", None, None)


@dataclass(frozen=True)
class LiouvilleContext:
    """Degree ``D`` of a field containing the point, and whether it is real."""

    field_degree: int
    is_real_field: bool = True

    def __post_init__(self) -> None:
        if self.field_degree < 1:
            raise InvalidInputError("field degree must be positive")
        if not self.is_real_field and self.field_degree % 2:
            raise InvalidInputError("a non-real field has even degree")

    @property
    def d_prime(self) -> int:
        return self.field_degree if self.is_real_field else self.field_degree // 2


def liouville_bound(
    degrees: Sequence[int],
    poly_length: int,
    heights: Sequence[CertifiedReal],
    ctx: LiouvilleContext,
    config: PrecisionConfig | None = None,
) -> CertifiedReal:
    """``-(D'-1) log L(f) - D' sum N_i h(alpha_i)``, a lower bound for ``log|f(alpha)|``."""
    if poly_length < 1:
        raise InvalidInputError("L(f) must be at least 1")
    if any(n < 0 for n in degrees):
        raise InvalidInputError("degree bounds must be non-negative")
    if len(degrees) != len(heights):
        raise InvalidInputError("one height per variable is required")

    def attempt(_bits: int) -> CertifiedReal:
        total = -(ctx.d_prime - 1) * CertifiedReal.exact(poly_length).log()
        for degree, value in zip(degrees, heights):
            total = total - ctx.d_prime * degree * value
        return total

    return escalate(attempt, config, label="liouville_bound")


@dataclass(frozen=True)
class LiouvilleReport:
    bound: CertifiedReal
    log_value: CertifiedReal
    degrees: tuple[int, ...]
    poly_length: int
    passed: bool


def integer_polynomial_data(
    expr: sympy.Expr, symbols: Sequence[sympy.Symbol]
) -> tuple[sympy.Poly, tuple[int, ...], int]:
    """Degree bounds ``N_i`` and length of an integer polynomial in ``symbols``."""
    poly = sympy.Poly(expr, *symbols)
    if poly.is_zero:
        raise InvalidInputError("f must be nonzero")
    if not all(c.is_Integer for c in poly.coeffs()):
        raise InvalidInputError("f must have integer coefficients")
    degrees = tuple(poly.degree(symbol) for symbol in symbols)
    return poly, degrees, sum(abs(int(c)) for c in poly.coeffs())


def _evaluate_terms(poly: sympy.Poly, values: Sequence[Certified]) -> Certified:
    total: Any = CertifiedReal.exact(0)
    for exponents, coefficient in poly.terms():
        term: Any = CertifiedReal.exact(int(coefficient))
        for value, exponent in zip(values, exponents):
            if exponent:
                term = term * value**exponent
        total = total + term
    return total


def liouville_check(
    expr: sympy.Expr,
    points: Sequence[AlgebraicNumber],
    ctx: LiouvilleContext,
    config: PrecisionConfig | None = None,
) -> LiouvilleReport:
    """Certify ``|f(alpha)| >= exp(bound)`` at an algebraic point.

    Raises:
        InvalidInputError: ``f`` vanishes at the point (exactly, for rational
            points), or is not an integer polynomial.
    """
    symbols = [sympy.Symbol(f"x{i}") for i in range(len(points))]
    poly, degrees, poly_length = integer_polynomial_data(expr, symbols)
    extra = set(sympy.sympify(expr).free_symbols) - set(symbols)
    if extra:
        raise InvalidInputError(f"unexpected variables: {sorted(map(str, extra))}")

    point_heights = [height(point, Fraction(1, 10**30), config) for point in points]
    bound = liouville_bound(degrees, poly_length, point_heights, ctx, config)

    if all(point.is_rational for point in points):
        exact_value = poly.eval(
            {s: sympy.Rational(*_pair(p.rational_value())) for s, p in zip(symbols, points)}
        )
        if exact_value == 0:
            raise InvalidInputError("f vanishes at the point")

    def attempt(_bits: int) -> LiouvilleReport:
        value = _evaluate_terms(poly, [point.enclosure() for point in points])
        modulus = abs(value)
        if not modulus.certainly_gt(0):
            raise UndecidedComparison("cannot separate |f(alpha)| from 0")
        log_value = modulus.log()
        passed = bound.less_than(log_value, strict=False)
        return LiouvilleReport(bound, log_value, degrees, poly_length, passed)

    return escalate(attempt, config, label="liouville_check")


def _pair(value: Fraction) -> tuple[int, int]:
    return value.numerator, value.denominator


__all__ = [
    "AlgebraicNumber",
    "HeightLengthCheck",
    "LiouvilleContext",
    "LiouvilleReport",
    "check_height_length",
    "height",
    "integer_polynomial_data",
    "length",
    "liouville_bound",
    "liouville_check",
    "log_mahler_measure",
    "validate_minimal_polynomial",
]
