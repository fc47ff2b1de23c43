"""Certified interval arithmetic, constants and root enclosures.

Every inexact quantity in transmeasure is an interval computed with
``mpmath.iv`` (outward rounding). Comparisons are *decided*: they either
return a definite answer or raise `UndecidedComparison`, which the
`escalate` driver turns into a retry at doubled working precision, up to
`PrecisionConfig.max_bits`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from tokenize import TokenError as TokenizeError
from typing import Any, TypeVar, Union
import math

import mpmath
import sympy
from mpmath import iv, mp
from mpmath.libmp import finf, fninf, fzero, mpf_le, mpf_lt

from transmeasure.config import PrecisionConfig
from transmeasure.errors import (
    InconclusivePrecisionError,
    InvalidInputError,
    UndecidedComparison,
)
from transmeasure.usage import current_tracker

T = TypeVar("T")
Exact = Union[int, Fraction]

_X = sympy.Symbol("x")


def to_fraction(value: Any) -> Fraction:
    """Convert an exact rational input (int, Fraction, str, float, sympy Rational)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError("booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidInputError(f"not a finite number: {value!r}")
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not an exact rational: {value!r}") from exc
    raise InvalidInputError(f"not an exact rational: {value!r}")


def _raw_to_fraction(raw: tuple) -> Fraction:
    sign, man, exp, _bc = raw
    if raw in (finf, fninf) or (not man and exp):
        raise UndecidedComparison("interval endpoint is not finite")
    value = Fraction(int(man)) * Fraction(2) ** exp
    return -value if sign else value


def _iv_of_exact(value: Exact) -> Any:
    if isinstance(value, int):
        return iv.mpf(value)
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def _as_iv(value: Any) -> Any:
    if isinstance(value, (CertifiedReal, CertifiedComplex)):
        return value.value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, (int, Fraction)):
        return _iv_of_exact(value)
    if isinstance(value, sympy.Rational):
        return _iv_of_exact(to_fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in certified arithmetic")


def _wrap(value: Any) -> CertifiedReal | CertifiedComplex:
    if hasattr(value, "_mpci_"):
        return CertifiedComplex(value)
    return CertifiedReal(value)


def _decimal_bound(value: Fraction, digits: int, rounding: str) -> str:
    with localcontext() as context:
        context.prec = digits
        context.rounding = rounding
        result = Decimal(value.numerator) / Decimal(value.denominator)
    return str(result)


@dataclass(frozen=True)
class CertifiedReal:
    """A closed real interval ``[lo, hi]`` with exact dyadic endpoints."""

    value: Any

    @classmethod
    def exact(cls, value: Exact) -> CertifiedReal:
        return cls(_iv_of_exact(to_fraction(value)))

    @classmethod
    def from_bounds(cls, lo: Any, hi: Any) -> CertifiedReal:
        lo_iv, hi_iv = _as_iv(lo), _as_iv(hi)
        if not mpf_le(lo_iv._mpi_[0], hi_iv._mpi_[1]):
            raise InvalidInputError("interval endpoints out of order")
        return cls(iv.make_mpf((lo_iv._mpi_[0], hi_iv._mpi_[1])))

    @property
    def lo_raw(self) -> tuple:
        return self.value._mpi_[0]

    @property
    def hi_raw(self) -> tuple:
        return self.value._mpi_[1]

    @property
    def lo(self) -> Fraction:
        return _raw_to_fraction(self.lo_raw)

    @property
    def hi(self) -> Fraction:
        return _raw_to_fraction(self.hi_raw)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_finite(self) -> bool:
        return all(
            raw not in (finf, fninf) and (raw[1] or not raw[2])
            for raw in (self.lo_raw, self.hi_raw)
        )

    def width_at_most(self, width: Fraction) -> bool:
        return self.is_finite and self.width <= width

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        if not self.is_finite:
            return f"CertifiedReal({self.value!s})"
        lo, hi = self.to_decimal_pair(12)
        return f"CertifiedReal([{lo}, {hi}])"

    # Arithmetic (at the ambient working precision)

    def __add__(self, other: Any) -> CertifiedReal | CertifiedComplex:
        if isinstance(other, CertifiedComplex):
            return NotImplemented
        return _wrap(self.value + _as_iv(other))

    def __radd__(self, other: Any) -> CertifiedReal:
        return _wrap(_as_iv(other) + self.value)

    def __sub__(self, other: Any) -> CertifiedReal | CertifiedComplex:
        if isinstance(other, CertifiedComplex):
            return NotImplemented
        return _wrap(self.value - _as_iv(other))

    def __rsub__(self, other: Any) -> CertifiedReal:
        return _wrap(_as_iv(other) - self.value)

    def __mul__(self, other: Any) -> CertifiedReal | CertifiedComplex:
        if isinstance(other, CertifiedComplex):
            return NotImplemented
        return _wrap(self.value * _as_iv(other))

    def __rmul__(self, other: Any) -> CertifiedReal:
        return _wrap(_as_iv(other) * self.value)

    def __truediv__(self, other: Any) -> CertifiedReal | CertifiedComplex:
        if isinstance(other, CertifiedComplex):
            return NotImplemented
        divisor = CertifiedReal(_as_iv(other))
        if divisor.sign() == 0:
            raise InvalidInputError("division by zero")
        return _wrap(self.value / divisor.value)

    def __rtruediv__(self, other: Any) -> CertifiedReal:
        if self.sign() == 0:
            raise InvalidInputError("division by zero")
        return _wrap(_as_iv(other) / self.value)

    def __neg__(self) -> CertifiedReal:
        return CertifiedReal(-self.value)

    def __abs__(self) -> CertifiedReal:
        return CertifiedReal(abs(self.value))

    def __pow__(self, exponent: int) -> CertifiedReal:
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        return _wrap(_int_power(self.value, exponent))

    def log(self) -> CertifiedReal:
        if not mpf_lt(fzero, self.lo_raw):
            if mpf_le(self.hi_raw, fzero):
                raise InvalidInputError("logarithm of a non-positive number")
            raise UndecidedComparison("cannot separate log argument from 0")
        return CertifiedReal(iv.ln(self.value))

    def log_plus(self) -> CertifiedReal:
        """``log max(1, x)``."""
        return self.maximum(1).log()

    def exp(self) -> CertifiedReal:
        return CertifiedReal(iv.exp(self.value))

    def sqrt(self) -> CertifiedReal:
        if mpf_lt(self.lo_raw, fzero):
            if mpf_lt(self.hi_raw, fzero):
                raise InvalidInputError("square root of a negative number")
            raise UndecidedComparison("cannot separate sqrt argument from 0")
        return CertifiedReal(iv.sqrt(self.value))

    def maximum(self, other: Any) -> CertifiedReal:
        other_iv = _as_iv(other)
        if hasattr(other_iv, "_mpci_"):
            raise InvalidInputError("max of a complex value")
        lo = other_iv._mpi_[0] if mpf_lt(self.lo_raw, other_iv._mpi_[0]) else self.lo_raw
        hi = other_iv._mpi_[1] if mpf_lt(self.hi_raw, other_iv._mpi_[1]) else self.hi_raw
        return CertifiedReal(iv.make_mpf((lo, hi)))

    def minimum(self, other: Any) -> CertifiedReal:
        return -((-self).maximum(-CertifiedReal(_as_iv(other))))

    # Decided comparisons

    def certainly_lt(self, other: Any) -> bool:
        return mpf_lt(self.hi_raw, _as_iv(other)._mpi_[0])

    def certainly_le(self, other: Any) -> bool:
        return mpf_le(self.hi_raw, _as_iv(other)._mpi_[0])

    def certainly_gt(self, other: Any) -> bool:
        return mpf_lt(_as_iv(other)._mpi_[1], self.lo_raw)

    def certainly_ge(self, other: Any) -> bool:
        return mpf_le(_as_iv(other)._mpi_[1], self.lo_raw)

    def less_than(self, other: Any, *, strict: bool = True) -> bool:
        """Decide ``self < other`` (or ``<=``); raise when the intervals overlap."""
        other_raw = _as_iv(other)._mpi_
        if strict:
            if mpf_lt(self.hi_raw, other_raw[0]):
                return True
            if mpf_le(other_raw[1], self.lo_raw):
                return False
        else:
            if mpf_le(self.hi_raw, other_raw[0]):
                return True
            if mpf_lt(other_raw[1], self.lo_raw):
                return False
        raise UndecidedComparison("intervals overlap")

    def sign(self) -> int:
        """Decided sign: -1, 0 (exact zero) or 1."""
        if mpf_lt(fzero, self.lo_raw):
            return 1
        if mpf_lt(self.hi_raw, fzero):
            return -1
        if self.lo_raw == fzero and self.hi_raw == fzero:
            return 0
        raise UndecidedComparison("cannot decide the sign of an interval containing 0")

    def contains(self, value: Any) -> bool:
        point = to_fraction(value)
        return self.lo <= point <= self.hi

    def overlaps(self, other: CertifiedReal) -> bool:
        return not (
            mpf_lt(self.hi_raw, other.lo_raw) or mpf_lt(other.hi_raw, self.lo_raw)
        )

    def decided_floor(self) -> int:
        """The floor of every point of the interval, when they agree."""
        floor = math.floor(self.lo)
        if self.hi < floor + 1:
            return floor
        raise UndecidedComparison("interval straddles an integer")

    def to_decimal_pair(self, digits: int = 20) -> tuple[str, str]:
        """Decimal endpoints rounded outward to ``digits`` significant digits."""
        return (
            _decimal_bound(self.lo, digits, ROUND_FLOOR),
            _decimal_bound(self.hi, digits, ROUND_CEILING),
        )


@dataclass(frozen=True)
class CertifiedComplex:
    """A rectangular complex interval ``re + i*im``."""

    value: Any

    @classmethod
    def from_parts(cls, re: Any, im: Any = 0) -> CertifiedComplex:
        return cls(iv.mpc(_as_iv(re), _as_iv(im)))

    @classmethod
    def exact(cls, re: Exact, im: Exact = 0) -> CertifiedComplex:
        return cls.from_parts(to_fraction(re), to_fraction(im))

    @property
    def re(self) -> CertifiedReal:
        return CertifiedReal(self.value.real)

    @property
    def im(self) -> CertifiedReal:
        return CertifiedReal(self.value.imag)

    @property
    def diameter_bound(self) -> Fraction:
        """An upper bound for the diameter of the box."""
        return self.re.width + self.im.width

    def width_at_most(self, width: Fraction) -> bool:
        return self.re.is_finite and self.im.is_finite and self.diameter_bound <= width

    def is_real(self) -> bool:
        return self.im.lo_raw == fzero and self.im.hi_raw == fzero

    def as_real(self) -> CertifiedReal:
        if not self.is_real():
            raise InvalidInputError("value is not certified real")
        return self.re

    def __repr__(self) -> str:
        return f"CertifiedComplex({self.re!r} + i*{self.im!r})"

    def __add__(self, other: Any) -> CertifiedComplex:
        return CertifiedComplex(self.value + _as_iv(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> CertifiedComplex:
        return CertifiedComplex(self.value - _as_iv(other))

    def __rsub__(self, other: Any) -> CertifiedComplex:
        return CertifiedComplex(_as_iv(other) - self.value)

    def __mul__(self, other: Any) -> CertifiedComplex:
        return CertifiedComplex(self.value * _as_iv(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> CertifiedComplex:
        divisor = _as_iv(other)
        if 0 in divisor:
            raise UndecidedComparison("divisor interval contains 0")
        return CertifiedComplex(self.value / divisor)

    def __rtruediv__(self, other: Any) -> CertifiedComplex:
        if 0 in self.value:
            raise UndecidedComparison("divisor interval contains 0")
        return CertifiedComplex(_as_iv(other) / self.value)

    def __neg__(self) -> CertifiedComplex:
        return CertifiedComplex(-self.value)

    def __abs__(self) -> CertifiedReal:
        return CertifiedReal(abs(self.value))

    def __pow__(self, exponent: int) -> CertifiedComplex:
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        return CertifiedComplex(_int_power(self.value, exponent))

    def exp(self) -> CertifiedComplex:
        return CertifiedComplex(iv.exp(self.value))

    def log(self) -> CertifiedComplex:
        if 0 in self.value:
            raise UndecidedComparison("log argument box contains 0")
        return CertifiedComplex(iv.ln(self.value))

    def overlaps(self, other: CertifiedComplex) -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def disjoint_from(self, other: CertifiedComplex) -> bool:
        return not self.overlaps(other)


Certified = Union[CertifiedReal, CertifiedComplex]


def _int_power(value: Any, exponent: int) -> Any:
    if exponent < 0:
        if 0 in value:
            raise UndecidedComparison("negative power of an interval containing 0")
        return 1 / _int_power(value, -exponent)
    result = iv.mpf(1)
    base = value
    while exponent:
        if exponent & 1:
            result = result * base
        exponent >>= 1
        if exponent:
            base = base * base
    return result


# Precision escalation

@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Set the interval and float working precision for the block."""
    saved = (iv.prec, mp.prec)
    iv.prec = bits
    mp.prec = bits
    try:
        yield
    finally:
        iv.prec, mp.prec = saved


def escalate(
    attempt: Callable[[int], T],
    config: PrecisionConfig | None = None,
    *,
    label: str | None = None,
) -> T:
    """Run ``attempt(bits)`` at increasing working precision until it decides.

    Args:
        attempt: Computation raising `UndecidedComparison` when the current
            precision is insufficient.
        config: Working precision and the hard cap.
        label: Name recorded by the active `PrecisionTracker`.

    Returns:
        The first decided result.

    Raises:
        InconclusivePrecisionError: the cap was reached without a decision.
    """
    config = config or PrecisionConfig()
    tracker = current_tracker()
    bits = min(max(config.working_bits, iv.prec), config.max_bits)
    while True:
        try:
            with working_precision(bits):
                result = attempt(bits)
        except UndecidedComparison as exc:
            if bits >= config.max_bits:
                if tracker is not None:
                    tracker.record_inconclusive()
                raise InconclusivePrecisionError(
                    f"{label or 'computation'} undecided at {bits} bits: {exc}",
                    max_bits=config.max_bits,
                ) from exc
            next_bits = min(2 * bits, config.max_bits)
            if tracker is not None:
                tracker.record_escalation(bits, next_bits)
            bits = next_bits
            continue
        if tracker is not None:
            tracker.record_evaluation(bits, label=label)
        return result


# Expressions

_PARSE_LOCALS = {
    "e": sympy.E,
    "E": sympy.E,
    "i": sympy.I,
    "I": sympy.I,
    "pi": sympy.pi,
    "ln": sympy.log,
    "log2": sympy.log(2),
}

NAMED_CONSTANTS: dict[str, sympy.Expr] = {
    "pi": sympy.pi,
    "e": sympy.E,
    "log2": sympy.log(2),
}


def parse_expression(value: Any) -> sympy.Expr:
    """Parse a closed-form constant such as ``"pi*i"``, ``"exp(2)"`` or ``"3/2"``."""
    if isinstance(value, sympy.Basic):
        expr = value
    elif isinstance(value, bool):
        raise InvalidInputError("booleans are not expressions")
    elif isinstance(value, int):
        expr = sympy.Integer(value)
    elif isinstance(value, Fraction):
        expr = sympy.Rational(value.numerator, value.denominator)
    elif isinstance(value, str):
        try:
            expr = sympy.sympify(value, locals=_PARSE_LOCALS, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError, TokenizeError) as exc:
            raise InvalidInputError(f"cannot parse expression {value!r}") from exc
    else:
        raise InvalidInputError(f"unsupported expression value {value!r}")
    if not isinstance(expr, sympy.Expr) or expr.free_symbols:
        raise InvalidInputError(f"expression must be a closed constant: {value!r}")
    return expr


def _real_max(values: list[Any], *, minimum: bool = False) -> Any:
    if any(hasattr(value, "_mpci_") for value in values):
        raise InvalidInputError("Max/Min of complex values")
    result = CertifiedReal(values[0])
    for value in values[1:]:
        other = CertifiedReal(value)
        result = result.minimum(other) if minimum else result.maximum(other)
    return result.value


def _eval_node(expr: sympy.Expr) -> Any:
    if expr.is_Rational:
        return _iv_of_exact(to_fraction(expr))
    if expr is sympy.pi:
        return iv.make_mpf(iv.pi._mpi_)
    if expr is sympy.E:
        return iv.make_mpf(iv.e._mpi_)
    if expr is sympy.I:
        return iv.mpc(0, 1)
    if expr.is_Add:
        total = iv.mpf(0)
        for arg in expr.args:
            total = total + _eval_node(arg)
        return total
    if expr.is_Mul:
        product = iv.mpf(1)
        for arg in expr.args:
            product = product * _eval_node(arg)
        return product
    if expr.is_Pow:
        base, exponent = expr.as_base_exp()
        if exponent.is_Integer:
            return _int_power(_eval_node(base), int(exponent))
        base_value = _eval_node(base)
        if exponent == sympy.S.Half and not hasattr(base_value, "_mpci_"):
            return CertifiedReal(base_value).sqrt().value
        return _exp_value(_eval_node(exponent) * _log_value(base_value))
    if isinstance(expr, sympy.exp):
        return _exp_value(_eval_node(expr.args[0]))
    if isinstance(expr, sympy.log):
        if len(expr.args) != 1:
            return _log_value(_eval_node(expr.args[0])) / _log_value(
                _eval_node(expr.args[1])
            )
        return _log_value(_eval_node(expr.args[0]))
    if isinstance(expr, sympy.Abs):
        return abs(_eval_node(expr.args[0]))
    if isinstance(expr, sympy.Max):
        return _real_max([_eval_node(arg) for arg in expr.args])
    if isinstance(expr, sympy.Min):
        return _real_max([_eval_node(arg) for arg in expr.args], minimum=True)
    if isinstance(expr, sympy.sin):
        return iv.sin(_eval_node(expr.args[0]))
    if isinstance(expr, sympy.cos):
        return iv.cos(_eval_node(expr.args[0]))
    if isinstance(expr, (sympy.re, sympy.im)):
        value = _eval_node(expr.args[0])
        if not hasattr(value, "_mpci_"):
            return value if isinstance(expr, sympy.re) else iv.mpf(0)
        return value.real if isinstance(expr, sympy.re) else value.imag
    raise InvalidInputError(f"unsupported expression node {expr.func.__name__}: {expr}")


def _exp_value(value: Any) -> Any:
    return iv.exp(value)


def _log_value(value: Any) -> Any:
    if hasattr(value, "_mpci_"):
        if 0 in value:
            raise UndecidedComparison("log argument box contains 0")
        return iv.ln(value)
    interval = CertifiedReal(value)
    if mpf_lt(fzero, interval.lo_raw):
        return iv.ln(value)
    if mpf_lt(interval.hi_raw, fzero):
        return iv.ln(iv.mpc(value, 0))
    raise UndecidedComparison("cannot separate log argument from 0")


def eval_expression(expr: Any) -> Certified:
    """Evaluate a closed-form expression at the ambient working precision."""
    return _wrap(_eval_node(parse_expression(expr)))


def enclose(
    expr: Any,
    width: Any = None,
    config: PrecisionConfig | None = None,
    *,
    label: str | None = None,
) -> Certified:
    """Enclose a closed-form expression, escalating until the width contract holds."""
    parsed = parse_expression(expr)
    target = to_fraction(width) if width is not None else None
    if target is not None and target <= 0:
        raise InvalidInputError("precision must be positive")

    def attempt(_bits: int) -> Certified:
        value = _wrap(_eval_node(parsed))
        if target is not None and not value.width_at_most(target):
            raise UndecidedComparison(f"width above {float(target):.3g}")
        return value

    return escalate(attempt, config, label=label or "enclose")


def enclose_real(
    expr: Any,
    width: Any = None,
    config: PrecisionConfig | None = None,
    *,
    label: str | None = None,
) -> CertifiedReal:
    value = enclose(expr, width, config, label=label)
    if isinstance(value, CertifiedComplex):
        return value.as_real()
    return value


def const_eval(
    name: str, precision: Any, config: PrecisionConfig | None = None
) -> Certified:
    """Enclose a named constant (pi, e, log2) or a closed-form θ expression."""
    if to_fraction(precision) <= 0:
        raise InvalidInputError("precision must be positive")
    if name in NAMED_CONSTANTS:
        expr = NAMED_CONSTANTS[name]
    else:
        try:
            expr = parse_expression(name)
        except InvalidInputError as exc:
            raise InvalidInputError(f"unknown constant {name!r}") from exc
    return enclose(expr, precision, config, label=f"const:{name}")


@dataclass(frozen=True)
class InequalityOutcome:
    """Result of a decided inequality between two closed-form expressions."""

    lhs: CertifiedReal
    rhs: CertifiedReal
    holds: bool
    exact: bool


def decide_inequality(
    lhs: Any,
    rhs: Any,
    *,
    strict: bool = False,
    config: PrecisionConfig | None = None,
) -> InequalityOutcome:
    """Decide ``lhs <= rhs`` (or ``<``) exactly when sympy can, else by intervals."""
    lhs_expr, rhs_expr = parse_expression(lhs), parse_expression(rhs)
    difference = sympy.expand(rhs_expr - lhs_expr)

    def enclosures() -> tuple[CertifiedReal, CertifiedReal]:
        return (
            enclose_real(lhs_expr, config=config, label="inequality"),
            enclose_real(rhs_expr, config=config, label="inequality"),
        )

    if difference.is_Rational:
        holds = bool(difference > 0) or (not strict and difference == 0)
        left, right = enclosures()
        return InequalityOutcome(left, right, holds, True)

    def attempt(_bits: int) -> InequalityOutcome:
        left = _wrap(_eval_node(lhs_expr))
        right = _wrap(_eval_node(rhs_expr))
        if isinstance(left, CertifiedComplex):
            left = left.as_real()
        if isinstance(right, CertifiedComplex):
            right = right.as_real()
        return InequalityOutcome(left, right, left.less_than(right, strict=strict), False)

    quick = _attempt_once(attempt, config)
    if quick is not None:
        return quick
    simplified = _symbolic_value(difference)
    if simplified is not None:
        holds = simplified > 0 or (not strict and simplified == 0)
        left, right = enclosures()
        return InequalityOutcome(left, right, holds, True)
    return escalate(attempt, config, label="inequality")


def _attempt_once(
    attempt: Callable[[int], T], config: PrecisionConfig | None
) -> T | None:
    bits = (config or PrecisionConfig()).working_bits
    try:
        with working_precision(bits):
            return attempt(bits)
    except UndecidedComparison:
        return None


def _symbolic_value(expr: sympy.Expr) -> Fraction | None:
    """The exact rational value of ``expr`` when sympy can prove one."""
    simplified = sympy.simplify(sympy.expand_log(expr, force=True))
    if simplified.is_Rational:
        return to_fraction(simplified)
    return None


def decided_floor(expr: Any, config: PrecisionConfig | None = None) -> int:
    """``floor(expr)``, exact for rationals, else from a certified enclosure.

    Raises:
        InconclusivePrecisionError: the enclosure straddles an integer at
            the precision cap.
    """
    parsed = parse_expression(expr)
    if parsed.is_Rational:
        return math.floor(to_fraction(parsed))

    def attempt(_bits: int) -> int:
        value = _wrap(_eval_node(parsed))
        if isinstance(value, CertifiedComplex):
            value = value.as_real()
        return value.decided_floor()

    quick = _attempt_once(attempt, config)
    if quick is not None:
        return quick
    exact = _symbolic_value(parsed)
    if exact is not None:
        return math.floor(exact)
    return escalate(attempt, config, label="floor")


@dataclass(frozen=True)
class CheckRow:
    """A labelled certified inequality ``lhs <= rhs`` (or ``<``)."""

    label: str
    lhs: CertifiedReal | None
    rhs: CertifiedReal | None
    passed: bool
    strict: bool = False
    advisory: bool = False
    inconclusive: bool = False
    detail: str | None = None


def check_row(
    label: str,
    lhs: Any,
    rhs: Any,
    *,
    strict: bool = False,
    advisory: bool = False,
    detail: str | None = None,
    config: PrecisionConfig | None = None,
) -> CheckRow:
    """Decide one inequality; an undecidable row is reported, not raised."""
    try:
        outcome = decide_inequality(lhs, rhs, strict=strict, config=config)
    except InconclusivePrecisionError as exc:
        return CheckRow(label, None, None, False, strict, advisory, True, str(exc))
    return CheckRow(
        label, outcome.lhs, outcome.rhs, outcome.holds, strict, advisory, False, detail
    )


# Polynomials and roots


def _coefficients_of(poly: Any) -> list[int]:
    coefficients = getattr(poly, "coefficients", poly)
    values = [int(c) for c in coefficients]
    while len(values) > 1 and values[0] == 0:
        values.pop(0)
    return values


def horner(coefficients: Sequence[int], point: Any) -> Any:
    """Interval Horner evaluation of a leading-first integer polynomial."""
    point_iv = _as_iv(point)
    result = iv.mpf(0)
    for coefficient in coefficients:
        result = result * point_iv + coefficient
    return result


@dataclass(frozen=True)
class RootEnclosure:
    """A box holding exactly one distinct root, with its multiplicity."""

    root: CertifiedComplex
    multiplicity: int
    is_real: bool = False

    @property
    def modulus(self) -> CertifiedReal:
        if self.is_real:
            return abs(self.root.re)
        return abs(self.root)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.root.re.midpoint, self.root.im.midpoint)


@dataclass(frozen=True)
class _Disc:
    square: CertifiedComplex
    report: CertifiedComplex
    is_real: bool


def _inclusion_disc(
    coefficients: Sequence[int], derivative: Sequence[int], center: Any, degree: int
) -> tuple[Any, CertifiedReal]:
    # The disc |z - c| <= n |P(c)/P'(c)| contains a root of P.
    value = abs(horner(coefficients, center))
    slope = abs(horner(derivative, center))
    if not mpf_lt(fzero, slope._mpi_[0]):
        raise UndecidedComparison("derivative not separated from 0 at a seed")
    radius = CertifiedReal(degree * value / slope)
    return center, radius


def _square_around(center: Any, radius: CertifiedReal) -> CertifiedComplex:
    spread = iv.make_mpf((mpmath.libmp.mpf_neg(radius.hi_raw), radius.hi_raw))
    if hasattr(center, "_mpci_"):
        return CertifiedComplex(iv.mpc(center.real + spread, center.imag + spread))
    return CertifiedComplex(iv.mpc(center + spread, spread))


def _isolate_squarefree(coefficients: Sequence[int], bits: int) -> list[_Disc]:
    degree = len(coefficients) - 1
    if degree == 1:
        root = CertifiedComplex.exact(Fraction(-coefficients[1], coefficients[0]))
        return [_Disc(square=root, report=root, is_real=True)]

    derivative = [c * (degree - k) for k, c in enumerate(coefficients[:-1])]
    try:
        seeds = mpmath.polyroots(
            [mp.mpf(c) for c in coefficients],
            maxsteps=max(100, 2 * bits),
            extraprec=bits,
        )
    except mpmath.NoConvergence as exc:
        raise UndecidedComparison("numeric root seeds did not converge") from exc

    discs: list[_Disc] = []
    for seed in seeds:
        seed_re = mp.mpf(mpmath.re(seed))
        seed_im = mp.mpf(mpmath.im(seed))
        center = iv.mpc(iv.mpf(seed_re), iv.mpf(seed_im))
        _, radius = _inclusion_disc(coefficients, derivative, center, degree)
        meets_real_axis = not CertifiedReal(abs(iv.mpf(seed_im))).certainly_gt(radius)
        if meets_real_axis:
            # A disc centred on the real axis holding one root holds a real root.
            real_center = iv.mpf(seed_re)
            _, real_radius = _inclusion_disc(coefficients, derivative, real_center, degree)
            square = _square_around(real_center, real_radius)
            spread = iv.make_mpf(
                (mpmath.libmp.mpf_neg(real_radius.hi_raw), real_radius.hi_raw)
            )
            report = CertifiedComplex(iv.mpc(real_center + spread, 0))
            discs.append(_Disc(square=square, report=report, is_real=True))
        else:
            square = _square_around(center, radius)
            discs.append(_Disc(square=square, report=square, is_real=False))
    return discs


def isolate_roots(poly: Any, bits: int | None = None) -> list[RootEnclosure]:
    """Root enclosures at the ambient precision; raises `UndecidedComparison`.

    The polynomial is split into square-free parts (exact, via sympy); each
    part's numeric seeds are certified by inclusion discs which must be
    pairwise disjoint, so each disc holds exactly one distinct root.
    """
    coefficients = _coefficients_of(poly)
    if all(c == 0 for c in coefficients):
        raise InvalidInputError("zero polynomial has no root enclosures")
    if len(coefficients) < 2:
        raise InvalidInputError("constant polynomial has no roots")

    bits = bits or iv.prec
    _content, factors = sympy.Poly(coefficients, _X).sqf_list()
    discs: list[tuple[_Disc, int]] = []
    for factor, multiplicity in factors:
        factor_coefficients = [int(c) for c in factor.all_coeffs()]
        if len(factor_coefficients) < 2:
            continue
        for disc in _isolate_squarefree(factor_coefficients, bits):
            discs.append((disc, int(multiplicity)))

    for index, (disc, _) in enumerate(discs):
        for other, _ in discs[index + 1 :]:
            if not disc.square.disjoint_from(other.square):
                raise UndecidedComparison("root inclusion discs overlap")

    enclosures = [
        RootEnclosure(root=disc.report, multiplicity=multiplicity, is_real=disc.is_real)
        for disc, multiplicity in discs
    ]
    return sorted(enclosures, key=RootEnclosure.sort_key)


def root_enclosures(
    poly: Any, width: Any, config: PrecisionConfig | None = None
) -> list[RootEnclosure]:
    """Certified, pairwise disjoint enclosures of all roots of ``poly``.

    Args:
        poly: An `IntPolynomial` or leading-first integer coefficients.
        width: Upper bound for each box diameter.
        config: Precision settings.

    Returns:
        Enclosures sorted by real then imaginary midpoint; multiplicities
        sum to the degree.

    Raises:
        InvalidInputError: zero or constant polynomial.
        InconclusivePrecisionError: the width is unreachable at the cap.
    """
    target = to_fraction(width)
    if target <= 0:
        raise InvalidInputError("width must be positive")
    coefficients = _coefficients_of(poly)
    if all(c == 0 for c in coefficients):
        raise InvalidInputError("zero polynomial has no root enclosures")

    def attempt(bits: int) -> list[RootEnclosure]:
        enclosures = isolate_roots(coefficients, bits)
        if any(not e.root.width_at_most(target) for e in enclosures):
            raise UndecidedComparison("root boxes wider than requested")
        return enclosures

    return escalate(attempt, config, label="root_enclosures")


__all__ = [
    "Certified",
    "CheckRow",
    "CertifiedComplex",
    "CertifiedReal",
    "InequalityOutcome",
    "NAMED_CONSTANTS",
    "RootEnclosure",
    "check_row",
    "const_eval",
    "decided_floor",
    "decide_inequality",
    "enclose",
    "enclose_real",
    "escalate",
    "eval_expression",
    "horner",
    "isolate_roots",
    "parse_expression",
    "root_enclosures",
    "to_fraction",
    "working_precision",
]
