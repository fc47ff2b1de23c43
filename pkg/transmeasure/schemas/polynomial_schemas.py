"""Integer polynomial schema.

Coefficients are stored leading first (``a0, ..., ad``), matching the
comma-separated text format ``"1,0,-2"`` for ``x^2 - 2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Any
import math

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator

from transmeasure.io_helpers import parse_int_list
from transmeasure.numerics import Certified, _as_iv, _wrap, horner


class IntPolynomial(BaseModel):
    """Dense univariate polynomial with integer coefficients."""

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[int, ...] = Field(
        description="Coefficients a0..ad, leading coefficient first"
    )

    @field_validator("coefficients", mode="after")
    @classmethod
    def _strip_leading_zeros(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        stripped = list(value)
        while len(stripped) > 1 and stripped[0] == 0:
            stripped.pop(0)
        return tuple(stripped) if stripped else (0,)

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse ``"1,0,-2"``."""
        return cls(coefficients=tuple(parse_int_list(text)))

    @classmethod
    def of(cls, *coefficients: int) -> IntPolynomial:
        return cls(coefficients=coefficients)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> IntPolynomial:
        return cls(coefficients=tuple(int(c) for c in poly.all_coeffs()))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[0]

    @property
    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.coefficients), 0)

    def evaluate_exact(self, x: int | Fraction) -> Fraction:
        result = Fraction(0)
        for coefficient in self.coefficients:
            result = result * x + coefficient
        return result

    def evaluate(self, x: Any) -> Certified:
        """Interval Horner evaluation at the ambient working precision."""
        return _wrap(horner(self.coefficients, _as_iv(x)))

    def derivative(self) -> IntPolynomial:
        if self.degree == 0:
            return IntPolynomial(coefficients=(0,))
        return IntPolynomial(
            coefficients=tuple(
                c * (self.degree - k) for k, c in enumerate(self.coefficients[:-1])
            )
        )

    def reversed(self) -> IntPolynomial:
        """``x^d P(1/x)``: the minimal polynomial of ``1/alpha``."""
        return IntPolynomial(coefficients=tuple(reversed(self.coefficients)))

    def to_sympy(self, symbol: sympy.Symbol | None = None) -> sympy.Poly:
        return sympy.Poly(list(self.coefficients), symbol or sympy.Symbol("x"))

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coefficients)

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


__all__ = ["IntPolynomial"]
