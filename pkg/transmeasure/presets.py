"""Named substitutions into the main lower bound.

Each preset fixes ``theta``, ``E``, ``log A``, ``log B`` and the field
degree ``D`` as functions of the approximant's degree ``d``, its length
bound ``L`` and its height:

- ``thm2``: ``theta = pi*i``, ``alpha = -1``, ``beta = i*xi``, ``E = e^2``,
  ``log A = 1/D``, ``D = 2d``.
- ``thm3``: ``theta = log 2``, ``alpha = 2``, ``beta = xi``, ``E = e*d``,
  ``A = e``, ``D = d``.
- ``thm4``: ``theta = 1``, ``alpha = xi``, ``beta = 1``,
  ``log A = 1 + log(L)/d``, ``B = 1``, ``E = e*d*log A``, ``D = d``.
- ``thm5``: ``theta = beta`` with ``E = e`` and the smallest ``log A``
  allowed by the hypotheses.

When no height is supplied the approximant's height is taken as
``log(L)/d``, the largest value the length bound allows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any
import random

import sympy

from transmeasure.config import PRESETS
from transmeasure.errors import InvalidInputError
from transmeasure.numerics import parse_expression


@dataclass(frozen=True)
class Substitution:
    """Concrete parameters of one preset instance."""

    name: str
    d: int
    L: sympy.Expr
    D: int
    theta: sympy.Expr
    E: sympy.Expr
    logA: sympy.Expr
    logB: sympy.Expr
    h_xi: sympy.Expr
    abs_beta: sympy.Expr | None = None
    h_alpha: sympy.Expr | None = None

    def params(self) -> dict[str, Any]:
        """Keyword arguments for `transmeasure.interdet.derive_params`."""
        return {
            "D": self.D,
            "logA": self.logA,
            "logB": self.logB,
            "E": self.E,
            "theta": self.theta,
        }

    def describe(self) -> dict[str, str]:
        described = {
            "preset": self.name,
            "d": str(self.d),
            "L": str(self.L),
            "D": str(self.D),
            "theta": str(self.theta),
            "E": str(self.E),
            "logA": str(self.logA),
            "logB": str(self.logB),
            "h_xi": str(self.h_xi),
        }
        if self.abs_beta is not None:
            described["abs_beta"] = str(self.abs_beta)
        return described


def substitution(
    name: str,
    d: int = 1,
    L: Any = 10,
    *,
    h_xi: Any = None,
    abs_beta: Any = 1,
    h_alpha: Any = 0,
) -> Substitution:
    """Instantiate preset ``name`` at degree ``d`` and length bound ``L``.

    For ``thm5`` the degree plays the role of ``D``, ``h_xi`` that of
    ``h(beta)`` and ``abs_beta`` bounds ``|beta|``.
    """
    if name not in PRESETS:
        raise InvalidInputError(f"unknown preset {name!r}; expected one of {PRESETS}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidInputError("d must be a positive integer")
    length = parse_expression(L)
    if not bool(length >= 3):
        raise InvalidInputError("L must be at least 3")
    height = (
        parse_expression(h_xi) if h_xi is not None else sympy.log(length) / d
    )

    if name == "thm2":
        D = 2 * d
        return Substitution(
            name=name,
            d=d,
            L=length,
            D=D,
            theta=sympy.pi * sympy.I,
            E=sympy.exp(2),
            logA=sympy.Rational(1, D),
            logB=height,
            h_xi=height,
        )
    if name == "thm3":
        return Substitution(
            name=name,
            d=d,
            L=length,
            D=d,
            theta=sympy.log(2),
            E=sympy.E * d,
            logA=sympy.Integer(1),
            logB=height,
            h_xi=height,
        )
    if name == "thm4":
        logA = 1 + sympy.log(length) / d
        return Substitution(
            name=name,
            d=d,
            L=length,
            D=d,
            theta=sympy.Integer(1),
            E=sympy.E * d * logA,
            logA=logA,
            logB=sympy.Integer(0),
            h_xi=height,
        )

    beta = parse_expression(abs_beta)
    alpha_height = parse_expression(h_alpha)
    E = sympy.E
    logA = sympy.Max(alpha_height, sympy.Rational(1, d), beta * E / d)
    return Substitution(
        name=name,
        d=d,
        L=length,
        D=d,
        theta=beta,
        E=E,
        logA=logA,
        logB=height if h_xi is not None else sympy.Integer(0),
        h_xi=height if h_xi is not None else sympy.Integer(0),
        abs_beta=beta,
        h_alpha=alpha_height,
    )


@dataclass(frozen=True)
class ParameterPack:
    """Inputs of `transmeasure.interdet.derive_params`."""

    D: int
    logA: sympy.Expr
    logB: sympy.Expr
    E: sympy.Expr
    theta: sympy.Expr

    def params(self) -> dict[str, Any]:
        return {
            "D": self.D,
            "logA": self.logA,
            "logB": self.logB,
            "E": self.E,
            "theta": self.theta,
        }


def random_parameter_packs(count: int = 10, seed: int = 0) -> list[ParameterPack]:
    """Valid packs with ``D <= 6``, ``e <= E <= e^4`` and ``1/4 <= |theta| <= 8``.

    Every third ``theta`` is purely imaginary.
    """
    rng = random.Random(seed)
    packs: list[ParameterPack] = []
    for index in range(count):
        D = rng.randint(1, 6)
        log_E = Fraction(rng.randint(4, 16), 4)
        modulus = Fraction(rng.randint(1, 32), 4)
        theta = sympy.Rational(modulus.numerator, modulus.denominator)
        if index % 3 == 2:
            theta = theta * sympy.I
        logA = sympy.Rational(1, D) + sympy.Rational(rng.randint(0, 20), 4)
        logB = sympy.Rational(rng.randint(0, 20), 4)
        packs.append(
            ParameterPack(
                D=D,
                logA=logA,
                logB=logB,
                E=sympy.exp(sympy.Rational(log_E.numerator, log_E.denominator)),
                theta=theta,
            )
        )
    return packs


__all__ = [
    "ParameterPack",
    "Substitution",
    "random_parameter_packs",
    "substitution",
]
