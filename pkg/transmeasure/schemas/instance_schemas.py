"""Input schemas: zero-estimate instances, toy determinants, queries."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Literal, TypeVar

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    model_validator,
)

from transmeasure.errors import InvalidInputError

Target = Literal["pi", "log2", "e"]
MeasureForm = Literal["algebraic-approx", "polynomial"]

ModelT = TypeVar("ModelT", bound=BaseModel)


class ZeroEstimateInstance(BaseModel):
    """Points, derivative count and degree bounds of a multiplicity estimate."""

    model_config = ConfigDict(frozen=True)

    D0: NonNegativeInt = Field(description="Degree bound in X")
    D1: NonNegativeInt = Field(description="Degree bound in Y")
    S: PositiveInt = Field(description="Number of derivatives (orders 0..S-1)")
    M: PositiveInt = Field(description="Number of points")
    beta: Fraction = Field(description="Coefficient of the derivation, nonzero")
    points: tuple[tuple[Fraction, Fraction], ...] = Field(
        description="Pairs (xi, eta) with distinct xi and nonzero eta"
    )

    @model_validator(mode="after")
    def _check_invariants(self) -> ZeroEstimateInstance:
        if self.beta == 0:
            raise ValueError("beta must be nonzero")
        if len(self.points) != self.M:
            raise ValueError(f"expected {self.M} points, got {len(self.points)}")
        xis = [xi for xi, _ in self.points]
        if len(set(xis)) != len(xis):
            raise ValueError("xi coordinates must be pairwise distinct")
        if any(eta == 0 for _, eta in self.points):
            raise ValueError("eta coordinates must be nonzero")
        return self

    @property
    def condition_21(self) -> bool:
        """``S*M > (D0 + M)(D1 + 1)``."""
        return self.S * self.M > (self.D0 + self.M) * (self.D1 + 1)

    @property
    def column_count(self) -> int:
        return (self.D0 + 1) * (self.D1 + 1)


class ToyInterpolationConfig(BaseModel):
    """Small overrides of the interpolation construction."""

    model_config = ConfigDict(frozen=True)

    S: NonNegativeInt = 2
    S1: NonNegativeInt = 2
    T: NonNegativeInt = 1
    T1: NonNegativeInt = 1
    H: PositiveInt = 2
    alpha: Fraction = Field(default=Fraction(2), description="Value substituted for Y")
    beta: Fraction = Field(default=Fraction(1), description="Value substituted for X")
    theta: str = Field(default="1", description="Closed-form theta for analytic entries")

    @model_validator(mode="after")
    def _check_alpha(self) -> ToyInterpolationConfig:
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")
        return self

    @property
    def L(self) -> int:
        return (self.T + 1) * (2 * self.T1 + 1)

    @property
    def row_count(self) -> int:
        return (self.S + 1) * (self.S1 + 1)


class Lemma3Config(BaseModel):
    """Parameters of the analytic upper bound for an interpolation determinant."""

    model_config = ConfigDict(frozen=True)

    L: PositiveInt
    E: str = Field(default="E", description="Closed-form radius ratio, E >= e")
    M: str = Field(default="0", description="Log of the entry maximum on |z| <= E")
    S: str = Field(default="0", description="Derivative order bound")
    epsilon: Fraction | None = Field(
        default=None, description="Radius of the small disc; must be below E^-L"
    )


class VanishingOrderCase(BaseModel):
    """Monomials z^n, derivative orders and points of a generalized Vandermonde."""

    model_config = ConfigDict(frozen=True)

    exponents: tuple[NonNegativeInt, ...]
    orders: tuple[NonNegativeInt, ...]
    points: tuple[Fraction, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> VanishingOrderCase:
        if len(self.exponents) != len(self.orders):
            raise ValueError("|I| must equal |J|")
        if len(self.points) != len(self.orders):
            raise ValueError("one point per derivative order is required")
        if any(point == 0 for point in self.points):
            raise ValueError("points must be nonzero")
        return self

    @property
    def lower_bound(self) -> int:
        size = len(self.exponents)
        return size * (size - 1) // 2 - sum(self.orders)


class MeasureQuery(BaseModel):
    """Target constant, bound form, degree and length of a measure query."""

    model_config = ConfigDict(frozen=True)

    target: Target
    form: MeasureForm = "polynomial"
    d: PositiveInt
    L: Fraction

    @model_validator(mode="after")
    def _check_length(self) -> MeasureQuery:
        if self.L < 3:
            raise ValueError("L must be at least 3")
        return self


class SearchSpace(BaseModel):
    """Integer polynomials of degree <= d_max and length <= L_max."""

    model_config = ConfigDict(frozen=True)

    target: Target
    d_max: PositiveInt
    L_max: PositiveInt
    screen_bits: int = Field(default=64, ge=16, description="Screening precision")
    width: Fraction = Field(
        default=Fraction(1, 10**6), description="Width of the certified minimum"
    )


def load_model(model: type[ModelT], path: str | Path) -> ModelT:
    """Load a JSON document into ``model``, raising `InvalidInputError`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"Cannot read {path}: {exc}") from exc
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidInputError(f"Invalid {model.__name__} in {path}: {exc}") from exc


def build_model(model: type[ModelT], **values: object) -> ModelT:
    """Validate keyword values into ``model``, raising `InvalidInputError`."""
    try:
        return model.model_validate(values)
    except ValidationError as exc:
        raise InvalidInputError(f"Invalid {model.__name__}: {exc}") from exc


__all__ = [
    "Lemma3Config",
    "MeasureForm",
    "MeasureQuery",
    "SearchSpace",
    "Target",
    "ToyInterpolationConfig",
    "VanishingOrderCase",
    "ZeroEstimateInstance",
    "build_model",
    "load_model",
]
