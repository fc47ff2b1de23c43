"""Report schemas: interval text format, checks and the run report."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from transmeasure.numerics import CertifiedComplex, CertifiedReal

DEFAULT_DIGITS = 20

Verdict = Literal["pass", "fail", "inconclusive"]


class IntervalModel(BaseModel):
    """Decimal endpoints rounded outward, so the pair still encloses the value."""

    lo: str = Field(description="Lower endpoint, rounded toward -infinity")
    hi: str = Field(description="Upper endpoint, rounded toward +infinity")
    digits: int = Field(description="Significant digits of each endpoint")

    @classmethod
    def from_certified(
        cls, value: CertifiedReal, digits: int = DEFAULT_DIGITS
    ) -> IntervalModel:
        lo, hi = value.to_decimal_pair(digits)
        return cls(lo=lo, hi=hi, digits=digits)


class ComplexIntervalModel(BaseModel):
    re: IntervalModel
    im: IntervalModel

    @classmethod
    def from_certified(
        cls, value: CertifiedComplex, digits: int = DEFAULT_DIGITS
    ) -> ComplexIntervalModel:
        return cls(
            re=IntervalModel.from_certified(value.re, digits),
            im=IntervalModel.from_certified(value.im, digits),
        )


def interval_json(value: Any, digits: int = DEFAULT_DIGITS) -> Any:
    """Serialize a certified value in the report interval format."""
    if isinstance(value, CertifiedReal):
        return IntervalModel.from_certified(value, digits).model_dump()
    if isinstance(value, CertifiedComplex):
        return ComplexIntervalModel.from_certified(value, digits).model_dump()
    return value


class CheckModel(BaseModel):
    """One certified comparison ``lhs <= rhs`` (or ``<``)."""

    model_config = ConfigDict(populate_by_name=True)

    label: str
    lhs: IntervalModel | None = None
    rhs: IntervalModel | None = None
    passed: bool = Field(alias="pass")
    strict: bool = False
    advisory: bool = Field(
        default=False, description="Advisory rows never change the verdict"
    )
    detail: str | None = None


class RunReport(BaseModel):
    """Structured document emitted by every CLI command."""

    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckModel] = Field(default_factory=list)
    findings: list[str] = Field(default_factory=list)
    verdict: Verdict = "pass"
    timing: dict[str, Any] = Field(default_factory=dict)
    precision: dict[str, Any] = Field(
        default_factory=dict, description="Precision ceiling used and escalations"
    )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


__all__ = [
    "CheckModel",
    "ComplexIntervalModel",
    "DEFAULT_DIGITS",
    "IntervalModel",
    "RunReport",
    "Verdict",
    "interval_json",
]
