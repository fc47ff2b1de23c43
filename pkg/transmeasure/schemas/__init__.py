"""transmeasure schemas.

Pydantic models for inputs (polynomials, instances, queries) and for the
structured reports emitted by the command line.
"""

# Polynomials
from transmeasure.schemas.polynomial_schemas import IntPolynomial

# Instances and queries
from transmeasure.schemas.instance_schemas import (
    Lemma3Config,
    MeasureForm,
    MeasureQuery,
    SearchSpace,
    Target,
    ToyInterpolationConfig,
    VanishingOrderCase,
    ZeroEstimateInstance,
    build_model,
    load_model,
)

# Reports
from transmeasure.schemas.report_schemas import (
    CheckModel,
    ComplexIntervalModel,
    IntervalModel,
    RunReport,
    Verdict,
    interval_json,
)

__all__ = [
    # Polynomials
    "IntPolynomial",
    # Instances and queries
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
    # Reports
    "CheckModel",
    "ComplexIntervalModel",
    "IntervalModel",
    "RunReport",
    "Verdict",
    "interval_json",
]
