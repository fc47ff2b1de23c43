"""transmeasure: certified arithmetic for explicit transcendence measures.

Exact and interval computations around the interpolation-determinant proof
of explicit lower bounds for linear forms in logarithms, with support for:
- Weil heights, Mahler measures and Liouville's inequality
- binomial polynomials and their denominators
- the multiplicity estimate and interpolation matrices
- the explicit bounds and instance checks of their derivations
- exhaustive searches at pi, log 2 and e

Main exports:
- CertifiedReal, CertifiedComplex: certified intervals
- AlgebraicNumber, height: algebraic inputs
- derive_params, measure_bound: the explicit bounds
"""

__version__ = "0.1.0"

# Certified numerics
from transmeasure.numerics import (
    CertifiedComplex,
    CertifiedReal,
    CheckRow,
    const_eval,
    decide_inequality,
    escalate,
)
from transmeasure.config import PrecisionConfig
from transmeasure.usage import PrecisionTracker, track_precision

# Heights and algebraic numbers
from transmeasure.heights import AlgebraicNumber, check_height_length, height, liouville_check

# Bounds
from transmeasure.interdet import BoundParams, derive_params
from transmeasure.bounds import (
    ChainReport,
    chain_check_section6,
    chain_check_theorem_derivations,
    measure_bound,
    theorem1_log_bound,
    theorem5_log_bound,
)

# Search
from transmeasure.search import enumerate_min_alg_approx, enumerate_min_poly_value

# Schemas (most commonly used)
from transmeasure.schemas import IntPolynomial, MeasureQuery, RunReport, SearchSpace

__all__ = [
    "__version__",
    # Numerics
    "CertifiedComplex",
    "CertifiedReal",
    "CheckRow",
    "PrecisionConfig",
    "PrecisionTracker",
    "const_eval",
    "decide_inequality",
    "escalate",
    "track_precision",
    # Heights
    "AlgebraicNumber",
    "check_height_length",
    "height",
    "liouville_check",
    # Bounds
    "BoundParams",
    "ChainReport",
    "chain_check_section6",
    "chain_check_theorem_derivations",
    "derive_params",
    "measure_bound",
    "theorem1_log_bound",
    "theorem5_log_bound",
    # Search
    "enumerate_min_alg_approx",
    "enumerate_min_poly_value",
    # Schemas
    "IntPolynomial",
    "MeasureQuery",
    "RunReport",
    "SearchSpace",
]
