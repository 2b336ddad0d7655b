from app.exactq.feasibility import (
    FarkasCertificate,
    FeasibilityOutcome,
    Witness,
    solve_feasibility,
    solve_verified,
    verify_outcome,
)
from app.exactq.matrix import (
    QMatrix,
    QVector,
    RationalLike,
    as_vector,
    dot,
    format_rational,
    inverse,
    parse_rational,
    pivot_columns,
    rank,
    to_dyadic,
    to_rational,
)

__all__ = [
    "FarkasCertificate",
    "FeasibilityOutcome",
    "QMatrix",
    "QVector",
    "RationalLike",
    "Witness",
    "as_vector",
    "dot",
    "format_rational",
    "inverse",
    "parse_rational",
    "pivot_columns",
    "rank",
    "solve_feasibility",
    "solve_verified",
    "to_dyadic",
    "to_rational",
    "verify_outcome",
]
