from app.hullgeom.schemas import (
    ContainmentWitness,
    HullVerdict,
    OriginClass,
    SpanningCertificate,
    StrictSeparator,
    WeakSeparator,
)
from app.hullgeom.service import HullService, Points

__all__ = [
    "ContainmentWitness",
    "HullService",
    "HullVerdict",
    "OriginClass",
    "Points",
    "SpanningCertificate",
    "StrictSeparator",
    "WeakSeparator",
]
