from dataclasses import dataclass
from enum import Enum

from pydantic import ConfigDict, Field

from app.exactq import QVector
from app.models import ExactModel, QRational


class OriginClass(str, Enum):
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"

    @property
    def contains(self) -> bool:
        return self is not OriginClass.OUTSIDE


@dataclass(frozen=True)
class ContainmentWitness:
    """Convex weights with sum(lambda_i X_i) = 0."""

    weights: QVector


@dataclass(frozen=True)
class StrictSeparator:
    """<X_i, y> < 0 for every point."""

    y: QVector


@dataclass(frozen=True)
class SpanningCertificate:
    """Cone weights expressing e_1, -e_1, e_2, -e_2, ... in that order."""

    witnesses: tuple[QVector, ...]


@dataclass(frozen=True)
class WeakSeparator:
    """Non-zero y with <X_i, y> <= 0 for every point."""

    y: QVector


class HullVerdict(ExactModel):
    model_config = ConfigDict(
        arbitrary_types_allowed=True, frozen=True, populate_by_name=True
    )

    origin_class: OriginClass = Field(alias="class")
    witness: tuple[QRational, ...] | None = None
    separator: tuple[QRational, ...] | None = None
    spanning_witnesses: tuple[tuple[QRational, ...], ...] | None = None

    def to_json_dict(self) -> dict[str, object]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
