from dataclasses import dataclass
from typing import Literal

from pydantic import model_validator
from typing_extensions import Self

from app.core.errors import ContractViolation
from app.exactq import QMatrix, QVector
from app.hullgeom import HullVerdict
from app.models import ExactModel, QRational


@dataclass(frozen=True)
class LPInstance:
    """max <x, c> subject to A x <= 1 (the all-ones right-hand side is implicit)."""

    A: QMatrix
    c: QVector

    def __post_init__(self) -> None:
        if self.A.rows < 1 or self.A.cols < 1:
            raise ContractViolation(f"A must be at least 1x1, got {self.A.rows}x{self.A.cols}")
        if len(self.c) != self.A.cols:
            raise ContractViolation(
                f"cost has {len(self.c)} entries for {self.A.cols} columns"
            )


class LPInstanceIn(ExactModel):
    """JSON shape {A: [[...], ...], c: [...]} of an LP instance."""

    A: tuple[tuple[QRational, ...], ...]
    c: tuple[QRational, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> Self:
        if not self.A:
            raise ValueError("A needs at least one row")
        width = len(self.A[0])
        if any(len(row) != width for row in self.A):
            raise ValueError("rows of A differ in length")
        if len(self.c) != width:
            raise ValueError(f"c has {len(self.c)} entries, A has {width} columns")
        return self

    def to_instance(self) -> LPInstance:
        return LPInstance(A=QMatrix.from_rows(self.A), c=tuple(self.c))


class BoundednessVerdict(ExactModel):
    """
    Bounded: cone weights lambda >= 0 with sum lambda_i row_i(A) = c.
    Unbounded: ray y with A y <= 0 and <c, y> > 0.
    """

    verdict: Literal["Bounded", "Unbounded"]
    cone_weights: tuple[QRational, ...] | None = None
    ray: tuple[QRational, ...] | None = None

    @property
    def bounded(self) -> bool:
        return self.verdict == "Bounded"

    def to_json_dict(self) -> dict[str, object]:
        return self.model_dump(mode="json", exclude_none=True)


class ConsistencyReport(ExactModel):
    hull: HullVerdict
    boundedness: BoundednessVerdict
    passed: bool
    violations: tuple[str, ...] = ()

    def to_json_dict(self) -> dict[str, object]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
