import hashlib
import json
from typing import Any, Literal

from pydantic import BaseModel, Field

from app.core.config import settings
from app.models import ExactModel, QRational
from app.sampling import DistributionSpec

SCHEMA_VERSION = 1

ExperimentKind = Literal["hull", "lp"]

HULL_CLASSES = ("outside", "boundary", "interior")
LP_CLASSES = ("bounded", "unbounded")


class ExperimentConfig(ExactModel):
    """
    One Monte Carlo experiment. The result is a pure function of this object.
    cost: LP only; a fixed vector or a law to draw it from (default e_1)
    """

    schema_version: int = SCHEMA_VERSION
    kind: ExperimentKind
    spec: DistributionSpec
    n: int = Field(ge=1)
    d: int = Field(ge=1)
    trials: int
    master_seed: int = Field(ge=0, lt=1 << 64)
    cost: tuple[QRational, ...] | DistributionSpec | None = None
    confidence: float = Field(
        default_factory=lambda: settings.DEFAULT_CONFIDENCE, gt=0.0, lt=1.0
    )
    debug_sandwich: bool = False
    record_trials: bool = False

    def canonical_json(self) -> str:
        payload = self.model_dump(mode="json", exclude_none=True)
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


class ClassTally(BaseModel):
    count: int
    frequency: float
    lo: float
    hi: float


class TheoryReference(ExactModel):
    """Wendel value the frequency is compared against: p(n,d) or p(n+1,d)."""

    symbol: str
    n: int
    d: int
    exact: QRational
    value: float


class ResultHeader(BaseModel):
    version: str
    config_hash: str
    master_seed: int
    bit_generator: str
    gaussian_method: str | None = None
    precision_bits: int | None = None
    normalized: bool | None = None


class ExperimentResult(ExactModel):
    header: ResultHeader
    config: ExperimentConfig
    counts: dict[str, int]
    tallies: dict[str, ClassTally]
    theory: TheoryReference
    diagnostics: dict[str, int] = {}
    # per-trial labels, only kept for the audit CSV
    trial_classes: tuple[str, ...] | None = Field(default=None, exclude=True)
    runtime_seconds: float = Field(default=0.0, exclude=True)

    def frequency(self, label: str) -> float:
        return self.tallies[label].frequency

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


class EnumerationResult(ExactModel):
    kind: ExperimentKind
    n: int
    d: int
    spec: DistributionSpec
    states: int
    probabilities: dict[str, QRational]
    theory: TheoryReference

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


class SandwichBounds(ExactModel):
    """Exact one-sided comparison of enumerated probabilities with p(n, d)."""

    enumeration: EnumerationResult
    contains_at_least_p: bool
    interior_at_most_p: bool

    @property
    def holds(self) -> bool:
        return self.contains_at_least_p and self.interior_at_most_p


class TableRow(BaseModel):
    """One CSV row (x, freq, lo, hi, theory) plus row-specific extras."""

    x: float
    freq: float
    lo: float
    hi: float
    theory: float | None = None
    hits: int | None = None
    gap: float | None = None
    zero_column_probability: float | None = None


class SweepReport(BaseModel):
    d: int
    rows: list[TableRow]
    empirical_crossing: int | None
    exact_crossing: int
    offset: int | None
    window: tuple[int, int]


class DecayReport(BaseModel):
    rows: list[TableRow]
    slope: float | None


class SparseReport(BaseModel):
    d: int
    n: int
    base: str
    rows: list[TableRow]
    critical_p: float


class AsymmetryReport(BaseModel):
    d: int
    n: int
    spec: dict[str, Any]
    frequency: float
    lo: float
    hi: float
    theory: float
    gap: float
