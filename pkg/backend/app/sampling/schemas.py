from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal

from pydantic import Field, model_validator

from app.core.config import settings
from app.core.errors import ContractViolation
from app.models import ExactModel, QProbability, QRational

DistributionKind = Literal[
    "rademacher",
    "gaussian",
    "bernoulli_gaussian",
    "discrete_symmetric",
    "discrete_general",
]

FINITE_KINDS = ("rademacher", "discrete_symmetric", "discrete_general")

_HALF = Fraction(1, 2)


class Atom(ExactModel):
    """One support point of a finite entry law."""

    value: QRational
    weight: QProbability

    @model_validator(mode="before")
    @classmethod
    def _from_pair(cls, data: Any) -> Any:
        if isinstance(data, list | tuple) and len(data) == 2:
            return {"value": data[0], "weight": data[1]}
        return data


class DistributionSpec(ExactModel):
    """
    Entry law of the random vectors / matrix rows.
    kind: rademacher | gaussian | bernoulli_gaussian | discrete_symmetric | discrete_general
    p: Bernoulli parameter of the bernoulli_gaussian multiplier
    atoms: (value, weight) pairs of a finite law
    precision_bits: continuous draws are rounded to m / 2**precision_bits
    normalized: scale bernoulli_gaussian by 1/sqrt(p) to unit variance
    allow_asymmetric: required to accept a discrete_general law
    declared_mean_zero: caller's claim, checked exactly where it matters
    subgaussian_bound: informational K, never used at runtime
    """

    kind: DistributionKind
    p: QProbability | None = None
    atoms: tuple[Atom, ...] | None = None
    precision_bits: int = Field(default_factory=lambda: settings.DEFAULT_PRECISION_BITS)
    normalized: bool = False
    allow_asymmetric: bool = False
    declared_mean_zero: bool = False
    subgaussian_bound: float | None = None

    @classmethod
    def rademacher(cls) -> "DistributionSpec":
        return cls(kind="rademacher")

    @classmethod
    def gaussian(cls, precision_bits: int | None = None) -> "DistributionSpec":
        if precision_bits is None:
            return cls(kind="gaussian")
        return cls(kind="gaussian", precision_bits=precision_bits)

    @classmethod
    def bernoulli_gaussian(
        cls,
        p: Fraction | str | float,
        precision_bits: int | None = None,
        normalized: bool = False,
    ) -> "DistributionSpec":
        data: dict[str, Any] = {"kind": "bernoulli_gaussian", "p": p, "normalized": normalized}
        if precision_bits is not None:
            data["precision_bits"] = precision_bits
        return cls.model_validate(data)

    @classmethod
    def bernoulli_rademacher(cls, p: Fraction | str | float) -> "DistributionSpec":
        """b * eps with b ~ Bernoulli(p), eps Rademacher, as a finite symmetric law."""
        q = cls.model_validate({"kind": "bernoulli_gaussian", "p": p}).p
        assert q is not None
        atoms = [(1, q / 2), (-1, q / 2)]
        if q != 1:
            atoms.append((0, 1 - q))
        return cls.discrete_symmetric(atoms)

    @classmethod
    def discrete_symmetric(
        cls, atoms: list[tuple[Any, Any]]
    ) -> "DistributionSpec":
        return cls.model_validate({"kind": "discrete_symmetric", "atoms": atoms})

    @classmethod
    def discrete_general(
        cls, atoms: list[tuple[Any, Any]], declared_mean_zero: bool = False
    ) -> "DistributionSpec":
        return cls.model_validate(
            {
                "kind": "discrete_general",
                "atoms": atoms,
                "allow_asymmetric": True,
                "declared_mean_zero": declared_mean_zero,
            }
        )

    @property
    def is_finite(self) -> bool:
        return self.kind in FINITE_KINDS

    def finite_atoms(self) -> list[tuple[Fraction, Fraction]]:
        if self.kind == "rademacher":
            return [(Fraction(1), _HALF), (Fraction(-1), _HALF)]
        if not self.is_finite or not self.atoms:
            raise ContractViolation(f"{self.kind} law has no finite atom list")
        return [(a.value, a.weight) for a in self.atoms]

    def label(self) -> str:
        if self.kind == "bernoulli_gaussian":
            tag = ", normalized" if self.normalized else ""
            return f"bernoulli_gaussian(p={self.p}{tag})"
        if self.kind in ("discrete_symmetric", "discrete_general"):
            pairs = ", ".join(f"{v}:{w}" for v, w in self.finite_atoms())
            return f"{self.kind}({pairs})"
        return self.kind

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


@dataclass(frozen=True)
class StreamKey:
    """(master_seed, trial_index) determines every sampled bit of one trial."""

    master_seed: int
    trial_index: int

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < 1 << 64:
            raise ContractViolation(f"master_seed must fit in 64 bits, got {self.master_seed}")
        if self.trial_index < 0:
            raise ContractViolation(f"negative trial_index {self.trial_index}")
