from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

from app.core.errors import ContractViolation
from app.exactq import format_rational, parse_rational


def parse_exact(v: Any) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return parse_rational(v)
        except ContractViolation as e:
            raise ValueError(e.detail)
    raise ValueError(f"expected an integer or a 'p/q' string, got {v!r}")


def parse_probability(v: Any) -> Fraction:
    # decimals such as "0.1" or 0.1 are read as the exact decimal 1/10
    if isinstance(v, float):
        return Fraction(repr(v))
    if isinstance(v, str) and "/" not in v:
        try:
            return Fraction(v.strip())
        except ValueError:
            raise ValueError(f"cannot read {v!r} as a probability")
    return parse_exact(v)


QRational = Annotated[
    Fraction,
    BeforeValidator(parse_exact),
    PlainSerializer(format_rational, return_type=str),
]
QProbability = Annotated[
    Fraction,
    BeforeValidator(parse_probability),
    PlainSerializer(format_rational, return_type=str),
]


class ExactModel(BaseModel):
    """Base for models carrying Fraction fields."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
