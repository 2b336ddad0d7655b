import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.special import ndtri
from tenacity import RetryCallState, Retrying, after_log, retry_if_result, stop_after_attempt

from app.core.config import settings
from app.core.errors import ConfigError, SymmetryViolation, WeightError, ZeroCostVector
from app.exactq import QMatrix, QVector, RationalLike, as_vector, to_dyadic
from app.sampling.schemas import DistributionSpec, StreamKey

logger = logging.getLogger(__name__)

GAUSSIAN_METHOD = "inverse-cdf"
BIT_GENERATOR = "philox"
MATRIX_STREAM = 0
COST_STREAM = 1
# numpy integer draws are int64
_MAX_DENOMINATOR = 1 << 62


def validate_spec(spec: DistributionSpec) -> None:
    if spec.precision_bits < 1:
        raise ConfigError(f"precision_bits must be >= 1, got {spec.precision_bits}")
    if spec.kind == "bernoulli_gaussian":
        if spec.p is None:
            raise ConfigError("bernoulli_gaussian needs p")
        if not 0 <= spec.p <= 1:
            raise ConfigError(f"p must lie in [0, 1], got {spec.p}")
        if spec.p.denominator > _MAX_DENOMINATOR:
            raise WeightError(f"p={spec.p} has a denominator too large to sample exactly")
        if spec.normalized and spec.p == 0:
            raise ConfigError("cannot normalize a bernoulli_gaussian law with p = 0")
    if spec.kind not in ("discrete_symmetric", "discrete_general"):
        return

    if not spec.atoms:
        raise ConfigError(f"{spec.kind} needs at least one atom")
    weights = [a.weight for a in spec.atoms]
    if any(w < 0 for w in weights):
        raise WeightError("atom weights must be non-negative")
    total = sum(weights, Fraction(0))
    if total != 1:
        raise WeightError(f"atom weights sum to {total}, not 1")
    if math.lcm(*(w.denominator for w in weights)) > _MAX_DENOMINATOR:
        raise WeightError("atom weights are too fine to sample exactly")

    if spec.kind == "discrete_general":
        if not spec.allow_asymmetric:
            raise SymmetryViolation("discrete_general laws require allow_asymmetric")
        return
    mass: dict[Fraction, Fraction] = defaultdict(Fraction)
    for atom in spec.atoms:
        mass[atom.value] += atom.weight
    for value, weight in mass.items():
        if mass.get(-value, Fraction(0)) != weight:
            raise SymmetryViolation(
                f"atom {value} has weight {weight} but {-value} has "
                f"{mass.get(-value, Fraction(0))}"
            )


def spec_mean(spec: DistributionSpec) -> Fraction:
    """Exact mean; symmetric continuous laws are centred by construction."""
    if spec.kind in ("gaussian", "bernoulli_gaussian", "rademacher"):
        return Fraction(0)
    return sum((v * w for v, w in spec.finite_atoms()), Fraction(0))


def describe_sampler(spec: DistributionSpec) -> dict[str, Any]:
    continuous = spec.kind in ("gaussian", "bernoulli_gaussian")
    return {
        "bit_generator": BIT_GENERATOR,
        "gaussian_method": GAUSSIAN_METHOD if continuous else None,
        "precision_bits": spec.precision_bits if continuous else None,
        "normalized": spec.normalized if spec.kind == "bernoulli_gaussian" else None,
    }


def generator_for(key: StreamKey, stream: int = MATRIX_STREAM) -> np.random.Generator:
    """
    Philox generator for one trial. SeedSequence hashes (master_seed,
    trial_index, stream) into the Philox key, so substreams never share state.
    """
    seq = np.random.SeedSequence(key.master_seed, spawn_key=(key.trial_index, stream))
    return np.random.Generator(np.random.Philox(seq))


def _open_uniforms(gen: np.random.Generator, size: int) -> np.ndarray:
    # odd multiples of 2**-53: never 0 or 1, always exact doubles
    odd = gen.integers(0, 1 << 52, size=size, dtype=np.int64) * 2 + 1
    return odd / float(1 << 53)


def _draw(spec: DistributionSpec, gen: np.random.Generator, size: int) -> list[Fraction]:
    if spec.kind == "rademacher":
        signs = gen.integers(0, 2, size=size, dtype=np.int64)
        return [Fraction(2 * int(s) - 1) for s in signs]
    if spec.kind == "gaussian":
        return [to_dyadic(float(x), spec.precision_bits) for x in ndtri(_open_uniforms(gen, size))]
    if spec.kind == "bernoulli_gaussian":
        assert spec.p is not None
        p = spec.p
        # both streams are always consumed so the layout does not depend on p
        keep = gen.integers(0, p.denominator, size=size, dtype=np.int64) < p.numerator
        normals = ndtri(_open_uniforms(gen, size))
        scale = 1.0 / math.sqrt(p) if spec.normalized else 1.0
        return [
            to_dyadic(float(g) * scale, spec.precision_bits) if k else Fraction(0)
            for k, g in zip(keep, normals)
        ]
    atoms = spec.finite_atoms()
    denominator = math.lcm(*(w.denominator for _, w in atoms))
    cumulative = np.cumsum([int(w * denominator) for _, w in atoms], dtype=np.int64)
    picks = np.searchsorted(
        cumulative, gen.integers(0, denominator, size=size, dtype=np.int64), side="right"
    )
    return [atoms[int(i)][0] for i in picks]


def sample_matrix(spec: DistributionSpec, n: int, d: int, key: StreamKey) -> QMatrix:
    """
    n x d matrix of i.i.d. entries. Rows are drawn one call at a time, so the
    first k rows are identical for every n >= k under the same key.
    """
    validate_spec(spec)
    gen = generator_for(key, MATRIX_STREAM)
    entries: list[Fraction] = []
    for _ in range(n):
        entries.extend(_draw(spec, gen, d))
    return QMatrix(rows=n, cols=d, entries=tuple(entries))


def sample_scalars(spec: DistributionSpec, count: int, key: StreamKey) -> list[Fraction]:
    validate_spec(spec)
    return _draw(spec, generator_for(key, MATRIX_STREAM), count)


def _is_zero(vec: QVector) -> bool:
    return not any(vec)


def _give_up(retry_state: RetryCallState) -> QVector:
    raise ZeroCostVector(
        f"no non-zero cost vector after {retry_state.attempt_number} draws"
    )


def sample_cost_vector(
    cost: DistributionSpec | Sequence[RationalLike], d: int, key: StreamKey
) -> QVector:
    """The fixed vector, or a draw from `cost` resampled until non-zero."""
    if not isinstance(cost, DistributionSpec):
        vec = as_vector(cost)
        if len(vec) != d:
            raise ConfigError(f"cost vector has {len(vec)} entries, expected {d}")
        if _is_zero(vec):
            raise ZeroCostVector("cost vector must be non-zero")
        return vec
    validate_spec(cost)
    gen = generator_for(key, COST_STREAM)
    retrying = Retrying(
        stop=stop_after_attempt(settings.COST_RESAMPLE_ATTEMPTS),
        retry=retry_if_result(_is_zero),
        after=after_log(logger, logging.DEBUG),
        retry_error_callback=_give_up,
    )
    result: QVector = retrying(lambda: tuple(_draw(cost, gen, d)))
    return result
