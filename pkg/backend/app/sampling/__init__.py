from app.sampling.sampler import (
    GAUSSIAN_METHOD,
    describe_sampler,
    generator_for,
    sample_cost_vector,
    sample_matrix,
    sample_scalars,
    spec_mean,
    validate_spec,
)
from app.sampling.schemas import Atom, DistributionSpec, StreamKey

__all__ = [
    "GAUSSIAN_METHOD",
    "Atom",
    "DistributionSpec",
    "StreamKey",
    "describe_sampler",
    "generator_for",
    "sample_cost_vector",
    "sample_matrix",
    "sample_scalars",
    "spec_mean",
    "validate_spec",
]
