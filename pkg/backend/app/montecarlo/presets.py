"""Canned experiments: transition sweeps, boundary decay, sparsity and asymmetry probes."""

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Literal

from app.core.config import settings
from app.core.errors import ConfigError, FiniteAtomsRequired, MeanZeroRequired
from app.montecarlo.schemas import (
    AsymmetryReport,
    DecayReport,
    ExperimentConfig,
    ExperimentResult,
    SparseReport,
    SweepReport,
    TableRow,
)
from app.montecarlo.service import MonteCarloService
from app.montecarlo.stats import log_linear_slope
from app.sampling import DistributionSpec, spec_mean, validate_spec
from app.wendel import p_float, window_bounds, window_estimate

logger = logging.getLogger(__name__)

# points with fewer boundary hits than this are left out of the decay fit
MIN_FIT_HITS = 10


def _hull(
    spec: DistributionSpec,
    n: int,
    d: int,
    trials: int,
    seed: int,
    confidence: float | None,
    workers: int | None,
) -> ExperimentResult:
    cfg = ExperimentConfig(
        kind="hull",
        spec=spec,
        n=n,
        d=d,
        trials=trials,
        master_seed=seed,
        confidence=confidence if confidence is not None else settings.DEFAULT_CONFIDENCE,
    )
    return MonteCarloService.run_hull_experiment(cfg, workers)


def critical_sparsity(d: int) -> float:
    """Root of (1 - p)^(2d) = 1/d."""
    return 1.0 - d ** (-1.0 / (2 * d))


def zero_column_probability(p: float, n: int, d: int) -> float:
    """P{some column of an n x d matrix with Bernoulli(p) support is all zero}."""
    return 1.0 - (1.0 - (1.0 - p) ** n) ** d


class PresetService:
    @staticmethod
    def sweep(
        d: int,
        n_range: Sequence[int],
        spec: DistributionSpec,
        trials: int,
        seed: int,
        confidence: float | None = None,
        workers: int | None = None,
    ) -> SweepReport:
        """
        Containment frequency for each n, the first n reaching 1/2, and the
        exact crossing. Every n reuses the same stream keys, so larger n only
        add rows to the same trials.
        """
        ns = sorted(set(n_range))
        if not ns:
            raise ConfigError("n_range is empty")
        rows: list[TableRow] = []
        crossing: int | None = None
        for n in ns:
            result = _hull(spec, n, d, trials, seed, confidence, workers)
            tally = result.tallies["contains"]
            rows.append(
                TableRow(x=n, freq=tally.frequency, lo=tally.lo, hi=tally.hi, theory=p_float(n, d))
            )
            if crossing is None and tally.frequency >= 0.5:
                crossing = n
        exact = window_estimate(d, Fraction(1, 2))
        offset = crossing - 2 * d if crossing is not None else None
        logger.info(f"sweep d={d}: empirical crossing {crossing}, exact {exact}")
        return SweepReport(
            d=d,
            rows=rows,
            empirical_crossing=crossing,
            exact_crossing=exact,
            offset=offset,
            window=window_bounds(d),
        )

    @staticmethod
    def boundary_decay(
        d_list: Sequence[int],
        spec: DistributionSpec,
        trials: int,
        seed: int,
        confidence: float | None = None,
        workers: int | None = None,
    ) -> DecayReport:
        """Boundary-class frequency at n = 2d for each d, and the slope of log(freq) vs d."""
        if not spec.is_finite:
            raise FiniteAtomsRequired(
                f"{spec.kind} puts no mass on boundary events; use a finite-atom law"
            )
        if not d_list:
            raise ConfigError("d_list is empty")
        rows: list[TableRow] = []
        for d in sorted(set(d_list)):
            result = _hull(spec, 2 * d, d, trials, seed, confidence, workers)
            tally = result.tallies["boundary"]
            rows.append(
                TableRow(
                    x=d,
                    freq=tally.frequency,
                    lo=tally.lo,
                    hi=tally.hi,
                    theory=p_float(2 * d, d),
                    hits=tally.count,
                )
            )
        fit = [r for r in rows if (r.hits or 0) >= MIN_FIT_HITS]
        slope = None
        if len(fit) >= 2:
            slope = log_linear_slope([r.x for r in fit], [r.freq for r in fit])
        else:
            logger.warning(f"only {len(fit)} decay points have {MIN_FIT_HITS}+ hits; no slope")
        return DecayReport(rows=rows, slope=slope)

    @staticmethod
    def sparse_threshold_experiment(
        d: int,
        n: int,
        p_grid: Sequence[Fraction | float | str],
        trials: int,
        seed: int,
        base: Literal["gaussian", "rademacher"] = "gaussian",
        normalized: bool = False,
        confidence: float | None = None,
        workers: int | None = None,
    ) -> SparseReport:
        """
        Containment frequency of sparse b*xi entries across p, next to p(n, d)
        and the conjectured critical sparsity. Purely descriptive.
        """
        if not p_grid:
            raise ConfigError("p_grid is empty")
        theory = p_float(n, d)
        rows: list[TableRow] = []
        for raw in p_grid:
            p = DistributionSpec.bernoulli_gaussian(raw).p
            assert p is not None
            if not 0 < p <= 1:
                raise ConfigError(f"sparsity must lie in (0, 1], got {p}")
            if base == "gaussian":
                spec = DistributionSpec.bernoulli_gaussian(p, normalized=normalized)
            else:
                spec = DistributionSpec.bernoulli_rademacher(p)
            result = _hull(spec, n, d, trials, seed, confidence, workers)
            tally = result.tallies["contains"]
            rows.append(
                TableRow(
                    x=float(p),
                    freq=tally.frequency,
                    lo=tally.lo,
                    hi=tally.hi,
                    theory=theory,
                    gap=abs(tally.frequency - theory),
                    zero_column_probability=zero_column_probability(float(p), n, d),
                )
            )
        return SparseReport(d=d, n=n, base=base, rows=rows, critical_p=critical_sparsity(d))

    @staticmethod
    def asymmetry_experiment(
        d: int,
        n: int,
        shifted_spec: DistributionSpec,
        trials: int,
        seed: int,
        confidence: float | None = None,
        workers: int | None = None,
    ) -> AsymmetryReport:
        """
        Containment frequency under a mean-zero law that need not be symmetric,
        and the signed gap to p(n, d). No pass/fail: the reversed inequality is open.
        """
        validate_spec(shifted_spec)
        if shifted_spec.kind == "discrete_general" and not shifted_spec.declared_mean_zero:
            raise MeanZeroRequired("asymmetric laws must be declared mean-zero")
        mean = spec_mean(shifted_spec)
        if mean != 0:
            raise MeanZeroRequired(f"law has mean {mean}, not 0")
        result = _hull(shifted_spec, n, d, trials, seed, confidence, workers)
        tally = result.tallies["contains"]
        theory = p_float(n, d)
        gap = tally.frequency - theory
        logger.info(f"asymmetry d={d} n={n}: frequency {tally.frequency:.4f}, gap {gap:+.4f}")
        return AsymmetryReport(
            d=d,
            n=n,
            spec=shifted_spec.to_json_dict(),
            frequency=tally.frequency,
            lo=tally.lo,
            hi=tally.hi,
            theory=theory,
            gap=gap,
        )
