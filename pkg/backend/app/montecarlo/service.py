import logging
import math
import time
from collections import Counter
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from app import __version__
from app.core.config import settings
from app.core.errors import (
    ConfigError,
    FiniteAtomsRequired,
    TooLargeToEnumerate,
    ZeroCostVector,
)
from app.exactq import QMatrix, QVector, RationalLike, as_vector
from app.hullgeom import HullService, OriginClass
from app.lpbound import LPInstance, LPService
from app.montecarlo.schemas import (
    HULL_CLASSES,
    LP_CLASSES,
    ClassTally,
    EnumerationResult,
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    ResultHeader,
    SandwichBounds,
    TheoryReference,
)
from app.montecarlo.stats import wilson_interval
from app.sampling import (
    DistributionSpec,
    StreamKey,
    describe_sampler,
    sample_cost_vector,
    sample_matrix,
    validate_spec,
)
from app.wendel import p_exact

logger = logging.getLogger(__name__)

# (class label, diagnostic flags) of one trial
TrialOutcome = tuple[str, tuple[str, ...]]

DIMENSION_DEFICIENT = "dimension_deficient"
SANDWICH_BOUNDARY = "boundary_correction"
SANDWICH_VIOLATION = "sandwich_violations"


def _unit_cost(d: int) -> QVector:
    return tuple(Fraction(1 if j == 0 else 0) for j in range(d))


def _theory(kind: ExperimentKind, n: int, d: int) -> TheoryReference:
    if kind == "hull":
        value = p_exact(n, d)
        return TheoryReference(symbol="p(n,d)", n=n, d=d, exact=value, value=float(value))
    value = p_exact(n + 1, d)
    return TheoryReference(symbol="p(n+1,d)", n=n + 1, d=d, exact=value, value=float(value))


def _hull_trial(cfg: ExperimentConfig, t: int) -> TrialOutcome:
    points = sample_matrix(cfg.spec, cfg.n, cfg.d, StreamKey(cfg.master_seed, t)).row_list()
    verdict = HullService.classify_origin(points)
    flags = (DIMENSION_DEFICIENT,) if HullService.dimension_deficient(points) else ()
    return verdict.origin_class.value.lower(), flags


def _lp_trial(cfg: ExperimentConfig, t: int) -> TrialOutcome:
    key = StreamKey(cfg.master_seed, t)
    A = sample_matrix(cfg.spec, cfg.n, cfg.d, key)
    cost = cfg.cost if cfg.cost is not None else _unit_cost(cfg.d)
    inst = LPInstance(A=A, c=sample_cost_vector(cost, cfg.d, key))
    if not cfg.debug_sandwich:
        verdict = LPService.is_bounded(inst)
        return verdict.verdict.lower(), ()
    report = LPService.sandwich_check(inst)
    flags: list[str] = []
    if report.hull.origin_class is OriginClass.BOUNDARY:
        flags.append(SANDWICH_BOUNDARY)
    if not report.passed:
        flags.append(SANDWICH_VIOLATION)
    return report.boundedness.verdict.lower(), tuple(flags)


def _run_chunk(cfg_json: str, start: int, stop: int) -> list[TrialOutcome]:
    cfg = ExperimentConfig.model_validate_json(cfg_json)
    trial = _hull_trial if cfg.kind == "hull" else _lp_trial
    outcomes = [trial(cfg, t) for t in range(start, stop)]
    logger.debug(f"trials [{start}, {stop}) done")
    return outcomes


def _chunks(trials: int, size: int) -> Iterator[tuple[int, int]]:
    for start in range(0, trials, size):
        yield start, min(trials, start + size)


def _run_trials(cfg: ExperimentConfig, workers: int) -> list[TrialOutcome]:
    cfg_json = cfg.model_dump_json()
    bounds = list(_chunks(cfg.trials, settings.CHUNK_SIZE))
    if workers <= 1 or len(bounds) == 1:
        return [o for start, stop in bounds for o in _run_chunk(cfg_json, start, stop)]
    starts = [b[0] for b in bounds]
    stops = [b[1] for b in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, so the merge is index-ordered
        parts = pool.map(_run_chunk, [cfg_json] * len(bounds), starts, stops)
        return [o for part in parts for o in part]


class MonteCarloService:
    @staticmethod
    def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentResult:
        if cfg.kind == "hull":
            return MonteCarloService.run_hull_experiment(cfg, workers)
        return MonteCarloService.run_lp_experiment(cfg, workers)

    @staticmethod
    def run_hull_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentResult:
        """
        Classify the rows of one sampled n x d matrix per trial and tally
        Outside / Boundary / Interior against p(n, d).
        """
        if cfg.kind != "hull":
            raise ConfigError(f"expected a hull experiment, got kind={cfg.kind}")
        return MonteCarloService._execute(cfg, workers)

    @staticmethod
    def run_lp_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentResult:
        """
        Decide boundedness of max <x, c> s.t. Ax <= 1 per trial and compare the
        bounded frequency with p(n+1, d).
        """
        if cfg.kind != "lp":
            raise ConfigError(f"expected an lp experiment, got kind={cfg.kind}")
        if cfg.cost is not None and not isinstance(cfg.cost, DistributionSpec):
            # fail before any worker starts
            sample_cost_vector(cfg.cost, cfg.d, StreamKey(cfg.master_seed, 0))
        elif isinstance(cfg.cost, DistributionSpec):
            validate_spec(cfg.cost)
        return MonteCarloService._execute(cfg, workers)

    @staticmethod
    def _execute(cfg: ExperimentConfig, workers: int | None) -> ExperimentResult:
        if cfg.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {cfg.trials}")
        validate_spec(cfg.spec)
        workers = workers or settings.THREADS
        logger.info(
            f"{cfg.kind} experiment {cfg.config_hash()}: {cfg.spec.label()}, "
            f"n={cfg.n}, d={cfg.d}, trials={cfg.trials}, seed={cfg.master_seed}, workers={workers}"
        )
        started = time.perf_counter()
        outcomes = _run_trials(cfg, workers)
        runtime = time.perf_counter() - started

        labels = HULL_CLASSES if cfg.kind == "hull" else LP_CLASSES
        counter = Counter(label for label, _ in outcomes)
        counts = {label: counter.get(label, 0) for label in labels}
        tallies = {
            label: MonteCarloService._tally(count, cfg.trials, cfg.confidence)
            for label, count in counts.items()
        }
        if cfg.kind == "hull":
            contains = counts["boundary"] + counts["interior"]
            tallies["contains"] = MonteCarloService._tally(contains, cfg.trials, cfg.confidence)

        flag_counts = Counter(flag for _, flags in outcomes for flag in flags)
        if cfg.kind == "hull":
            diagnostics = {DIMENSION_DEFICIENT: flag_counts.get(DIMENSION_DEFICIENT, 0)}
        elif cfg.debug_sandwich:
            diagnostics = {
                SANDWICH_BOUNDARY: flag_counts.get(SANDWICH_BOUNDARY, 0),
                SANDWICH_VIOLATION: flag_counts.get(SANDWICH_VIOLATION, 0),
            }
        else:
            diagnostics = {}
        if diagnostics.get(SANDWICH_VIOLATION):
            logger.warning(f"{diagnostics[SANDWICH_VIOLATION]} sandwich violations")

        header = ResultHeader(
            version=__version__,
            config_hash=cfg.config_hash(),
            master_seed=cfg.master_seed,
            **describe_sampler(cfg.spec),
        )
        logger.info(f"experiment {header.config_hash} finished in {runtime:.2f}s: {counts}")
        return ExperimentResult(
            header=header,
            config=cfg,
            counts=counts,
            tallies=tallies,
            theory=_theory(cfg.kind, cfg.n, cfg.d),
            diagnostics=diagnostics,
            trial_classes=tuple(label for label, _ in outcomes) if cfg.record_trials else None,
            runtime_seconds=runtime,
        )

    @staticmethod
    def _tally(count: int, trials: int, confidence: float) -> ClassTally:
        lo, hi = wilson_interval(count, trials, confidence)
        return ClassTally(count=count, frequency=count / trials, lo=lo, hi=hi)

    @staticmethod
    def wilson_interval(successes: int, trials: int, confidence: float) -> tuple[float, float]:
        return wilson_interval(successes, trials, confidence)

    @staticmethod
    def enumerate_exact(
        spec: DistributionSpec,
        n: int,
        d: int,
        kind: ExperimentKind = "hull",
        cost: DistributionSpec | Sequence[RationalLike] | None = None,
    ) -> EnumerationResult:
        """
        Exact class probabilities by iterating every assignment of atoms to the
        n x d entries (and to c, when the cost is itself random).
        Verdicts are memoised on the set of rows, which is all they depend on.
        """
        if not spec.is_finite:
            raise FiniteAtomsRequired(f"{spec.kind} has no finite atom list to enumerate")
        validate_spec(spec)
        atoms = spec.finite_atoms()

        cost_law: list[tuple[QVector, Fraction]]
        if kind == "lp":
            if cost is None:
                cost_law = [(_unit_cost(d), Fraction(1))]
            elif isinstance(cost, DistributionSpec):
                if not cost.is_finite:
                    raise FiniteAtomsRequired("a random cost must have finite atoms to enumerate")
                validate_spec(cost)
                cost_law = MonteCarloService._nonzero_cost_law(cost, d)
            else:
                vec = as_vector(cost)
                if len(vec) != d:
                    raise ConfigError(f"cost vector has {len(vec)} entries, expected {d}")
                if not any(vec):
                    raise ZeroCostVector("cost vector must be non-zero")
                cost_law = [(vec, Fraction(1))]
        else:
            cost_law = [((), Fraction(1))]

        states = len(atoms) ** (n * d)
        if kind == "lp" and isinstance(cost, DistributionSpec):
            states *= len(cost.finite_atoms()) ** d
        if states > settings.ENUMERATION_GUARD:
            raise TooLargeToEnumerate(
                f"{states} states exceed the enumeration guard {settings.ENUMERATION_GUARD}"
            )

        row_law = [
            (tuple(v for v, _ in combo), math.prod((w for _, w in combo), start=Fraction(1)))
            for combo in product(atoms, repeat=d)
        ]
        labels = HULL_CLASSES if kind == "hull" else LP_CLASSES
        mass = dict.fromkeys(labels, Fraction(0))
        memo: dict[tuple[frozenset[QVector], QVector], str] = {}
        for c, c_weight in cost_law:
            for rows in product(row_law, repeat=n):
                weight = c_weight * math.prod((w for _, w in rows), start=Fraction(1))
                if not weight:
                    continue
                vectors = [v for v, _ in rows]
                key = (frozenset(vectors), c)
                label = memo.get(key)
                if label is None:
                    label = MonteCarloService._exact_label(kind, vectors, c)
                    memo[key] = label
                mass[label] += weight
        if kind == "hull":
            mass["contains"] = mass["boundary"] + mass["interior"]
        logger.info(f"enumerated {states} states ({len(memo)} distinct row sets) for {spec.label()}")
        return EnumerationResult(
            kind=kind,
            n=n,
            d=d,
            spec=spec,
            states=states,
            probabilities=mass,
            theory=_theory(kind, n, d),
        )

    @staticmethod
    def _exact_label(kind: ExperimentKind, vectors: list[QVector], c: QVector) -> str:
        if kind == "hull":
            return HullService.classify_origin(vectors).origin_class.value.lower()
        inst = LPInstance(A=QMatrix.from_rows(vectors), c=c)
        return LPService.is_bounded(inst).verdict.lower()

    @staticmethod
    def _nonzero_cost_law(cost: DistributionSpec, d: int) -> list[tuple[QVector, Fraction]]:
        """Law of a cost vector resampled until non-zero: conditioned on c != 0."""
        law = [
            (tuple(v for v, _ in combo), math.prod((w for _, w in combo), start=Fraction(1)))
            for combo in product(cost.finite_atoms(), repeat=d)
        ]
        nonzero = [(v, w) for v, w in law if any(v) and w]
        total = sum((w for _, w in nonzero), Fraction(0))
        if not total:
            raise ZeroCostVector("the cost law puts all its mass on the zero vector")
        return [(v, w / total) for v, w in nonzero]

    @staticmethod
    def check_sandwich_bounds(spec: DistributionSpec, n: int, d: int) -> SandwichBounds:
        """P{interior} <= p(n, d) <= P{contains}, compared as exact rationals."""
        result = MonteCarloService.enumerate_exact(spec, n, d, "hull")
        p = result.theory.exact
        return SandwichBounds(
            enumeration=result,
            contains_at_least_p=result.probabilities["contains"] >= p,
            interior_at_most_p=result.probabilities["interior"] <= p,
        )
