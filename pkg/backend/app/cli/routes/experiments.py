import argparse
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app.cli.deps import (
    add_distribution_options,
    add_run_options,
    distribution_from_args,
    dump_json,
    emit,
    parse_vector,
    payload_hash,
    read_input,
    resolve_seed,
    resolve_workers,
    write_header,
)
from app.core.errors import ConfigError
from app.montecarlo import (
    ExperimentConfig,
    MonteCarloService,
    PresetService,
    TableRow,
    table_csv,
    trials_csv,
)
from app.sampling import DistributionSpec
from app.wendel import window_bounds


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"expected a comma separated list of integers, got {text!r}")


def _cost_from_args(args: argparse.Namespace, spec: DistributionSpec) -> Any:
    if args.cost is None:
        return None
    if args.cost == "random":
        return spec
    return parse_vector(args.cost, args.dyadic_bits)


def _preset_header(command: str, args: argparse.Namespace, spec: DistributionSpec, seed: int) -> None:
    payload = {k: v for k, v in vars(args).items() if k not in ("handler", "out", "threads")}
    payload.update(command=command, seed=seed, spec=spec.to_json_dict())
    write_header(payload_hash(payload), seed)


def _emit_table(report: BaseModel, rows: list[TableRow], args: argparse.Namespace) -> None:
    if args.format == "json":
        emit(dump_json(report.model_dump(mode="json")), args.out)
    else:
        emit(table_csv(rows), args.out)


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    simulate = subparsers.add_parser(
        "simulate",
        help="Monte Carlo hull or LP experiment",
        description="Run from flags, or from --config (an experiment config or a previous result).",
    )
    simulate.add_argument("--config", default=None, help="JSON config or earlier result")
    simulate.add_argument("--kind", choices=("hull", "lp"), default="hull")
    simulate.add_argument("--n", type=int)
    simulate.add_argument("--d", type=int)
    simulate.add_argument("--cost", help="LP cost as p/q entries, or 'random' to draw it like a row")
    simulate.add_argument("--dyadic-bits", type=int, default=None)
    simulate.add_argument("--debug-sandwich", action="store_true")
    simulate.add_argument("--audit", type=Path, default=None, help="per-trial class CSV")
    add_distribution_options(simulate)
    add_run_options(simulate)
    simulate.set_defaults(handler=simulate_experiment)

    enumerate_ = subparsers.add_parser(
        "enumerate",
        help="exact class probabilities of a finite-atom law",
        description="Sum over every atom assignment; prints exact rationals as JSON.",
    )
    enumerate_.add_argument("--kind", choices=("hull", "lp"), default="hull")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--d", type=int, required=True)
    enumerate_.add_argument("--cost", help="LP cost as p/q entries, or 'random'")
    enumerate_.add_argument("--dyadic-bits", type=int, default=None)
    enumerate_.add_argument(
        "--sandwich", action="store_true", help="compare P{interior} <= p(n,d) <= P{contains}"
    )
    enumerate_.add_argument("--out", type=Path, default=None)
    add_distribution_options(enumerate_)
    enumerate_.set_defaults(handler=enumerate_exact)

    sweep = subparsers.add_parser(
        "sweep",
        help="containment frequency across n at fixed d",
        description="Rows x=n; the n range defaults to 2d +/- 3 sqrt(d).",
    )
    sweep.add_argument("--d", type=int, required=True)
    sweep.add_argument("--n-min", type=int, default=None)
    sweep.add_argument("--n-max", type=int, default=None)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    add_distribution_options(sweep)
    add_run_options(sweep)
    sweep.set_defaults(handler=sweep_n)

    decay = subparsers.add_parser(
        "decay",
        help="boundary frequency at n = 2d across d",
        description="Needs a finite-atom law; fits the slope of log(frequency) against d.",
    )
    decay.add_argument("--d-list", required=True, help="e.g. 2,4,6,8")
    decay.add_argument("--format", choices=("csv", "json"), default="csv")
    add_distribution_options(decay)
    add_run_options(decay)
    decay.set_defaults(handler=boundary_decay)

    sparse = subparsers.add_parser(
        "sparse",
        help="containment frequency of sparse entries across p",
        description="Entries b*xi with b ~ Bernoulli(p); xi Gaussian or Rademacher.",
    )
    sparse.add_argument("--d", type=int, required=True)
    sparse.add_argument("--n", type=int, required=True)
    sparse.add_argument("--p-grid", required=True, help="e.g. 0.05,0.1,1/4,1")
    sparse.add_argument("--base", choices=("gaussian", "rademacher"), default="gaussian")
    sparse.add_argument("--normalized", action="store_true")
    sparse.add_argument("--format", choices=("csv", "json"), default="csv")
    add_run_options(sparse)
    sparse.set_defaults(handler=sparse_threshold)

    asym = subparsers.add_parser(
        "asym",
        help="containment under a mean-zero law that need not be symmetric",
        description="Pass --atoms with --mean-zero for an asymmetric law.",
    )
    asym.add_argument("--d", type=int, required=True)
    asym.add_argument("--n", type=int, required=True)
    add_distribution_options(asym, default="discrete")
    add_run_options(asym)
    asym.set_defaults(handler=asymmetry)


def _load_config(path: str) -> ExperimentConfig:
    try:
        data = json.loads(read_input(path))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not JSON: {e}")
    if isinstance(data, dict) and "config" in data and "header" in data:
        data = data["config"]
    return ExperimentConfig.model_validate(data)


def simulate_experiment(args: argparse.Namespace) -> int:
    """
    Run one Monte Carlo experiment and print the result JSON.
    """
    if args.config is not None:
        cfg = _load_config(args.config)
        if args.audit is not None and not cfg.record_trials:
            cfg = cfg.model_copy(update={"record_trials": True})
    else:
        if args.n is None or args.d is None:
            raise ConfigError("simulate needs --n and --d (or --config)")
        spec = distribution_from_args(args)
        data: dict[str, Any] = {
            "kind": args.kind,
            "spec": spec,
            "n": args.n,
            "d": args.d,
            "trials": args.trials,
            "master_seed": resolve_seed(args.seed),
            "cost": _cost_from_args(args, spec),
            "debug_sandwich": args.debug_sandwich,
            "record_trials": args.audit is not None,
        }
        if args.confidence is not None:
            data["confidence"] = args.confidence
        cfg = ExperimentConfig.model_validate(data)
    write_header(cfg.config_hash(), cfg.master_seed)
    result = MonteCarloService.run_experiment(cfg, resolve_workers(args.threads))
    emit(result.to_json(), args.out)
    if args.audit is not None:
        args.audit.write_text(trials_csv(result))
    return 0


def enumerate_exact(args: argparse.Namespace) -> int:
    """
    Enumerate a finite-atom law exactly.
    """
    spec = distribution_from_args(args)
    cost = _cost_from_args(args, spec)
    payload = {k: v for k, v in vars(args).items() if k not in ("handler", "out")}
    payload["spec"] = spec.to_json_dict()
    write_header(payload_hash(payload), None)
    if args.sandwich:
        if args.kind != "hull":
            raise ConfigError("--sandwich compares hull classes; use --kind hull")
        bounds = MonteCarloService.check_sandwich_bounds(spec, args.n, args.d)
        out = bounds.model_dump(mode="json", exclude_none=True)
        out["holds"] = bounds.holds
        emit(dump_json(out), args.out)
    else:
        result = MonteCarloService.enumerate_exact(spec, args.n, args.d, args.kind, cost)
        emit(dump_json(result.to_json_dict()), args.out)
    return 0


def sweep_n(args: argparse.Namespace) -> int:
    """
    Sweep n across the transition window.
    """
    spec = distribution_from_args(args)
    seed = resolve_seed(args.seed)
    lo, hi = window_bounds(args.d)
    n_min = args.n_min if args.n_min is not None else lo
    n_max = args.n_max if args.n_max is not None else hi
    _preset_header("sweep", args, spec, seed)
    report = PresetService.sweep(
        args.d,
        range(n_min, n_max + 1),
        spec,
        args.trials,
        seed,
        args.confidence,
        resolve_workers(args.threads),
    )
    _emit_table(report, report.rows, args)
    return 0


def boundary_decay(args: argparse.Namespace) -> int:
    """
    Boundary-class decay at n = 2d.
    """
    spec = distribution_from_args(args)
    seed = resolve_seed(args.seed)
    _preset_header("decay", args, spec, seed)
    report = PresetService.boundary_decay(
        _int_list(args.d_list),
        spec,
        args.trials,
        seed,
        args.confidence,
        resolve_workers(args.threads),
    )
    _emit_table(report, report.rows, args)
    return 0


def sparse_threshold(args: argparse.Namespace) -> int:
    """
    Sparse entries across a grid of p.
    """
    seed = resolve_seed(args.seed)
    grid = args.p_grid.replace(",", " ").split()
    payload = {k: v for k, v in vars(args).items() if k not in ("handler", "out", "threads")}
    payload.update(command="sparse", seed=seed)
    write_header(payload_hash(payload), seed)
    report = PresetService.sparse_threshold_experiment(
        args.d,
        args.n,
        grid,
        args.trials,
        seed,
        base=args.base,
        normalized=args.normalized,
        confidence=args.confidence,
        workers=resolve_workers(args.threads),
    )
    _emit_table(report, report.rows, args)
    return 0


def asymmetry(args: argparse.Namespace) -> int:
    """
    Mean-zero asymmetric probe.
    """
    spec = distribution_from_args(args)
    seed = resolve_seed(args.seed)
    _preset_header("asym", args, spec, seed)
    report = PresetService.asymmetry_experiment(
        args.d,
        args.n,
        spec,
        args.trials,
        seed,
        args.confidence,
        resolve_workers(args.threads),
    )
    emit(dump_json(report.model_dump(mode="json")), args.out)
    return 0
