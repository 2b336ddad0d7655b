"""Options and helpers shared by the sub-command routes."""

import argparse
import hashlib
import json
import secrets
import sys
from pathlib import Path
from typing import Any

from app import __version__
from app.core.config import settings
from app.core.errors import ConfigError
from app.exactq import QVector, as_vector, parse_rational
from app.sampling import DistributionSpec

DIST_CHOICES = ("rademacher", "gaussian", "bg", "discrete")


def add_distribution_options(parser: argparse.ArgumentParser, default: str = "rademacher") -> None:
    group = parser.add_argument_group("entry distribution")
    group.add_argument("--dist", choices=DIST_CHOICES, default=default)
    group.add_argument("--p", help="Bernoulli parameter of the bg law, e.g. 1/10 or 0.1")
    group.add_argument("--precision-bits", type=int, default=None)
    group.add_argument("--normalized", action="store_true", help="scale bg entries to unit variance")
    group.add_argument(
        "--atoms", help="finite law for --dist discrete as value:weight pairs, e.g. '1:1/2,-1:1/2'"
    )
    group.add_argument("--allow-asymmetric", action="store_true")
    group.add_argument("--mean-zero", action="store_true", help="declare an asymmetric law mean-zero")


def add_run_options(parser: argparse.ArgumentParser, trials: int = 10_000) -> None:
    parser.add_argument("--trials", type=int, default=trials)
    parser.add_argument("--seed", type=int, default=None, help="64-bit master seed (random if omitted)")
    parser.add_argument("--confidence", type=float, default=None)
    parser.add_argument("--threads", type=int, default=None, help="worker processes (env ORIGINLAB_THREADS)")
    parser.add_argument("--out", type=Path, default=None, help="write JSON/CSV output here")


def parse_atoms(text: str) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for chunk in text.split(","):
        value, sep, weight = chunk.strip().partition(":")
        if not sep:
            raise ConfigError(f"atom {chunk!r} is not value:weight")
        pairs.append((value.strip(), weight.strip()))
    return pairs


def distribution_from_args(args: argparse.Namespace) -> DistributionSpec:
    data: dict[str, Any] = {}
    if args.precision_bits is not None:
        data["precision_bits"] = args.precision_bits
    if args.dist == "rademacher":
        data["kind"] = "rademacher"
    elif args.dist == "gaussian":
        data["kind"] = "gaussian"
    elif args.dist == "bg":
        if args.p is None:
            raise ConfigError("--dist bg needs --p")
        data.update(kind="bernoulli_gaussian", p=args.p, normalized=args.normalized)
    else:
        if not args.atoms:
            raise ConfigError("--dist discrete needs --atoms")
        asymmetric = args.allow_asymmetric or args.mean_zero
        data.update(
            kind="discrete_general" if asymmetric else "discrete_symmetric",
            atoms=parse_atoms(args.atoms),
            allow_asymmetric=asymmetric,
            declared_mean_zero=args.mean_zero,
        )
    return DistributionSpec.model_validate(data)


def parse_vector(text: str, dyadic_bits: int | None = None) -> QVector:
    return as_vector(parse_rational(t, dyadic_bits) for t in text.replace(",", " ").split())


def resolve_seed(seed: int | None) -> int:
    return secrets.randbits(64) if seed is None else seed


def resolve_workers(threads: int | None) -> int:
    workers = threads if threads is not None else settings.THREADS
    if workers < 1:
        raise ConfigError(f"--threads must be at least 1, got {workers}")
    return workers


def payload_hash(payload: dict[str, Any]) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def write_header(config_hash: str, seed: int | None) -> None:
    shown = "none" if seed is None else str(seed)
    sys.stderr.write(f"# originlab {__version__} config={config_hash} seed={shown}\n")


def emit(text: str, out: Path | None = None) -> None:
    """Write to --out when given, otherwise to stdout."""
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}")
