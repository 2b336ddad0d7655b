import argparse
from pathlib import Path

from app.cli.deps import dump_json, emit, payload_hash, read_input, write_header
from app.core.errors import EXIT_OK, EXIT_UNBOUNDED
from app.hullgeom import HullService
from app.lpbound import LPService


def _hash_input(command: str, text: str, args: argparse.Namespace) -> str:
    return payload_hash({"command": command, "input": text, "dyadic_bits": args.dyadic_bits})


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    classify = subparsers.add_parser(
        "classify",
        help="classify the origin against the hull of a point set",
        description="Read one point per line ('-' for stdin); print class and certificates as JSON.",
    )
    classify.add_argument("--points", required=True, help="points file, coordinates as p/q")
    classify.add_argument("--dyadic-bits", type=int, default=None, help="accept decimals, rounded")
    classify.add_argument("--out", type=Path, default=None)
    classify.set_defaults(handler=classify_points)

    lp = subparsers.add_parser(
        "lp-check",
        help="decide boundedness of max <x, c> s.t. Ax <= 1",
        description="Exit 0 when bounded, 3 when unbounded.",
    )
    lp.add_argument("--input", required=True, help="instance file ('-' for stdin)")
    lp.add_argument("--format", choices=("json", "csv"), default=None, help="default: by extension")
    lp.add_argument("--dyadic-bits", type=int, default=None)
    lp.add_argument("--debug-sandwich", action="store_true", help="also classify 0 against rows + {-c}")
    lp.add_argument("--out", type=Path, default=None)
    lp.set_defaults(handler=lp_check)


def classify_points(args: argparse.Namespace) -> int:
    """
    Classify the origin.
    """
    text = read_input(args.points)
    write_header(_hash_input("classify", text, args), None)
    points = HullService.parse_points(text, args.dyadic_bits)
    verdict = HullService.classify_origin(points)
    payload = verdict.to_json_dict()
    payload["affine_hull_dim"] = HullService.affine_hull_dim(points)
    payload["dimension_deficient"] = HullService.dimension_deficient(points)
    emit(dump_json(payload), args.out)
    return EXIT_OK


def lp_check(args: argparse.Namespace) -> int:
    """
    Decide LP boundedness.
    """
    text = read_input(args.input)
    fmt = args.format or ("csv" if args.input.lower().endswith(".csv") else "json")
    write_header(_hash_input("lp-check", text, args), None)
    inst = LPService.parse_instance(text, fmt, args.dyadic_bits)
    if args.debug_sandwich:
        report = LPService.sandwich_check(inst)
        verdict = report.boundedness
        payload = verdict.to_json_dict()
        payload["sandwich"] = report.to_json_dict()
    else:
        verdict = LPService.is_bounded(inst)
        payload = verdict.to_json_dict()
    emit(dump_json(payload), args.out)
    return EXIT_OK if verdict.bounded else EXIT_UNBOUNDED
