import argparse

from app.cli.deps import dump_json, emit, payload_hash, write_header
from app.core.errors import ConfigError
from app.exactq import format_rational
from app.models import parse_probability
from app.wendel import (
    WendelQuery,
    p_exact,
    p_exact_lp,
    p_float,
    window_bounds,
    window_estimate,
)


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "pnd",
        help="Wendel probability p(n, d)",
        description="Print p(n, d), or the smallest n with p(n, d) >= --target.",
    )
    parser.add_argument("--n", type=int)
    parser.add_argument("--d", type=int, required=True)
    parser.add_argument("--exact", action="store_true", help="print the exact rational")
    parser.add_argument("--lp", action="store_true", help="boundedness value p(n+1, d)")
    parser.add_argument("--target", help="threshold such as 1/2 or 0.9")
    parser.set_defaults(handler=pnd)


def pnd(args: argparse.Namespace) -> int:
    """
    Evaluate the Wendel probability.
    """
    write_header(payload_hash({k: v for k, v in vars(args).items() if k != "handler"}), None)
    if args.target is not None:
        try:
            target = parse_probability(args.target)
        except ValueError as e:
            raise ConfigError(str(e))
        n = window_estimate(args.d, target)
        emit(
            dump_json(
                {
                    "d": args.d,
                    "target": format_rational(target),
                    "n": n,
                    "window": list(window_bounds(args.d)),
                }
            )
        )
        return 0
    if args.n is None:
        raise ConfigError("pnd needs --n (or --target)")
    query = WendelQuery(args.n, args.d)
    if args.exact:
        value = p_exact_lp(query.n, query.d) if args.lp else p_exact(query.n, query.d)
        emit(format_rational(value))
    else:
        emit(repr(p_float(query.n + 1 if args.lp else query.n, query.d)))
    return 0
