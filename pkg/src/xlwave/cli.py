"""Command-line driver: spectrum / jaccard-map / beamtrain experiments to CSV."""

from __future__ import annotations

import argparse
import sys

from .experiments import (
    ConfigError,
    cmd_beamtrain,
    cmd_jaccard_map,
    cmd_spectrum,
    load_config,
    with_seed,
)

_COMMANDS = {
    "spectrum": cmd_spectrum,
    "jaccard-map": cmd_jaccard_map,
    "beamtrain": cmd_beamtrain,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xlwave",
        description="Near-field XL-array wave-number experiments (CSV output).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="INI config file (defaults used if omitted)")
        p.add_argument("--out", help="output CSV path (overrides [output] path)")
        p.add_argument("--seed", type=int, help="master seed (overrides [training] seed)")
        p.add_argument("--threads", type=int, default=1, help="worker processes")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        exp = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed must be a non-negative integer")
            exp = with_seed(exp, args.seed)
        out_path = args.out or exp.out_path
        if not out_path:
            raise ConfigError("no output path: pass --out or set [output] path")
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        _COMMANDS[args.command](exp, out_path, args.threads)
    except ConfigError as exc:
        print(f"xlwave: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"xlwave: cannot write output ({exc})", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
