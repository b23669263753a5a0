"""Command line entry point.

    sodlab <analyze|partition|sod|nccr|hilbert> --config cfg.json [options]
    sodlab sod --preset pfaffian:n=1,h=3

Exit codes: 0 success, 2 configuration/validation error, 3 precondition
failure (the report with the failure context is still emitted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .linprog import InputError
from .partition import PreconditionError
from .report import (SUBCOMMANDS, error_document, parse_config,
                     preset_config, render, run_job)
from .sod import preset


def _parse_preset_spec(spec: str):
    """Parse preset strings like pfaffian:n=1,h=3 | determinantal:n=2,h=3 |
    sl2:3,1 | toric | toric:1,1,-1,-1."""
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name in ("pfaffian", "determinantal"):
        params = {}
        for part in filter(None, (p.strip() for p in rest.split(","))):
            key, _, val = part.partition("=")
            if key.strip() not in ("n", "h") or not val.strip().lstrip("-").isdigit():
                raise InputError(f"bad preset parameter {part!r}")
            params[key.strip()] = int(val)
        if set(params) != {"n", "h"}:
            raise InputError(f"preset {name} needs n=<int>,h=<int>")
        return preset(name, **params)
    if name == "sl2":
        if not rest.strip():
            raise InputError("sl2 preset needs a degree list, e.g. sl2:3 or sl2:1,2")
        degrees = [int(p) for p in rest.split(",")]
        return preset("sl2", degrees=degrees)
    if name == "toric":
        if rest.strip():
            weights = [((int(p),), 1) for p in rest.split(",")]
        else:
            weights = None
        return preset("toric", weights=weights)
    raise InputError(f"unknown preset {name!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sodlab",
        description="Exact combinatorics of windowed ordered decompositions "
                    "for linearized quotient data.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="path to a JSON job configuration")
    parser.add_argument("--preset",
                        help="pfaffian:n=1,h=3 | determinantal:n=1,h=2 | "
                             "sl2:d1,d2,... | toric[:w1,w2,...]")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    args = parser.parse_args(argv)

    cfg = None
    try:
        if (args.config is None) == (args.preset is None):
            raise InputError("provide exactly one of --config or --preset")
        if args.config is not None:
            try:
                raw = json.loads(Path(args.config).read_text())
            except OSError as e:
                raise InputError(f"cannot read config: {e}") from None
            except json.JSONDecodeError as e:
                raise InputError(f"config is not valid JSON: {e}") from None
            cfg = parse_config(raw)
        else:
            cfg = preset_config(_parse_preset_spec(args.preset))
        doc = run_job(args.subcommand, cfg)
        code = 0
    except InputError as e:
        sys.stderr.write(f"sodlab: configuration error: {e}\n")
        return 2
    except PreconditionError as e:
        doc = error_document(args.subcommand, cfg, e)
        code = 3

    payload = render(doc, args.format)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
