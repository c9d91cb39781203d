"""Command line front end.

    emdof run <config-file-or-builtin> [options]
    emdof sweep <file|dir|builtin> [...] [options]
    emdof list-builtin
    emdof show <builtin>

Exit codes: 0 success, 2 configuration error, 3 capacity error,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import scenarios
from .errors import ConfigurationError, EmdofError
from .quadrature import DEFAULT_NODE_CAP


def _add_run_options(parser: argparse.ArgumentParser):
    parser.add_argument("--out", default="./out", help="output directory (default ./out)")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="table format (summary is always JSON)",
    )
    parser.add_argument("--threads", type=int, default=1, help="concurrent scenarios")
    parser.add_argument(
        "--fail-fast", action="store_true", help="abort the run on the first error"
    )
    parser.add_argument(
        "--node-cap",
        type=int,
        default=DEFAULT_NODE_CAP,
        help=f"maximum grid nodes per scenario (default {DEFAULT_NODE_CAP})",
    )
    parser.add_argument("--seed", type=int, default=None, help="override scenario seeds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emdof",
        description="Eigenvalue spectra, DoF counts, and patterns of concentration operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the scenarios of one config file or builtin")
    run.add_argument("config", help="path to a JSON config file, or a builtin name")
    _add_run_options(run)

    sweep = sub.add_parser("sweep", help="run many config files, directories, or builtins")
    sweep.add_argument("targets", nargs="+", help="config files, directories, or builtin names")
    _add_run_options(sweep)

    sub.add_parser("list-builtin", help="list builtin scenario bundles")

    show = sub.add_parser("show", help="print a builtin bundle's JSON")
    show.add_argument("name")
    return parser


def _configs_for_target(target: str) -> list[scenarios.ScenarioConfig]:
    if os.path.isdir(target):
        entries = sorted(
            os.path.join(target, f) for f in os.listdir(target) if f.endswith(".json")
        )
        if not entries:
            raise ConfigurationError(f"{target}: directory holds no .json config files")
        configs = []
        for entry in entries:
            configs.extend(scenarios.load_config_file(entry))
        return configs
    if os.path.exists(target):
        return scenarios.load_config_file(target)
    if target in scenarios.list_builtins():
        return scenarios.load_builtin(target)
    raise ConfigurationError(
        f"{target!r} is neither a config file, a directory, nor a builtin "
        f"(builtins: {', '.join(scenarios.list_builtins())})"
    )


def _apply_seed(configs: list[scenarios.ScenarioConfig], seed: int | None):
    if seed is None:
        return configs
    reseeded = []
    for config in configs:
        obj = dict(config.canonical)
        obj["seed"] = seed
        reseeded.append(scenarios.parse_config(obj))
    return reseeded


def _run_targets(targets: list[str], args) -> int:
    configs = []
    for target in targets:
        configs.extend(_configs_for_target(target))
    names = [c.name for c in configs]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ConfigurationError(
            f"duplicate scenario names across targets: {duplicates}; "
            "outputs would overwrite each other"
        )
    configs = _apply_seed(configs, args.seed)
    outcomes = scenarios.run_sweep(
        configs,
        threads=max(1, args.threads),
        fail_fast=args.fail_fast,
        node_cap=args.node_cap,
    )
    exit_code = 0
    for outcome in outcomes:
        if outcome.ok:
            written = scenarios.write_outputs(outcome.result, args.out, fmt=args.format)
            n = outcome.result.spectrum.n
            print(f"{outcome.name}: {n} modes, wrote {len(written)} files")
        else:
            error = outcome.error
            code = error.exit_code if isinstance(error, EmdofError) else 1
            print(f"{outcome.name}: error: {error}", file=sys.stderr)
            if exit_code == 0:
                exit_code = code
    return exit_code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-builtin":
            for name in scenarios.list_builtins():
                print(name)
            return 0
        if args.command == "show":
            print(scenarios.builtin_text(args.name), end="")
            return 0
        if args.command == "run":
            return _run_targets([args.config], args)
        if args.command == "sweep":
            return _run_targets(args.targets, args)
        raise ConfigurationError(f"unknown command {args.command!r}")
    except EmdofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
