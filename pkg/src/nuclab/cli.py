"""Command-line front end.

Subcommands select which pipeline stages run; ``all`` (the default) also
emits the published-value deviation report.  Any configuration field can be
overridden on the command line with ``--key=value``; dedicated flags
(``--out``, ``--variant``) win over both the config file and key overrides,
and the NUCLAB_OUT environment variable is the output-directory fallback.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import replace

from .config import RunConfig, apply_overrides, load_config_file
from .errors import ConfigError
from .report import COMMANDS, EXIT_CONFIG, run_pipeline

log = logging.getLogger("nuclab")

_OVERRIDE_RE = re.compile(r"^--([A-Za-z_][A-Za-z0-9_]*)=(.*)$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nuclab",
        description=(
            "Tilted sine-Gordon false-vacuum toolkit: locates vacua, checks "
            "slow-roll and negative-pressure conditions, evaluates tunneling "
            "amplitudes and nucleation rates, evolves the k-essence offset, "
            "and reconciles published values in a deviation report."
        ),
        epilog="Any configuration key can be overridden with --key=value.",
    )
    parser.add_argument(
        "command",
        nargs="?",
        default="all",
        choices=COMMANDS,
        help="pipeline stage to run (default: all)",
    )
    parser.add_argument("--config", metavar="PATH", help="flat key = value configuration file")
    parser.add_argument("--out", metavar="DIR", help="output directory (overrides NUCLAB_OUT)")
    parser.add_argument(
        "--variant",
        choices=("exact", "paper"),
        help="decay-exponent variant for the k-essence offset ODE",
    )
    return parser


def parse_override_args(extra: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for arg in extra:
        match = _OVERRIDE_RE.match(arg)
        if match is None:
            raise ConfigError(f"unrecognized argument {arg!r}; overrides look like --key=value")
        overrides[match.group(1)] = match.group(2)
    return overrides


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the configuration-error code
        return EXIT_CONFIG if exc.code else 0

    try:
        config = load_config_file(args.config) if args.config else RunConfig()
        config = apply_overrides(config, parse_override_args(extra))
        if args.variant:
            config = replace(config, exponent_variant=args.variant)
        if args.out:
            config = replace(config, out_dir=args.out)
    except ConfigError as exc:
        log.error("config: %s", exc)
        return EXIT_CONFIG

    return run_pipeline(config, command=args.command)
