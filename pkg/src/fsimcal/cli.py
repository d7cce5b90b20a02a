"""Command-line entry point.

Subcommands: calibrate, sweep, crlb-scan, alpha-scan, confusion-check,
emit-figures.  All experiment settings live in a JSON config file; the
flags --seed/--replicates/--out/--exact override the corresponding config
fields and --jobs controls replicate-level parallelism.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

from .harness import FIGURE_IDS, ExperimentConfig, emit_figure_data, run_mode

_SUBCOMMAND_MODES = {
    "calibrate": ("calibrate",),
    "sweep": ("sweep-depth", "sweep-shots"),
    "crlb-scan": ("crlb-scan",),
    "alpha-scan": ("alpha-scan",),
    "confusion-check": ("confusion-check",),
}

_FIGURE_SOURCES = {
    "mse-vs-depth": "sweep_records.json",
    "mse-vs-shots": "sweep_records.json",
    "variance-vs-depth": "sweep_records.json",
    "crlb-vs-depth": "crlb_scan.json",
    "fidelity-vs-depth": "alpha_scan.json",
}


def _add_run_flags(sub):
    sub.add_argument("--config", required=True, help="path to the JSON experiment config")
    sub.add_argument("--seed", type=int, default=None, help="override the noise seed")
    sub.add_argument("--replicates", type=int, default=None, help="override the replicate count")
    sub.add_argument("--out", default=None, help="override the output directory")
    sub.add_argument("--exact", action="store_true", help="noise-free analytic mode")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes for replicates")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsimcal", description="FsimGate calibration experiments")
    subs = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMAND_MODES:
        _add_run_flags(subs.add_parser(name))
    fig = subs.add_parser("emit-figures")
    fig.add_argument("--records", required=True, help="directory holding a previous run's outputs")
    fig.add_argument("--figure", required=True, choices=FIGURE_IDS)
    fig.add_argument("--out", required=True, help="directory for the figure CSV")
    return parser


def _load_config(args) -> ExperimentConfig:
    config = ExperimentConfig.from_json_file(args.config)
    if config.mode not in _SUBCOMMAND_MODES[args.command]:
        raise SystemExit(f"config mode {config.mode!r} does not match subcommand {args.command!r}")
    noise = config.noise
    if args.seed is not None:
        noise = dataclasses.replace(noise, seed=args.seed)
    if args.exact:
        noise = dataclasses.replace(noise, exact=True)
    config = dataclasses.replace(config, noise=noise)
    if args.replicates is not None:
        config = dataclasses.replace(config, replicates=args.replicates)
    if args.out is not None:
        config = dataclasses.replace(config, output_dir=args.out)
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "emit-figures":
        source_path = os.path.join(args.records, _FIGURE_SOURCES[args.figure])
        with open(source_path, encoding="utf-8") as fh:
            source = json.load(fh)
        path = emit_figure_data(source, args.figure, args.out)
        print(f"wrote {path}")
        return 0
    config = _load_config(args)
    t0 = time.perf_counter()
    paths = run_mode(config, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    print(f"done in {elapsed:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
