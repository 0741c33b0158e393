"""Command-line entry point: ``hyperpr <subcommand> [--spec FILE] ...``.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiments import ExperimentSpec, SpecError, load_spec, run

COMMANDS = {
    "phase-transition": "phase_transition",
    "noise-sweep": "noise_sweep",
    "coding-sweep": "coding_sweep",
    "recover-image": "recover_image",
    "algebra-check": "algebra_check",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperpr", description="Hypercomplex phase retrieval experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spec", type=Path, help="experiment spec (INI)")
        p.add_argument("--seed", type=int, help="master seed (overrides the spec file)")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--trials", type=int, help="trials per cell (overrides the spec file)")
        p.add_argument("--threads", type=int, help="worker threads")
        p.add_argument("--traces", action="store_true", default=None, help="write per-trial traces")
        if name == "recover-image":
            p.add_argument("--image", type=str, help="PPM image or band manifest")
        if name == "algebra-check":
            p.add_argument("--samples", type=int, help="random samples per property")
    return parser


def _spec(args) -> ExperimentSpec:
    kind = COMMANDS[args.command]
    spec = load_spec(args.spec) if args.spec else ExperimentSpec(kind=kind)
    if spec.kind != kind:
        raise SpecError(f"spec describes a {spec.kind} experiment, not {kind}")
    return spec.replace(
        seed=args.seed,
        trials=args.trials,
        threads=args.threads,
        traces=args.traces,
        image=getattr(args, "image", None),
        samples=getattr(args, "samples", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _spec(args)
        result = run(spec)
    except SpecError as exc:
        print(f"hyperpr: {exc}", file=sys.stderr)
        return 2
    if result.report:
        print(result.report)
    else:
        print(result.summary.to_csv(), end="")
    if args.out:
        try:
            result.write(args.out)
        except OSError as exc:
            print(f"hyperpr: cannot write outputs: {exc}", file=sys.stderr)
            return 2
    for v in result.violations:
        print(f"property violated: {v}", file=sys.stderr)
    return 1 if result.violations else 0


if __name__ == "__main__":
    sys.exit(main())
