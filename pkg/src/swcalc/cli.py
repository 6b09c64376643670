"""Command line entry point: ``swcalc run|list|validate``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import scenario as sc

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swcalc", description="Seiberg-Witten bookkeeping for rational blowdowns.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and print its report")
    run.add_argument("--scenario", required=True, help="built-in scenario name or path to a scenario file")
    run.add_argument("--n", type=int, default=3, help="torus surgery coefficient for '$n' steps (default 3)")
    run.add_argument("--strict-integrality", action="store_true", help="require integral dual coordinates")
    run.add_argument("--sphere-bound", type=int, choices=[0, -2], default=0, help="adjunction bound for spheres")
    run.add_argument("--amended", action="store_true", help="apply the scenario's class amendments")
    run.add_argument("--format", choices=["table", "json"], default="table")
    run.add_argument("--out", help="write the report here instead of stdout")

    sub.add_parser("list", help="list built-in scenarios")

    val = sub.add_parser("validate", help="check a scenario file")
    val.add_argument("path")
    return p


def _run(args) -> int:
    if args.n < 0:
        print("error: --n must be nonnegative", file=sys.stderr)
        return EXIT_ERROR
    source = args.scenario
    if source not in sc.BUILTIN and not Path(source).exists():
        print(f"error: no scenario named or at {source!r}", file=sys.stderr)
        return EXIT_ERROR
    diags = sc.validate(sc.builtin_path(source) if source in sc.BUILTIN else source)
    if diags:
        for d in diags:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_ERROR
    opts = sc.Options(args.n, args.strict_integrality, args.sphere_bound, args.amended)
    report = sc.run(source, opts)
    text = sc.to_json(report) if args.format == "json" else sc.to_table(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if report["errors"]:
        for e in report["errors"]:
            print(f"error: stage {e['stage']} ({e['name']}): {e['error']}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if report["expectations"]["ok"] else EXIT_MISMATCH


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name in sc.list_scenarios():
            print(name)
        return EXIT_OK
    if args.command == "validate":
        diags = sc.validate(args.path)
        if diags:
            for d in diags:
                print(d)
            return EXIT_ERROR
        print("ok")
        return EXIT_OK
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
