"""Command line entry point: ``run``, ``suite``, ``landscape`` and ``inspect``.

Exit codes are 0 on success, 2 for configuration errors and 3 for I/O errors.
"""

import argparse
import logging
import os
import sys
from pathlib import Path

from .runner import (
    OUTPUT_ROOT_ENV,
    ConfigError,
    inspect_manifest,
    landscape_grid,
    load_config,
    run_experiment,
    run_suite,
    write_landscape,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def _seed_range(text):
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return [int(lo)]
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError("empty seed range")
    return list(range(a, b + 1))


def build_parser():
    ap = argparse.ArgumentParser(prog="pixelopt", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one experiment")
    p.add_argument("config")
    p.add_argument("--seed", type=int, help="override the configured seed")
    p.add_argument("--out", help="override the output directory")

    p = sub.add_parser("suite", help="run several seeds and aggregate them")
    p.add_argument("config")
    p.add_argument("--seeds", type=_seed_range, required=True, help="inclusive range a..b")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("landscape", help="metric values over a 2-pixel grid")
    p.add_argument("metric")
    p.add_argument("t1", type=float)
    p.add_argument("t2", type=float)
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--out", help="output prefix (default landscape_<metric>)")

    p = sub.add_parser("inspect", help="re-render the final best of a finished run")
    p.add_argument("manifest")
    p.add_argument("--out")
    return ap


def _landscape_prefix(args):
    if args.out:
        return Path(args.out)
    name = f"landscape_{args.metric}"
    root = os.environ.get(OUTPUT_ROOT_ENV)
    return Path(root) / name if root else Path(name)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            cfg = load_config(args.config)
            if args.seed is not None:
                cfg.seed = args.seed
            m = run_experiment(cfg, args.out)
            print(f"{m['status']}: {m['iterations']} iterations, best {m['final_best_fitness']}")
        elif args.command == "suite":
            cfg = load_config(args.config)
            res = run_suite(cfg, args.seeds, args.out, args.jobs)
            print(f"aggregated {len(args.seeds)} runs at {len(res)} iterations")
        elif args.command == "landscape":
            try:
                grid = landscape_grid(args.metric, (args.t1, args.t2), args.resolution)
            except ValueError as exc:
                raise ConfigError([("landscape", str(exc))]) from exc
            csv_path, png_path = write_landscape(_landscape_prefix(args), grid)
            print(f"wrote {csv_path} and {png_path}")
        elif args.command == "inspect":
            for path in inspect_manifest(args.manifest, args.out):
                print(path)
    except ConfigError as exc:
        for key, msg in exc.problems:
            print(f"config error: {key}: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
