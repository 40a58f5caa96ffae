"""Command-line front end.

One executable with subcommands ``add-noise``, ``denoise``, ``median``,
``psnr``, ``bench``, and ``ranktest``.  Exit codes: 0 on success, 1 on a
usage or argument-validation error (usage text goes to stderr), 2 on an
I/O or data error.  Numeric output is printed with 4 decimal places.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from .bench import default_methods, read_csv, run_bench, score_matrix, write_csv
from .detector import DetectorConfig, THRESHOLD_MODES
from .filter import FilterConfig, denoise_image
from .image import PgmParseError, read_pgm, write_pgm
from .median import median_filter
from .metrics import psnr
from .noise import NoiseSpec, inject_sap
from .ranking import f_f_from_chi2, friedman_chi2, rank_rows, significance_report

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"value {value} must lie in [0, 1]")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"value {value} must be at least 1")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"value {value} must be non-negative")
    return value


def _scale(text: str) -> float:
    value = float(text)
    if not value > 1.0:
        raise argparse.ArgumentTypeError(f"scale {value} must exceed 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"value {value} must be positive")
    return value


def _levels(text: str) -> list[float]:
    return [_fraction(part) for part in text.split(",") if part]


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return f"{value:.4f}"


def _thread_count(args) -> int:
    """FUZZDENOISE_THREADS overrides --threads; default is the CPU count."""
    env = os.environ.get("FUZZDENOISE_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    if args.threads is not None:
        return args.threads
    return os.cpu_count() or 1


def _filter_config(args) -> FilterConfig:
    return FilterConfig(
        detector=DetectorConfig(
            scale_s=args.scale, epsilon=args.epsilon, threshold_mode=args.mode
        ),
        h_max=args.hmax,
        rho_min=args.rho_min,
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="fuzzdenoise", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("add-noise", parents=[], help="inject salt-and-pepper noise")
    p.add_argument("--in", dest="src", required=True, metavar="PGM")
    p.add_argument("--out", dest="dst", required=True, metavar="PGM")
    p.add_argument("--level", type=_fraction, required=True, help="fraction of pixels in [0, 1]")
    p.add_argument("--seed", type=_non_negative_int, required=True)
    p.add_argument("--salt-ratio", type=_fraction, default=0.5)

    p = sub.add_parser("denoise", help="run the two-stage fuzzy filter")
    p.add_argument("--in", dest="src", required=True, metavar="PGM")
    p.add_argument("--out", dest="dst", required=True, metavar="PGM")
    p.add_argument("--mode", choices=THRESHOLD_MODES, default="relaxed")
    p.add_argument("--scale", type=_scale, default=2.0)
    p.add_argument("--epsilon", type=_positive_float, default=1e-4)
    p.add_argument("--hmax", type=_positive_int, default=10)
    p.add_argument("--rho-min", dest="rho_min", type=_positive_int, default=1)
    p.add_argument("--stats", action="store_true", help="print per-path pixel counters")

    p = sub.add_parser("median", help="run the median baseline")
    p.add_argument("--in", dest="src", required=True, metavar="PGM")
    p.add_argument("--out", dest="dst", required=True, metavar="PGM")
    p.add_argument("--radius", type=_positive_int, default=1)

    p = sub.add_parser("psnr", help="score a test image against a reference")
    p.add_argument("--ref", required=True, metavar="PGM")
    p.add_argument("--test", required=True, metavar="PGM")

    p = sub.add_parser("bench", help="run the benchmark sweep and write a CSV")
    p.add_argument("--images", required=True, metavar="DIR", help="directory of PGM files")
    p.add_argument("--levels", type=_levels, default=[0.2, 0.5, 0.8], metavar="L1,L2,..")
    p.add_argument("--trials", type=_positive_int, default=10)
    p.add_argument("--methods", default="proposed,median", metavar="NAME,NAME")
    p.add_argument("--seed", type=_non_negative_int, default=7)
    p.add_argument("--out", dest="dst", required=True, metavar="CSV")
    p.add_argument("--mode", choices=THRESHOLD_MODES, default="relaxed")
    p.add_argument("--scale", type=_scale, default=2.0)
    p.add_argument("--epsilon", type=_positive_float, default=1e-4)
    p.add_argument("--hmax", type=_positive_int, default=10)
    p.add_argument("--rho-min", dest="rho_min", type=_positive_int, default=1)
    p.add_argument("--radius", type=_positive_int, default=1, help="median window radius")
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="worker threads (default: FUZZDENOISE_THREADS or CPU count)")

    p = sub.add_parser("ranktest", help="rank a benchmark CSV and test significance")
    p.add_argument("--csv", required=True, metavar="CSV")
    p.add_argument("--alpha", type=_positive_float, default=0.1)
    p.add_argument("--metric", choices=("psnr", "seconds"), default="psnr")
    p.add_argument("--q", dest="q_alpha", type=_positive_float, default=None,
                   help="explicit critical value; overrides the built-in quantile")
    return parser


def _cmd_add_noise(args) -> int:
    img = read_pgm(args.src)
    spec = NoiseSpec(level=args.level, seed=args.seed, salt_ratio=args.salt_ratio)
    write_pgm(inject_sap(img, spec), args.dst)
    print(f"wrote {args.dst}")
    return 0


def _cmd_denoise(args) -> int:
    img = read_pgm(args.src)
    cfg = _filter_config(args)
    restored, stats = denoise_image(img, cfg, return_stats=True)
    write_pgm(restored, args.dst)
    print(f"wrote {args.dst}")
    if args.stats:
        for name in (
            "extreme_pixels", "retained", "uniform_window", "weighted", "good_mean",
            "fallback_window", "fallback_global", "window_growths", "max_half_size",
        ):
            print(f"{name}={getattr(stats, name)}")
    return 0


def _cmd_median(args) -> int:
    img = read_pgm(args.src)
    write_pgm(median_filter(img, args.radius), args.dst)
    print(f"wrote {args.dst}")
    return 0


def _cmd_psnr(args) -> int:
    result = psnr(read_pgm(args.ref), read_pgm(args.test))
    print(f"mse={_fmt(result.mse)}")
    print(f"psnr_db={_fmt(result.psnr_db)}")
    return 0


def _cmd_bench(args) -> int:
    directory = Path(args.images)
    if not directory.is_dir():
        raise OSError(f"{directory} is not a directory")
    method_names = [name for name in args.methods.split(",") if name]
    if not method_names:
        raise ValueError("method list must not be empty")
    registry = default_methods(_filter_config(args), median_radius=args.radius)
    unknown = [name for name in method_names if name not in registry]
    if unknown:
        raise ValueError(f"unknown methods {unknown}; available: {sorted(registry)}")
    methods = {name: registry[name] for name in method_names}

    images = []
    for path in sorted(directory.glob("*.pgm")):
        try:
            images.append((path.stem, read_pgm(path)))
        except (OSError, PgmParseError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
    if not images:
        raise ValueError(f"no readable PGM images in {directory}")

    records = run_bench(
        images, args.levels, args.trials, methods, args.seed, threads=_thread_count(args)
    )
    write_csv(records, args.dst)
    print(f"wrote {args.dst} ({len(records)} records)")
    labels, method_cols, matrix = score_matrix(records)
    print(f"{'dataset':<24}" + "".join(f"{m:>14}" for m in method_cols))
    for label, row in zip(labels, matrix):
        print(f"{label:<24}" + "".join(f"{_fmt(v):>14}" for v in row))
    return 0


def _cmd_ranktest(args) -> int:
    records = read_csv(args.csv)
    if not records:
        raise ValueError(f"{args.csv} holds no records")
    metric = "psnr_db" if args.metric == "psnr" else "seconds"
    labels, methods, matrix = score_matrix(records, metric)
    table = rank_rows(
        matrix, higher_is_better=(metric == "psnr_db"), methods=methods, datasets=labels
    )
    chi2 = friedman_chi2(table)
    sig = significance_report(table, alpha=args.alpha, q_alpha=args.q_alpha)

    print(f"{'dataset':<24}" + "".join(f"{m:>14}" for m in table.methods))
    for label, row in zip(table.datasets, table.ranks):
        print(f"{label:<24}" + "".join(f"{v:>14.4f}" for v in row))
    print(f"{'average rank':<24}" + "".join(f"{v:>14.4f}" for v in table.avg_rank))
    print(f"chi2={_fmt(chi2)}")
    m, l = table.n_datasets, table.n_methods
    try:
        f_f = f_f_from_chi2(chi2, m, l)
        print(f"f_f={_fmt(f_f)} (dof {l - 1}, {(l - 1) * (m - 1)})")
    except ValueError:
        print("f_f=undefined (chi2 at its maximum: rankings perfectly consistent)")
    print(f"q_alpha={_fmt(sig.q_alpha)}")
    print(f"cd={_fmt(sig.cd)}")
    print(f"best={sig.best_method}")
    for verdict in sig.verdicts:
        if verdict.method == sig.best_method:
            continue
        state = "different" if verdict.different else "not different"
        print(
            f"{verdict.method}: avg_rank={_fmt(verdict.avg_rank)} "
            f"gap={_fmt(verdict.rank_gap)} -> {state}"
        )
    return 0


_COMMANDS = {
    "add-noise": _cmd_add_noise,
    "denoise": _cmd_denoise,
    "median": _cmd_median,
    "psnr": _cmd_psnr,
    "bench": _cmd_bench,
    "ranktest": _cmd_ranktest,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, PgmParseError, ValueError) as exc:
        print(f"fuzzdenoise {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
