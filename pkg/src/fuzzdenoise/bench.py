"""Benchmark protocol: inject, denoise, score, and aggregate over trials.

Every (image, noise level, trial) cell gets its own seed derived from the
base seed by a stable hash, so adding images or methods never perturbs the
noise realizations of existing cells, and the PSNR column reproduces
bit-exactly across runs.  Wall times are measured around the denoise call
only and carry no reproducibility promise.
"""

from __future__ import annotations

import csv
import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .filter import FilterConfig, denoise_image
from .image import GrayImage
from .median import median_filter
from .metrics import psnr
from .noise import NoiseSpec, inject_sap

CSV_HEADER = ("image", "level", "trial", "method", "psnr_db", "seconds", "seed")


@dataclass(frozen=True)
class BenchRecord:
    image: str
    level: float
    trial: int
    method: str
    psnr_db: float
    seconds: float
    seed: int

    def sort_key(self):
        return (self.image, self.level, self.trial, self.method)


def trial_seed(base_seed: int, image_name: str, level: float, trial: int) -> int:
    """Stable 64-bit seed for one benchmark cell.

    First 8 bytes (big-endian) of SHA-256 over
    ``"{base_seed}|{image_name}|{repr(level)}|{trial}"``; the float repr is
    the shortest round-trip form, so the rule is platform independent.
    """
    msg = f"{base_seed}|{image_name}|{float(level)!r}|{trial}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(msg).digest()[:8], "big")


def default_methods(
    cfg: FilterConfig | None = None, median_radius: int = 1
) -> dict[str, Callable[[GrayImage], GrayImage]]:
    """The stock method registry: the two-stage fuzzy filter and the median."""
    cfg = cfg or FilterConfig()
    return {
        "proposed": lambda img: denoise_image(img, cfg),
        "median": lambda img: median_filter(img, median_radius),
    }


def run_bench(
    images: Sequence[tuple[str, GrayImage]],
    levels: Sequence[float],
    trials: int,
    methods: Mapping[str, Callable[[GrayImage], GrayImage]],
    base_seed: int,
    threads: int = 1,
) -> list[BenchRecord]:
    """Run every method on every (image, level, trial) cell.

    Returns records in canonical (image, level, trial, method) order no
    matter how many worker threads raced to produce them.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if not methods:
        raise ValueError("method list must not be empty")
    for level in levels:
        if not 0.0 <= level <= 1.0:
            raise ValueError(f"noise level must lie in [0, 1], got {level}")
    names = [name for name, _ in images]
    if len(set(names)) != len(names):
        raise ValueError("image names must be unique")

    jobs = [
        (name, img, float(level), trial)
        for name, img in images
        for level in levels
        for trial in range(trials)
    ]

    def run_cell(job) -> list[BenchRecord]:
        name, img, level, trial = job
        seed = trial_seed(base_seed, name, level, trial)
        noisy = inject_sap(img, NoiseSpec(level=level, seed=seed))
        rows = []
        for method_name, fn in methods.items():
            t0 = time.perf_counter()
            restored = fn(noisy)
            seconds = time.perf_counter() - t0
            rows.append(
                BenchRecord(
                    image=name,
                    level=level,
                    trial=trial,
                    method=method_name,
                    psnr_db=psnr(img, restored).psnr_db,
                    seconds=seconds,
                    seed=seed,
                )
            )
        return rows

    records: list[BenchRecord] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for rows in pool.map(run_cell, jobs):
                records.extend(rows)
    else:
        for job in jobs:
            records.extend(run_cell(job))
    records.sort(key=BenchRecord.sort_key)
    return records


def write_csv(records: Sequence[BenchRecord], path) -> None:
    """Write records with the canonical header; floats keep full precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in sorted(records, key=BenchRecord.sort_key):
            writer.writerow(
                [r.image, repr(r.level), r.trial, r.method, repr(r.psnr_db),
                 repr(r.seconds), r.seed]
            )


def read_csv(path) -> list[BenchRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader, ()))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        records = []
        for row in reader:
            if not row:
                continue
            image, level, trial, method, psnr_db, seconds, seed = row
            records.append(
                BenchRecord(
                    image=image,
                    level=float(level),
                    trial=int(trial),
                    method=method,
                    psnr_db=float(psnr_db),
                    seconds=float(seconds),
                    seed=int(seed),
                )
            )
    return records


def mean_by_cell(
    records: Sequence[BenchRecord], value: str = "psnr_db"
) -> dict[tuple[str, float, str], float]:
    """Average a record field over trials, keyed by (image, level, method)."""
    sums: dict[tuple[str, float, str], list[float]] = {}
    for r in records:
        sums.setdefault((r.image, r.level, r.method), []).append(getattr(r, value))
    return {key: sum(vals) / len(vals) for key, vals in sums.items()}


def score_matrix(
    records: Sequence[BenchRecord], metric: str = "psnr_db"
) -> tuple[list[str], list[str], np.ndarray]:
    """Datasets x methods matrix of trial-averaged scores.

    Datasets are (image, level) pairs labeled ``image:level``.  Raises when
    any method is missing from any dataset, or a mean is not finite.
    """
    means = mean_by_cell(records, metric)
    datasets = sorted({(r.image, r.level) for r in records})
    methods = sorted({r.method for r in records})
    matrix = np.empty((len(datasets), len(methods)))
    for i, (image, level) in enumerate(datasets):
        for j, method in enumerate(methods):
            key = (image, level, method)
            if key not in means:
                raise ValueError(f"no records for {key}")
            matrix[i, j] = means[key]
    if not np.isfinite(matrix).all():
        raise ValueError("score matrix contains non-finite values")
    labels = [f"{image}:{level:g}" for image, level in datasets]
    return labels, methods, matrix


def check_monotone_in_level(records: Sequence[BenchRecord]) -> list[tuple[str, str]]:
    """(image, method) pairs whose mean PSNR fails to fall strictly as noise rises."""
    means = mean_by_cell(records)
    images = sorted({r.image for r in records})
    methods = sorted({r.method for r in records})
    levels = sorted({r.level for r in records})
    offenders = []
    for image in images:
        for method in methods:
            series = [means[(image, level, method)] for level in levels]
            if any(a <= b for a, b in zip(series, series[1:])):
                offenders.append((image, method))
    return offenders
