"""Two-stage adaptive type-2 fuzzy filter for salt-and-pepper noise.

The package bundles the filter itself plus everything needed to evaluate
it: seeded noise injection, a median baseline, PSNR scoring, a multi-trial
benchmark harness, and Friedman / Bonferroni-Dunn rank statistics.
"""

from .bench import (
    BenchRecord,
    default_methods,
    mean_by_cell,
    read_csv,
    run_bench,
    score_matrix,
    trial_seed,
    write_csv,
)
from .detector import (
    DegenerateWindowError,
    DetectorConfig,
    Type2Profile,
    classify,
    compute_means,
    compute_sigma,
    detect_profile,
    membership_matrix,
    thresholds,
)
from .filter import (
    DenoiseStats,
    FilterConfig,
    GoodPixelSet,
    denoise_image,
    denoise_pixel,
    good_pixel_stats,
    weighted_denoise,
)
from .image import GrayImage, PgmParseError, Window, extract_window, read_pgm, write_pgm
from .median import median_filter
from .metrics import PsnrResult, psnr
from .noise import NoiseSpec, inject_sap
from .ranking import (
    FriedmanReport,
    MethodVerdict,
    RankTable,
    SignificanceReport,
    bd_critical_difference,
    bonferroni_dunn_q,
    f_f_from_chi2,
    friedman,
    friedman_chi2,
    rank_rows,
    significance_report,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "DegenerateWindowError",
    "DenoiseStats",
    "DetectorConfig",
    "FilterConfig",
    "FriedmanReport",
    "GoodPixelSet",
    "GrayImage",
    "MethodVerdict",
    "NoiseSpec",
    "PgmParseError",
    "PsnrResult",
    "RankTable",
    "SignificanceReport",
    "Type2Profile",
    "Window",
    "bd_critical_difference",
    "bonferroni_dunn_q",
    "classify",
    "compute_means",
    "compute_sigma",
    "default_methods",
    "denoise_image",
    "denoise_pixel",
    "detect_profile",
    "extract_window",
    "f_f_from_chi2",
    "friedman",
    "friedman_chi2",
    "good_pixel_stats",
    "inject_sap",
    "mean_by_cell",
    "median_filter",
    "membership_matrix",
    "psnr",
    "rank_rows",
    "read_csv",
    "read_pgm",
    "run_bench",
    "score_matrix",
    "significance_report",
    "thresholds",
    "trial_seed",
    "weighted_denoise",
    "write_csv",
    "write_pgm",
]
