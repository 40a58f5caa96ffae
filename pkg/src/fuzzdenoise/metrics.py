"""Mean squared error and PSNR between 8-bit grayscale images."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import GrayImage

PEAK = 255


@dataclass(frozen=True)
class PsnrResult:
    """MSE and the PSNR in decibels; ``psnr_db`` is +inf exactly when mse is 0."""

    mse: float
    psnr_db: float

    @property
    def is_identical(self) -> bool:
        return self.mse == 0.0


def psnr(reference: GrayImage, test: GrayImage) -> PsnrResult:
    """PSNR of ``test`` against ``reference`` over raw 8-bit intensities.

    The squared-error sum is accumulated in exact integer arithmetic, so the
    result is bit-stable regardless of summation order or platform.
    """
    if reference.data.shape != test.data.shape:
        raise ValueError(
            f"image dimensions differ: {reference.data.shape} vs {test.data.shape}"
        )
    diff = reference.data.astype(np.int64) - test.data.astype(np.int64)
    sse = int((diff * diff).sum())
    n = reference.width * reference.height
    mse = sse / n
    if sse == 0:
        return PsnrResult(mse=0.0, psnr_db=math.inf)
    return PsnrResult(mse=mse, psnr_db=10.0 * math.log10(PEAK * PEAK / mse))
