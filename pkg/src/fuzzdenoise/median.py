"""Plain median filter, the classical salt-and-pepper baseline."""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image import GrayImage

_CHUNK_PIXELS = 1_000_000


def median_filter(img: GrayImage, radius: int = 1) -> GrayImage:
    """Replace every pixel by the median of its (2*radius+1)**2 neighborhood.

    Borders use the same mirror reflection as the fuzzy filter so the two
    methods see identical neighborhoods.
    """
    if radius < 1:
        raise ValueError(f"radius must be at least 1, got {radius}")
    cap = min(img.width, img.height) - 1
    if radius > cap:
        raise ValueError(
            f"radius {radius} exceeds the reflection limit {cap} "
            f"for a {img.width}x{img.height} image"
        )
    k = 2 * radius + 1
    padded = np.pad(img.data, radius, mode="reflect")
    view = sliding_window_view(padded, (k, k))
    out = np.empty_like(img.data)
    rows_per_chunk = max(1, _CHUNK_PIXELS // (img.width * k * k))
    for r0 in range(0, img.height, rows_per_chunk):
        r1 = min(r0 + rows_per_chunk, img.height)
        block = view[r0:r1].reshape(r1 - r0, img.width, k * k)
        out[r0:r1] = np.median(block, axis=-1).astype(np.uint8)
    return GrayImage(out)
