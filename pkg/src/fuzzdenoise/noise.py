"""Seeded salt-and-pepper noise injection with exact corruption counts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import GrayImage


@dataclass(frozen=True)
class NoiseSpec:
    """How much noise to inject and how to reproduce it.

    ``level`` is the exact fraction of pixels to corrupt, ``seed`` drives a
    PCG64 generator, and ``salt_ratio`` is the probability a corrupted pixel
    becomes 255 (salt) rather than 0 (pepper).
    """

    level: float
    seed: int
    salt_ratio: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ValueError(f"level must lie in [0, 1], got {self.level}")
        if not 0.0 <= self.salt_ratio <= 1.0:
            raise ValueError(f"salt_ratio must lie in [0, 1], got {self.salt_ratio}")
        if self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed}")


def inject_sap(img: GrayImage, spec: NoiseSpec) -> GrayImage:
    """Corrupt exactly round(level * width * height) distinct pixels.

    Positions are a prefix of a seeded random permutation (sampling without
    replacement), so the corruption count is exact rather than Bernoulli.
    Each chosen pixel independently becomes 255 with probability
    ``salt_ratio``, else 0.  The draw stream is one permutation followed by
    one uniform per corrupted pixel, from ``numpy.random.PCG64(seed)``; the
    same image and spec always reproduce the same bytes.
    """
    n = img.width * img.height
    k = int(np.floor(spec.level * n + 0.5))
    if k == 0:
        return GrayImage(img.data)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    positions = rng.permutation(n)[:k]
    salty = rng.random(k) < spec.salt_ratio
    flat = img.data.copy().reshape(-1)
    flat[positions] = np.where(salty, 255, 0).astype(np.uint8)
    return GrayImage(flat.reshape(img.height, img.width))
