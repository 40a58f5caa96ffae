"""Shared fixtures and deterministic hypothesis settings."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fuzzdenoise import GrayImage

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def make_image(rng: np.random.Generator, height: int, width: int, lo: int = 0, hi: int = 256) -> GrayImage:
    return GrayImage(rng.integers(lo, hi, size=(height, width)))


def smooth_image(height: int, width: int, phase: float = 0.0) -> GrayImage:
    """Deterministic photo-like test card: ramps, sinusoid texture, a disc."""
    y, x = np.mgrid[0:height, 0:width]
    base = 90 + 60 * np.sin(2 * np.pi * (x / width) + phase) + 40 * (y / height)
    texture = 12 * np.sin(2 * np.pi * x / 7.3) * np.cos(2 * np.pi * y / 11.1)
    disc = ((x - width * 0.6) ** 2 + (y - height * 0.4) ** 2) < (min(height, width) * 0.22) ** 2
    values = base + texture + 55 * disc
    return GrayImage(np.clip(np.round(values), 1, 254).astype(np.uint8))
