"""Salt-and-pepper injection: exact counts, determinism, untouched survivors."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzdenoise import GrayImage, NoiseSpec, inject_sap

from .conftest import make_image


def test_zero_level_is_identity(rng):
    img = make_image(rng, 10, 10)
    assert inject_sap(img, NoiseSpec(level=0.0, seed=1)) == img


def test_full_level_all_extreme(rng):
    img = make_image(rng, 10, 10, lo=1, hi=255)
    out = inject_sap(img, NoiseSpec(level=1.0, seed=1))
    assert np.isin(out.data, (0, 255)).all()


def test_exact_count_and_determinism():
    img = GrayImage(np.full((100, 100), 128, dtype=np.uint8))
    spec = NoiseSpec(level=0.5, seed=424242)
    out1 = inject_sap(img, spec)
    out2 = inject_sap(img, spec)
    assert (out1.data != img.data).sum() == 5000
    assert out1 == out2


def test_different_seeds_differ():
    img = GrayImage(np.full((32, 32), 100, dtype=np.uint8))
    a = inject_sap(img, NoiseSpec(level=0.3, seed=1))
    b = inject_sap(img, NoiseSpec(level=0.3, seed=2))
    assert a != b


def test_salt_ratio_extremes():
    img = GrayImage(np.full((20, 20), 77, dtype=np.uint8))
    salt = inject_sap(img, NoiseSpec(level=1.0, seed=5, salt_ratio=1.0))
    pepper = inject_sap(img, NoiseSpec(level=1.0, seed=5, salt_ratio=0.0))
    assert (salt.data == 255).all()
    assert (pepper.data == 0).all()


def test_spec_validation():
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        NoiseSpec(level=1.5, seed=1)
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        NoiseSpec(level=0.5, seed=1, salt_ratio=-0.1)
    with pytest.raises(ValueError, match="non-negative"):
        NoiseSpec(level=0.5, seed=-3)


@given(
    h=st.integers(1, 16),
    w=st.integers(1, 16),
    level=st.floats(0.0, 1.0),
    seed=st.integers(0, 2**63),
    img_seed=st.integers(0, 2**31),
)
def test_count_bound_and_survivors(h, w, level, seed, img_seed):
    rng = np.random.default_rng(img_seed)
    img = GrayImage(rng.integers(0, 256, size=(h, w)))
    spec = NoiseSpec(level=level, seed=seed)
    out = inject_sap(img, spec)
    budget = int(np.floor(level * h * w + 0.5))
    changed = int((out.data != img.data).sum())
    assert changed <= budget
    if not np.isin(img.data, (0, 255)).any():
        assert changed == budget
    # survivors are bit-identical; every change lands on an extreme
    diff_mask = out.data != img.data
    assert np.isin(out.data[diff_mask], (0, 255)).all()
    assert np.array_equal(out.data[~diff_mask], img.data[~diff_mask])
    assert inject_sap(img, spec) == out
