"""Independent straight-line reference implementations for the tests.

Control flow, branch structure, window bookkeeping, and the formulas are
transcribed here from scratch with plain loops.  Elementary primitives
(sums via ``np.sum`` over the same operand orderings, ``np.exp``) are
shared with the library on purpose: replacement values can land exactly
on a quantization half-boundary (rational means on the pixel grid, or
weighted means of symmetric tied pixels), so the reference must round
those boundary cases identically for quantized comparisons to mean
anything.
"""

from __future__ import annotations

import math

import numpy as np


def detect_oracle(pixels, s: float, mode: str) -> dict:
    """Reference per-window detector state for a flat pixel sequence."""
    px = np.asarray(pixels, dtype=float)
    n = px.size
    half_count = (n - 1) // 2
    ordered = np.sort(px)
    m1 = np.sum(ordered[:half_count]) * (2.0 / (n - 1))
    m2 = np.sum(ordered[half_count + 1 :]) * (2.0 / (n - 1))
    nu = 0.5 * (m1 + m2)
    sigma = np.sum(np.abs(px - nu)) * (s / n)
    out = {"m1": float(m1), "m2": float(m2), "nu": float(nu), "sigma": float(sigma)}
    if sigma == 0.0:
        return out
    upper, lower = [], []
    for p in px:
        mu1 = float(np.exp(-0.5 * ((p - m1) / sigma) ** 2))
        mu2 = float(np.exp(-0.5 * ((p - m2) / sigma) ** 2))
        if p < m1:
            up = mu1
        elif p > m2:
            up = mu2
        else:
            up = max(mu1, mu2)
        upper.append(up)
        lower.append(mu2 if p <= nu else mu1)
    delta = [(u + low) / 2.0 for u, low in zip(upper, lower)]
    if mode == "strict":
        t_high = max(max(upper), max(lower))
    else:
        t_high = max(delta)
    t_low = max(min(u, low) for u, low in zip(upper, lower))
    out.update(
        upper=upper,
        lower=lower,
        delta=delta,
        t_high=t_high,
        t_low=t_low,
        labels=[d >= t_high for d in delta],
    )
    return out


def _reflect(i: int, n: int) -> int:
    if n == 1:
        return 0
    period = 2 * n - 2
    i %= period
    return period - i if i >= n else i


def denoise_oracle(
    data: np.ndarray,
    s: float = 2.0,
    eps: float = 1e-4,
    mode: str = "relaxed",
    h_max: int = 10,
    rho_min: int = 1,
) -> np.ndarray:
    """Reference whole-image denoiser over a uint8 array, loops and all."""
    height, width = data.shape
    raw = data.tolist()
    norm = data / 255.0
    global_mean = float(norm.mean())
    out = [row[:] for row in raw]
    h_cap = min(h_max, min(height, width) - 1)

    for r in range(height):
        for c in range(width):
            if raw[r][c] not in (0, 255):
                continue
            value = None
            px = None
            for half in range(1, h_cap + 1):
                px = np.asarray(
                    [
                        norm[_reflect(r + q, height), _reflect(c + l, width)]
                        for q in range(-half, half + 1)
                        for l in range(-half, half + 1)
                    ]
                )
                prof = detect_oracle(px, s, mode)
                if prof["sigma"] == 0.0:
                    value = prof["nu"]
                    break
                center = (px.size - 1) // 2
                if prof["delta"][center] >= prof["t_high"]:
                    value = float(px[center])
                    break
                if prof["sigma"] <= eps:
                    value = prof["nu"]
                    break
                good = np.asarray(prof["labels"])
                good[center] = False
                rho = int(good.sum())
                if rho < rho_min:
                    continue
                mean = float(np.sum(px * good) / float(rho))
                sigma_g = float(np.sum(np.abs(px - mean) * good) * (s / float(rho)))
                if sigma_g <= eps:
                    value = mean
                else:
                    z = (px - mean) / sigma_g
                    wts = np.exp(-0.5 * z * z) * good
                    value = float(np.sum(wts * px) / np.sum(wts))
                break
            if value is None:
                if px is not None:
                    keep = (px != 0.0) & (px != 1.0)
                    count = int(keep.sum())
                    value = float(np.sum(px * keep) / count) if count else global_mean
                else:
                    value = global_mean
            out[r][c] = min(255, max(0, math.floor(value * 255.0 + 0.5)))
    return np.asarray(out, dtype=np.uint8)


def median_oracle(data: np.ndarray, radius: int) -> np.ndarray:
    """Reference median filter via per-pixel sorting with mirrored borders."""
    height, width = data.shape
    out = np.empty_like(data)
    for r in range(height):
        for c in range(width):
            values = sorted(
                int(data[_reflect(r + q, height), _reflect(c + l, width)])
                for q in range(-radius, radius + 1)
                for l in range(-radius, radius + 1)
            )
            out[r, c] = values[len(values) // 2]
    return out
