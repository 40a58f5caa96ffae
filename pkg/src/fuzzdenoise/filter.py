"""Two-stage removal of salt-and-pepper noise.

Only extreme pixels (0 or 255) are candidates.  For each candidate the
detector profiles its neighborhood; the pixel is kept when its own averaged
membership clears the window threshold, replaced by the window mean when
the window is uniform, and otherwise replaced by a fuzzy-weighted mean of
the window's good pixels.  When a window has too few good pixels the
neighborhood is enlarged and the whole procedure repeats, up to a cap.

``denoise_image`` runs all candidates through the same batch kernels as
``denoise_pixel``, so the vectorized whole-image path and the per-pixel
path agree bit for bit.  Replacement values are always read from the
original noisy image, never from partially denoised output, which makes
the result independent of traversal order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .detector import (
    DegenerateWindowError,
    DetectorConfig,
    _batch_means,
    _batch_membership,
    _batch_sigma,
    _batch_thresholds,
)
from .image import GrayImage, Window, extract_window

PATH_GROW = 0
PATH_RETAINED = 1
PATH_UNIFORM = 2
PATH_WEIGHTED = 3
PATH_GOODS_MEAN = 4

_CHUNK_ELEMS = 2_000_000  # float64 window elements processed per batch


@dataclass(frozen=True)
class FilterConfig:
    """Tunables for the full two-stage filter.

    h_max caps the window half-size growth; rho_min is the number of good
    pixels a window must offer before stage two accepts it.
    """

    detector: DetectorConfig = field(default_factory=DetectorConfig)
    h_max: int = 10
    rho_min: int = 1

    def __post_init__(self):
        if self.h_max < 1:
            raise ValueError(f"h_max must be at least 1, got {self.h_max}")
        if self.rho_min < 1:
            raise ValueError(f"rho_min must be at least 1, got {self.rho_min}")


@dataclass(frozen=True)
class GoodPixelSet:
    """Stage-two statistics over the good pixels of one window."""

    pixels: np.ndarray
    mean: float
    sigma_g: float
    weights: np.ndarray | None

    @property
    def rho(self) -> int:
        return int(self.pixels.size)


@dataclass
class DenoiseStats:
    """Per-path counters for one ``denoise_image`` run."""

    extreme_pixels: int = 0
    retained: int = 0
    uniform_window: int = 0
    weighted: int = 0
    good_mean: int = 0
    fallback_window: int = 0
    fallback_global: int = 0
    window_growths: int = 0
    max_half_size: int = 0

    @property
    def fallbacks(self) -> int:
        return self.fallback_window + self.fallback_global


def good_pixel_stats(goods, scale_s: float) -> GoodPixelSet:
    """Mean, L1 spread, and Gaussian weights of a good-pixel collection.

    Weights are exp(-((g - mean) / sigma_g)**2 / 2); they are left as None
    when the spread vanishes (all good pixels equal), in which case the
    caller should fall back to the mean.
    """
    g = np.asarray(goods, dtype=float).reshape(-1)
    if g.size == 0:
        raise ValueError("at least one good pixel is required")
    rho = g.size
    m = g.sum() / rho
    sigma_g = np.abs(g - m).sum() * (scale_s / rho)
    if sigma_g > 0.0:
        z = (g - m) / sigma_g
        weights = np.exp(-0.5 * z * z)
    else:
        weights = None
    return GoodPixelSet(pixels=g, mean=float(m), sigma_g=float(sigma_g), weights=weights)


def weighted_denoise(gps: GoodPixelSet) -> float:
    """Weight-normalized mean of the good pixels; lies inside their range."""
    if gps.weights is None:
        raise ValueError("weights undefined (zero spread); use the mean instead")
    return float((gps.weights * gps.pixels).sum() / gps.weights.sum())


# ---------------------------------------------------------------------------
# batch resolution: one fixed-window-size pass of the full two-stage rule
# ---------------------------------------------------------------------------

def _resolve_windows(
    wins: np.ndarray, det: DetectorConfig, rho_min: int
) -> tuple[np.ndarray, np.ndarray]:
    """Try to resolve a (K, N) batch of windows at their current size.

    Returns (values, codes): values holds the normalized replacement where
    the matching code is not PATH_GROW; PATH_GROW rows need a larger window.
    """
    k, n = wins.shape
    center = (n - 1) // 2
    vals = np.zeros(k)
    codes = np.full(k, PATH_GROW, dtype=np.int8)

    m1, m2 = _batch_means(wins)
    sigma, nu = _batch_sigma(wins, m1, m2, det.scale_s)

    uniform = sigma == 0.0
    if uniform.any():
        vals[uniform] = nu[uniform]
        codes[uniform] = PATH_UNIFORM
    live = np.nonzero(~uniform)[0]
    if live.size == 0:
        return vals, codes

    lw = wins[live]
    upper, lower, delta = _batch_membership(lw, m1[live], m2[live], sigma[live])
    if not (np.isfinite(upper).all() and np.isfinite(lower).all()):
        raise DegenerateWindowError("membership overflowed; spread too small to classify")
    t_high, _ = _batch_thresholds(upper, lower, delta, det.threshold_mode)

    retain = delta[:, center] >= t_high
    idx = live[retain]
    vals[idx] = lw[retain, center]
    codes[idx] = PATH_RETAINED

    small = ~retain & (sigma[live] <= det.epsilon)
    idx = live[small]
    vals[idx] = nu[idx]
    codes[idx] = PATH_UNIFORM

    open_rows = np.nonzero(~retain & (sigma[live] > det.epsilon))[0]
    if open_rows.size == 0:
        return vals, codes

    good = delta[open_rows] >= t_high[open_rows, None]
    good[:, center] = False  # the pixel under test never weighs in on itself
    rho = good.sum(axis=1)
    enough = rho >= rho_min
    rows = open_rows[enough]
    if rows.size == 0:
        return vals, codes
    good = good[enough]
    cnt = rho[enough].astype(float)
    aw = lw[rows]
    abs_idx = live[rows]

    gm = (aw * good).sum(axis=1) / cnt
    dev = (np.abs(aw - gm[:, None]) * good).sum(axis=1)
    sg = dev * (det.scale_s / cnt)

    mean_path = sg <= det.epsilon
    idx = abs_idx[mean_path]
    vals[idx] = gm[mean_path]
    codes[idx] = PATH_GOODS_MEAN

    wsel = np.nonzero(~mean_path)[0]
    if wsel.size:
        z = (aw[wsel] - gm[wsel, None]) / sg[wsel, None]
        wts = np.exp(-0.5 * z * z) * good[wsel]
        pn = (wts * aw[wsel]).sum(axis=1) / wts.sum(axis=1)
        idx = abs_idx[wsel]
        vals[idx] = pn
        codes[idx] = PATH_WEIGHTED
    return vals, codes


def _batch_fallback(wins: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mean of the non-extreme pixels per window; flags rows that have none."""
    keep = (wins != 0.0) & (wins != 1.0)
    cnt = keep.sum(axis=1)
    ok = cnt > 0
    vals = np.zeros(wins.shape[0])
    if ok.any():
        vals[ok] = (wins[ok] * keep[ok]).sum(axis=1) / cnt[ok]
    return vals, ok


def denoise_pixel(img: GrayImage, row: int, col: int, cfg: FilterConfig | None = None) -> float:
    """Replacement value (normalized) for one extreme pixel.

    Grows the window from half-size 1 until the two-stage rule resolves the
    pixel; past the cap, falls back to the mean of the non-extreme pixels in
    the largest window, or the global image mean when there are none.
    """
    cfg = cfg or FilterConfig()
    v = int(img.data[row, col])
    if v not in (0, 255):
        raise ValueError(f"pixel ({row}, {col}) = {v} is not extreme; it should be retained")
    h_cap = min(cfg.h_max, min(img.width, img.height) - 1)
    win: Window | None = None
    for half in range(1, h_cap + 1):
        win = extract_window(img, row, col, half)
        vals, codes = _resolve_windows(win.pixels[None, :], cfg.detector, cfg.rho_min)
        if codes[0] != PATH_GROW:
            return float(vals[0])
    if win is not None:
        vals, ok = _batch_fallback(win.pixels[None, :])
        if ok[0]:
            return float(vals[0])
    return float(img.normalized().mean())


def _quantize(x: np.ndarray) -> np.ndarray:
    """Map normalized values to intensities, rounding halves up."""
    return np.clip(np.floor(x * 255.0 + 0.5), 0.0, 255.0).astype(np.uint8)


def denoise_image(
    img: GrayImage, cfg: FilterConfig | None = None, return_stats: bool = False
):
    """Denoise every extreme pixel of ``img``; all other pixels pass through.

    Replacement values are computed from the original image only, so the
    output does not depend on any processing order.  Returns the denoised
    image, or ``(image, DenoiseStats)`` when ``return_stats`` is set.
    """
    cfg = cfg or FilterConfig()
    det = cfg.detector
    data = img.data
    norm = data / 255.0
    extreme = (data == 0) | (data == 255)
    stats = DenoiseStats(extreme_pixels=int(extreme.sum()))
    out = data.copy()
    if stats.extreme_pixels == 0:
        result = GrayImage(out)
        return (result, stats) if return_stats else result

    prow, pcol = np.nonzero(extreme)
    rvals = np.empty(prow.size)
    rdone = np.zeros(prow.size, dtype=bool)
    pending = np.arange(prow.size)
    h_cap = min(cfg.h_max, min(img.width, img.height) - 1)

    for half in range(1, h_cap + 1):
        if pending.size == 0:
            break
        stats.max_half_size = half
        if half > 1:
            stats.window_growths += int(pending.size)
        n = (2 * half + 1) ** 2
        padded = np.pad(norm, half, mode="reflect")
        view = sliding_window_view(padded, (2 * half + 1, 2 * half + 1))
        chunk = max(1, _CHUNK_ELEMS // n)
        unresolved = []
        for start in range(0, pending.size, chunk):
            sel = pending[start : start + chunk]
            wins = view[prow[sel], pcol[sel]].reshape(sel.size, n)
            vals, codes = _resolve_windows(wins, det, cfg.rho_min)
            done = codes != PATH_GROW
            rvals[sel[done]] = vals[done]
            rdone[sel[done]] = True
            unresolved.append(sel[~done])
            stats.retained += int((codes == PATH_RETAINED).sum())
            stats.uniform_window += int((codes == PATH_UNIFORM).sum())
            stats.weighted += int((codes == PATH_WEIGHTED).sum())
            stats.good_mean += int((codes == PATH_GOODS_MEAN).sum())
        pending = np.concatenate(unresolved) if unresolved else pending[:0]

    if pending.size:
        if h_cap >= 1:
            n = (2 * h_cap + 1) ** 2
            padded = np.pad(norm, h_cap, mode="reflect")
            view = sliding_window_view(padded, (2 * h_cap + 1, 2 * h_cap + 1))
            chunk = max(1, _CHUNK_ELEMS // n)
            global_mean = None
            for start in range(0, pending.size, chunk):
                sel = pending[start : start + chunk]
                wins = view[prow[sel], pcol[sel]].reshape(sel.size, n)
                vals, ok = _batch_fallback(wins)
                rvals[sel[ok]] = vals[ok]
                if (~ok).any():
                    if global_mean is None:
                        global_mean = float(norm.mean())
                    rvals[sel[~ok]] = global_mean
                stats.fallback_window += int(ok.sum())
                stats.fallback_global += int((~ok).sum())
        else:
            rvals[pending] = float(norm.mean())
            stats.fallback_global += int(pending.size)
        rdone[pending] = True

    assert rdone.all(), "every extreme pixel must resolve to a value"
    out[prow, pcol] = _quantize(rvals)
    result = GrayImage(out)
    return (result, stats) if return_stats else result
