"""Noisy-pixel detection via an interval type-2 fuzzy threshold.

Every filter window gets two primary Gaussian membership functions that
share one spread: their means are the averages of the lower and upper
halves of the sorted window (the middle sorted element is left out).  The
pointwise envelope of the two Gaussians gives an upper and a lower
membership per pixel; the per-pixel average of the two is compared against
a window-local threshold to split the window into good and noisy pixels.

All arithmetic lives in ``_batch_*`` kernels operating on (K, N) window
matrices; the public per-window operations wrap a batch of one, so the
whole-image engine and the single-window API produce bit-identical values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import Window

THRESHOLD_MODES = ("strict", "relaxed")


class DegenerateWindowError(ValueError):
    """Membership undefined because the window spread vanished.

    Callers should treat the window as uniform and take the
    replace-with-the-mean path instead of building memberships.
    """


@dataclass(frozen=True)
class DetectorConfig:
    """Tunables for the detection stage.

    scale_s : float
        Scaling factor applied inside the L1 spread estimate; must exceed 1.
    epsilon : float
        Spread (on normalized pixels) at or below which a window counts as
        uniform and is handled by the mean path.
    threshold_mode : str
        "strict" takes the threshold as the maximum over the full membership
        matrix; "relaxed" takes the maximum of the per-pixel averaged
        memberships, which guarantees at least one good pixel per window.
    """

    scale_s: float = 2.0
    epsilon: float = 1e-4
    threshold_mode: str = "relaxed"

    def __post_init__(self):
        if not self.scale_s > 1.0:
            raise ValueError(f"scale_s must exceed 1, got {self.scale_s}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.threshold_mode not in THRESHOLD_MODES:
            raise ValueError(
                f"threshold_mode must be one of {THRESHOLD_MODES}, got {self.threshold_mode!r}"
            )


@dataclass(frozen=True)
class Type2Profile:
    """Per-window detector state.

    ``upper`` / ``lower`` / ``delta_mu`` are aligned with the window's raster
    pixel order; ``delta_mu`` is the elementwise mean of the two envelopes.
    """

    m1: float
    m2: float
    sigma: float
    nu_avg: float
    upper: np.ndarray
    lower: np.ndarray
    delta_mu: np.ndarray
    t_high: float
    t_low: float


# ---------------------------------------------------------------------------
# batch kernels: wins has shape (K, N) with N odd, values in [0, 1]
# ---------------------------------------------------------------------------

def _batch_means(wins: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = wins.shape[-1]
    h = (n - 1) // 2
    srt = np.sort(wins, axis=-1)
    scale = 2.0 / (n - 1)
    m1 = srt[..., :h].sum(axis=-1) * scale
    m2 = srt[..., h + 1 :].sum(axis=-1) * scale
    return m1, m2


def _batch_sigma(
    wins: np.ndarray, m1: np.ndarray, m2: np.ndarray, scale_s: float
) -> tuple[np.ndarray, np.ndarray]:
    n = wins.shape[-1]
    nu = 0.5 * (m1 + m2)
    sigma = np.abs(wins - nu[..., None]).sum(axis=-1) * (scale_s / n)
    return sigma, nu


def _batch_membership(
    wins: np.ndarray, m1: np.ndarray, m2: np.ndarray, sigma: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    nu = 0.5 * (m1 + m2)
    m1c = m1[..., None]
    m2c = m2[..., None]
    sc = sigma[..., None]
    z1 = (wins - m1c) / sc
    z2 = (wins - m2c) / sc
    mu1 = np.exp(-0.5 * z1 * z1)
    mu2 = np.exp(-0.5 * z2 * z2)
    upper = np.where(wins < m1c, mu1, np.where(wins > m2c, mu2, np.maximum(mu1, mu2)))
    lower = np.where(wins <= nu[..., None], mu2, mu1)
    delta = 0.5 * (upper + lower)
    return upper, lower, delta


def _batch_thresholds(
    upper: np.ndarray, lower: np.ndarray, delta: np.ndarray, mode: str
) -> tuple[np.ndarray, np.ndarray]:
    t_low = np.minimum(upper, lower).max(axis=-1)
    if mode == "strict":
        t_high = np.maximum(upper.max(axis=-1), lower.max(axis=-1))
    else:
        t_high = delta.max(axis=-1)
    return t_high, t_low


# ---------------------------------------------------------------------------
# per-window operations
# ---------------------------------------------------------------------------

def compute_means(win: Window) -> tuple[float, float]:
    """Means of the lower and upper halves of the sorted window.

    The middle sorted element is excluded, so both halves have (N-1)/2
    pixels and m1 <= m2 by construction.
    """
    m1, m2 = _batch_means(win.pixels[None, :])
    return float(m1[0]), float(m2[0])


def compute_sigma(win: Window, m1: float, m2: float, cfg: DetectorConfig) -> tuple[float, float]:
    """Shared Gaussian spread and the midpoint of the two means.

    Returns (sigma, nu_avg) where sigma is the scaled mean absolute
    deviation of all N pixels (center included) about nu_avg = (m1+m2)/2.
    """
    sigma, nu = _batch_sigma(
        win.pixels[None, :], np.asarray([m1], dtype=float), np.asarray([m2], dtype=float),
        cfg.scale_s,
    )
    return float(sigma[0]), float(nu[0])


def membership_matrix(
    win: Window, m1: float, m2: float, sigma: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper/lower membership envelopes and their per-pixel average.

    The upper envelope follows the nearer Gaussian outside [m1, m2] and the
    pointwise maximum inside; the lower envelope follows the farther
    Gaussian, switching at the midpoint (m1+m2)/2.  Requires sigma > 0;
    a vanished spread raises :class:`DegenerateWindowError` so the caller
    can fall back to the uniform-window mean path.
    """
    if not sigma > 0.0:
        raise DegenerateWindowError(
            f"window spread {sigma} is not positive; replace the pixel with the window mean"
        )
    upper, lower, delta = _batch_membership(
        win.pixels[None, :],
        np.asarray([m1], dtype=float),
        np.asarray([m2], dtype=float),
        np.asarray([sigma], dtype=float),
    )
    if not (np.isfinite(upper).all() and np.isfinite(lower).all()):
        raise DegenerateWindowError(
            f"membership overflowed for spread {sigma}; treat the window as uniform"
        )
    return upper[0], lower[0], delta[0]


def thresholds(profile: Type2Profile, cfg: DetectorConfig) -> tuple[float, float]:
    """(t_high, t_low) for the profile under the configured mode.

    t_low is always the maximum of the pointwise envelope minimum.  Strict
    mode takes t_high as the maximum over both envelopes; relaxed mode uses
    the maximum averaged membership, so the best pixel always qualifies.
    """
    t_high, t_low = _batch_thresholds(
        profile.upper[None, :], profile.lower[None, :], profile.delta_mu[None, :],
        cfg.threshold_mode,
    )
    return float(t_high[0]), float(t_low[0])


def classify(profile: Type2Profile) -> np.ndarray:
    """Boolean good-pixel mask: averaged membership >= t_high, compared exactly."""
    return profile.delta_mu >= profile.t_high


def detect_profile(win: Window, cfg: DetectorConfig) -> Type2Profile:
    """Build the full detector profile for one window.

    Raises :class:`DegenerateWindowError` when the window is uniform
    (sigma == 0), in which case there is nothing to classify.
    """
    m1, m2 = compute_means(win)
    sigma, nu_avg = compute_sigma(win, m1, m2, cfg)
    upper, lower, delta = membership_matrix(win, m1, m2, sigma)
    t_high, t_low = _batch_thresholds(
        upper[None, :], lower[None, :], delta[None, :], cfg.threshold_mode
    )
    return Type2Profile(
        m1=m1,
        m2=m2,
        sigma=sigma,
        nu_avg=nu_avg,
        upper=upper,
        lower=lower,
        delta_mu=delta,
        t_high=float(t_high[0]),
        t_low=float(t_low[0]),
    )
