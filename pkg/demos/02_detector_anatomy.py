#!/usr/bin/env python3
"""Walk one filter window through the detection and weighting stages.

The window holds eight mid-gray pixels around a pepper pixel, the setup
where the detector's job is obvious: the consensus pixels should count as
good and the dark center should not.
"""

import numpy as np

from fuzzdenoise import (
    DetectorConfig,
    Window,
    classify,
    detect_profile,
    good_pixel_stats,
    thresholds,
    weighted_denoise,
)

values = np.array([0.5, 0.5, 0.5, 0.5, 0.0, 0.5, 0.5, 0.5, 0.5])
window = Window(half_size=1, center=(1, 1), pixels=values, sorted_pixels=np.sort(values))

profile = detect_profile(window, DetectorConfig())
print("window        :", values.tolist())
print(f"half means    : m1={profile.m1:.4f}  m2={profile.m2:.4f}")
print(f"spread        : sigma={profile.sigma:.4f}  midpoint={profile.nu_avg:.4f}")
print("upper envelope:", np.round(profile.upper, 4).tolist())
print("lower envelope:", np.round(profile.lower, 4).tolist())
print("averaged      :", np.round(profile.delta_mu, 4).tolist())

t_strict, t_low = thresholds(profile, DetectorConfig(threshold_mode="strict"))
print(f"\nthresholds    : relaxed={profile.t_high:.4f}  strict={t_strict:.4f}  lower={t_low:.4f}")
print("relaxed labels:", classify(profile).tolist())
print("(strict mode would reject all nine pixels here and grow the window)")

# second stage on a small good-pixel collection
goods = [0.4, 0.5, 0.6]
gps = good_pixel_stats(goods, scale_s=2.0)
print(f"\ngood pixels   : {goods}")
print(f"stats         : mean={gps.mean:.4f}  spread={gps.sigma_g:.4f}")
print("weights       :", np.round(gps.weights, 4).tolist())
print(f"replacement   : {weighted_denoise(gps):.4f}")

skewed = good_pixel_stats([0.2, 0.5, 0.6], scale_s=2.0)
print(f"\nskewed goods  : [0.2, 0.5, 0.6] -> replacement {weighted_denoise(skewed):.4f}")
print("(the weighted mean leans toward the cluster, not the stray value)")
