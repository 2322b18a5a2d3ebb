"""Contrast and distribution statistics, plus a histogram-equalization baseline."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .image import MAXINT, as_gray, clipped_fraction


class UndefinedContrastError(ValueError):
    """Weber contrast divides by the surround luminance, which was zero."""


@dataclass(frozen=True)
class ContrastMeasurement:
    l_max: int
    l_min: int
    c: float


def weber_contrast(l_max: int, l_min: int) -> ContrastMeasurement:
    """``(l_max - l_min) / l_min`` for object luminance over surround luminance."""
    if l_min < 1:
        raise UndefinedContrastError(f"surround luminance must be >= 1, got {l_min}")
    if l_max < l_min:
        raise ValueError(f"l_max ({l_max}) must be >= l_min ({l_min})")
    return ContrastMeasurement(int(l_max), int(l_min), (l_max - l_min) / l_min)


@dataclass(frozen=True)
class ImageStats:
    mean: float
    stddev: float
    min: int
    max: int
    histogram: tuple[int, ...]
    clipped_fraction: float = 0.0


def image_stats(f, values=None) -> ImageStats:
    """Summary statistics of ``f``.

    ``values`` are the pre-quantization reals ``f`` was produced from, if any;
    they only feed ``clipped_fraction``.  RGB input is pooled over channels.
    """
    arr = np.asarray(f)
    if arr.ndim == 2:
        arr = as_gray(arr)
    hist = np.bincount(arr.ravel(), minlength=MAXINT + 1)
    data = arr.astype(np.float64)
    return ImageStats(
        mean=float(data.mean()),
        stddev=float(data.std()),
        min=int(arr.min()),
        max=int(arr.max()),
        histogram=tuple(int(c) for c in hist),
        clipped_fraction=0.0 if values is None else clipped_fraction(values),
    )


def histogram_equalize(f) -> np.ndarray:
    """Classic CDF remap: ``round((cdf - cdf_min) / (n - cdf_min) * 255)``.

    A constant image has no spread to redistribute and is returned unchanged.
    """
    f = as_gray(f)
    hist = np.bincount(f.ravel(), minlength=MAXINT + 1)
    cdf = np.cumsum(hist)
    cdf_min = cdf[hist > 0][0]
    n = f.size
    if n == cdf_min:
        return f.copy()
    lut = np.floor((cdf - cdf_min) * MAXINT / (n - cdf_min) + 0.5)
    lut = np.clip(lut, 0, MAXINT).astype(np.uint8)
    return lut[f]


def format_stats(stats: dict, as_json: bool = False) -> str:
    """Render a flat dict as ``key=value`` lines or as one JSON object."""
    if as_json:
        return json.dumps(stats, sort_keys=False)
    lines = []
    for key, value in stats.items():
        if isinstance(value, float):
            value = f"{value:.6f}"
        lines.append(f"{key}={value}")
    return "\n".join(lines)


def comparison(before: ImageStats, after: ImageStats) -> dict:
    return {
        "mean_before": before.mean,
        "mean_after": after.mean,
        "stddev_before": before.stddev,
        "stddev_after": after.stddev,
        "clipped_fraction": after.clipped_fraction,
    }


def stats_dict(stats: ImageStats, with_histogram: bool = False) -> dict:
    out = asdict(stats)
    if not with_histogram:
        out.pop("histogram")
    else:
        out["histogram"] = list(stats.histogram)
    return out
