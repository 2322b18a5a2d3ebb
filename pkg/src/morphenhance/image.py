"""Raster data model and pointwise helpers.

Images are plain numpy arrays:

* gray image  -- 2-D ``uint8`` array of shape ``(height, width)``
* RGB image   -- 3-D ``uint8`` array of shape ``(height, width, 3)``
* real map    -- 2-D ``float64`` array, finite everywhere

Every function here returns a fresh array and never writes to its inputs.
"""
from __future__ import annotations

import numpy as np

MAXINT = 255


class ShapeError(ValueError):
    """Two images that must share dimensions do not."""


def as_gray(f) -> np.ndarray:
    """Validate ``f`` as a gray image and return it as a ``uint8`` array.

    Integer arrays outside ``[0, 255]`` and non-integral values are rejected
    rather than silently wrapped.
    """
    arr = np.asarray(f)
    if arr.ndim != 2:
        raise ValueError(f"gray image must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"gray image must be at least 1x1, got {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype == bool:
        return arr.astype(np.uint8) * MAXINT
    if not np.issubdtype(arr.dtype, np.number):
        raise TypeError(f"unsupported dtype {arr.dtype}")
    if np.any(arr != np.round(arr)) or arr.min() < 0 or arr.max() > MAXINT:
        raise ValueError("intensities must be integers in [0, 255]")
    return arr.astype(np.uint8)


def as_rgb(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"RGB image must have shape (h, w, 3), got {arr.shape}")
    planes = [as_gray(arr[..., c]) for c in range(3)]
    return np.stack(planes, axis=-1)


def is_rgb(img) -> bool:
    return np.ndim(img) == 3


def check_same_shape(f: np.ndarray, g: np.ndarray) -> None:
    if f.shape != g.shape:
        raise ShapeError(f"shape mismatch: {f.shape} vs {g.shape}")


def complement(f) -> np.ndarray:
    """Return ``255 - f``."""
    f = as_gray(f)
    return (MAXINT - f).astype(np.uint8)


def pointwise_min(f, g) -> np.ndarray:
    f, g = as_gray(f), as_gray(g)
    check_same_shape(f, g)
    return np.minimum(f, g)


def pointwise_max(f, g) -> np.ndarray:
    f, g = as_gray(f), as_gray(g)
    check_same_shape(f, g)
    return np.maximum(f, g)


def round_half_away(v) -> np.ndarray:
    """Round to nearest integer, ties away from zero.

    Splitting off the integer part keeps the fractional test exact; the
    common ``floor(v + 0.5)`` trick misrounds 0.49999999999999994.
    """
    v = np.asarray(v, dtype=np.float64)
    whole = np.trunc(v)
    frac = v - whole
    return whole + np.where(np.abs(frac) >= 0.5, np.sign(v), 0.0)


def clamp_round(v) -> np.ndarray:
    """Quantize a real map to a gray image (round half away, clamp to [0, 255])."""
    v = np.asarray(v, dtype=np.float64)
    if np.isnan(v).any():
        raise ValueError("cannot quantize NaN values")
    return np.clip(round_half_away(v), 0, MAXINT).astype(np.uint8)


def clipped_fraction(v) -> float:
    """Share of real values lying outside ``[0, 255]``."""
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        return 0.0
    return float(np.count_nonzero((v < 0) | (v > MAXINT))) / v.size


def rgb_to_gray(img) -> np.ndarray:
    """BT.601 luma (0.299, 0.587, 0.114), rounded half away from zero."""
    img = as_rgb(img).astype(np.float64)
    luma = 0.299 * img[..., 0] + 0.587 * img[..., 1] + 0.114 * img[..., 2]
    return clamp_round(luma)
