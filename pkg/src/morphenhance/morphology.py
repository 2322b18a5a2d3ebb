"""Flat square structuring-element morphology.

The structuring element at scale ``mu`` is the ``(2*mu+1) x (2*mu+1)`` square
centred on the pixel.  Windows are clipped to the image domain, which is the
same as padding with +inf for erosion and -inf for dilation.  The square is
symmetric, so its transpose is itself and opening/closing need no reflection.

Two kernels are available for erosion and dilation:

``naive``
    Minimum/maximum over every offset of the window, ``O(mu**2)`` per pixel.
``separable``
    The square factors into a horizontal then a vertical 1-D window, each
    evaluated with the van Herk / Gil-Werman block scheme (three comparisons
    per element regardless of ``mu``).

Both kernels produce identical bytes.
"""
from __future__ import annotations

from typing import Literal

import numba
import numpy as np

from .image import MAXINT, ShapeError, as_gray, check_same_shape, complement

MorphImpl = Literal["naive", "separable"]
IMPLS = ("naive", "separable")


class PreconditionError(ValueError):
    """Inputs violate an operator precondition (e.g. marker above mask)."""


def window_side(mu: int) -> int:
    return 2 * check_mu(mu) + 1


def check_mu(mu) -> int:
    if isinstance(mu, bool) or int(mu) != mu or mu < 0:
        raise ValueError(f"mu must be a non-negative integer, got {mu!r}")
    return int(mu)


def _check_impl(impl: str) -> None:
    if impl not in IMPLS:
        raise ValueError(f"unknown impl {impl!r}; expected one of {IMPLS}")


# --------------------------------------------------------------------------
# 1-D running extremum (van Herk / Gil-Werman)
# --------------------------------------------------------------------------

def _vhgw(a: np.ndarray, mu: int, axis: int, ufunc, neutral) -> np.ndarray:
    a = np.moveaxis(a, axis, -1)
    n = a.shape[-1]
    mu = min(mu, n - 1)
    if mu == 0:
        return np.moveaxis(a.copy(), -1, axis)
    w = 2 * mu + 1
    nblocks = -(-(n + 2 * mu) // w)
    lead = a.shape[:-1]
    padded = np.full(lead + (nblocks * w,), neutral, dtype=a.dtype)
    padded[..., mu:mu + n] = a
    blocks = padded.reshape(lead + (nblocks, w))
    prefix = ufunc.accumulate(blocks, axis=-1).reshape(padded.shape)
    suffix = ufunc.accumulate(blocks[..., ::-1], axis=-1)[..., ::-1]
    suffix = suffix.reshape(padded.shape)
    # window [i, i+w-1] in padded coordinates spans at most two blocks
    out = ufunc(suffix[..., :n], prefix[..., w - 1:w - 1 + n])
    return np.moveaxis(out, -1, axis)


def running_extremum_1d(line, window: int, kind: Literal["min", "max"]) -> np.ndarray:
    """Sliding min or max of ``line`` over a centred window of odd length.

    The window is clipped at both ends of the line.
    """
    if isinstance(window, bool) or int(window) != window or window < 1 or window % 2 == 0:
        raise ValueError(f"window must be a positive odd integer, got {window!r}")
    arr = np.asarray(line)
    if arr.ndim != 1:
        raise ValueError("line must be one-dimensional")
    if kind == "min":
        ufunc, neutral = np.minimum, _top(arr.dtype)
    elif kind == "max":
        ufunc, neutral = np.maximum, _bottom(arr.dtype)
    else:
        raise ValueError(f"kind must be 'min' or 'max', got {kind!r}")
    if arr.size == 0:
        return arr.copy()
    return _vhgw(arr, (int(window) - 1) // 2, 0, ufunc, neutral)


def _top(dtype):
    return np.iinfo(dtype).max if np.issubdtype(dtype, np.integer) else np.inf


def _bottom(dtype):
    return np.iinfo(dtype).min if np.issubdtype(dtype, np.integer) else -np.inf


# --------------------------------------------------------------------------
# erosion / dilation
# --------------------------------------------------------------------------

def _naive(f: np.ndarray, mu: int, ufunc, neutral) -> np.ndarray:
    h, w = f.shape
    my, mx = min(mu, h - 1), min(mu, w - 1)
    padded = np.full((h + 2 * my, w + 2 * mx), neutral, dtype=f.dtype)
    padded[my:my + h, mx:mx + w] = f
    out = f.copy()
    for dy in range(2 * my + 1):
        for dx in range(2 * mx + 1):
            ufunc(out, padded[dy:dy + h, dx:dx + w], out=out)
    return out


def _separable(f: np.ndarray, mu: int, ufunc, neutral) -> np.ndarray:
    rows = _vhgw(f, mu, 1, ufunc, neutral)
    return _vhgw(rows, mu, 0, ufunc, neutral)


def _extremum(f, mu, impl, ufunc, neutral) -> np.ndarray:
    f = as_gray(f)
    mu = check_mu(mu)
    _check_impl(impl)
    if mu == 0:
        return f.copy()
    if impl == "naive":
        return _naive(f, mu, ufunc, neutral)
    return _separable(f, mu, ufunc, neutral)


def erode(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    """Minimum of ``f`` over the clipped ``(2*mu+1)``-square around each pixel."""
    return _extremum(f, mu, impl, np.minimum, MAXINT)


def dilate(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    """Maximum of ``f`` over the clipped ``(2*mu+1)``-square around each pixel."""
    return _extremum(f, mu, impl, np.maximum, 0)


def open(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:  # noqa: A001
    """Erosion followed by dilation at the same scale."""
    return dilate(erode(f, mu, impl), mu, impl)


def close(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    """Dilation followed by erosion at the same scale."""
    return erode(dilate(f, mu, impl), mu, impl)


# --------------------------------------------------------------------------
# geodesic reconstruction
# --------------------------------------------------------------------------

def _check_marker_mask(marker, mask):
    marker, mask = as_gray(marker), as_gray(mask)
    check_same_shape(marker, mask)
    if np.any(marker > mask):
        raise PreconditionError("marker must lie pointwise below mask")
    return marker, mask


def geodesic_dilate(marker, mask) -> np.ndarray:
    """One elementary (3x3) dilation of ``marker`` clipped under ``mask``."""
    marker, mask = _check_marker_mask(marker, mask)
    return np.minimum(dilate(marker, 1), mask)


@numba.njit(cache=True)
def _reconstruct_hybrid(marker, mask):
    # Vincent's hybrid algorithm: forward scan, backward scan seeding a FIFO,
    # then queue propagation.  8-connectivity.
    h, w = mask.shape
    out = marker.copy()

    for y in range(h):
        for x in range(w):
            v = out[y, x]
            if y > 0:
                for dx in (-1, 0, 1):
                    xx = x + dx
                    if 0 <= xx < w and out[y - 1, xx] > v:
                        v = out[y - 1, xx]
            if x > 0 and out[y, x - 1] > v:
                v = out[y, x - 1]
            out[y, x] = min(v, mask[y, x])

    queue = np.empty(h * w, dtype=np.int64)
    head = 0
    tail = 0
    for y in range(h - 1, -1, -1):
        for x in range(w - 1, -1, -1):
            v = out[y, x]
            if y < h - 1:
                for dx in (-1, 0, 1):
                    xx = x + dx
                    if 0 <= xx < w and out[y + 1, xx] > v:
                        v = out[y + 1, xx]
            if x < w - 1 and out[y, x + 1] > v:
                v = out[y, x + 1]
            v = min(v, mask[y, x])
            out[y, x] = v
            seed = False
            if x < w - 1 and out[y, x + 1] < v and out[y, x + 1] < mask[y, x + 1]:
                seed = True
            if not seed and y < h - 1:
                for dx in (-1, 0, 1):
                    xx = x + dx
                    if 0 <= xx < w and out[y + 1, xx] < v and out[y + 1, xx] < mask[y + 1, xx]:
                        seed = True
                        break
            if seed:
                queue[tail] = y * w + x
                tail += 1

    size = tail - head
    while size > 0:
        p = queue[head % queue.shape[0]]
        head += 1
        size -= 1
        py = p // w
        px = p - py * w
        vp = out[py, px]
        for dy in (-1, 0, 1):
            qy = py + dy
            if qy < 0 or qy >= h:
                continue
            for dx in (-1, 0, 1):
                qx = px + dx
                if qx < 0 or qx >= w or (dy == 0 and dx == 0):
                    continue
                if out[qy, qx] < vp and mask[qy, qx] != out[qy, qx]:
                    out[qy, qx] = min(vp, mask[qy, qx])
                    if size == queue.shape[0]:
                        grown = np.empty(2 * queue.shape[0], dtype=np.int64)
                        cap = queue.shape[0]
                        for i in range(size):
                            grown[i] = queue[(head + i) % cap]
                        queue = grown
                        head = 0
                    queue[(head + size) % queue.shape[0]] = qy * w + qx
                    size += 1
    return out


def reconstruct_by_dilation(marker, mask) -> np.ndarray:
    """Grayscale reconstruction of ``mask`` from ``marker`` (8-connected).

    The result is the stable point of repeated :func:`geodesic_dilate` starting
    from ``marker``.
    """
    marker, mask = _check_marker_mask(marker, mask)
    return _reconstruct_hybrid(np.ascontiguousarray(marker), np.ascontiguousarray(mask))


def opening_by_reconstruction(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    """Erode by ``mu``, then reconstruct by dilation under the original image.

    Bright structures the erosion removes entirely stay removed; anything that
    survives is restored to its original shape.
    """
    f = as_gray(f)
    return reconstruct_by_dilation(erode(f, mu, impl), f)


def closing_by_reconstruction(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    """Dual of :func:`opening_by_reconstruction` under complement."""
    return complement(opening_by_reconstruction(complement(f), mu, impl))


__all__ = [
    "IMPLS",
    "MorphImpl",
    "PreconditionError",
    "ShapeError",
    "check_mu",
    "close",
    "closing_by_reconstruction",
    "dilate",
    "erode",
    "geodesic_dilate",
    "open",
    "opening_by_reconstruction",
    "reconstruct_by_dilation",
    "running_extremum_1d",
    "window_side",
]
