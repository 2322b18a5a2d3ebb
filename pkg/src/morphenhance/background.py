"""Background criteria and background parameters for the three pipelines.

Each detector returns a :class:`BackgroundMap` holding, per pixel,

``tau``
    the background criterion separating dark (``f <= tau``) from clear pixels,
``background``
    the intensity offset the Weber operator adds,
``gain``
    the scale ``k`` applied to ``log(f + 1)``.

Gains are ``(255 - reference) / log(256)`` with natural logs; the base cancels
against ``log(f + 1)`` in every operator, so it never changes an output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import MAXINT, as_gray
from .morphology import MorphImpl, dilate, erode, opening_by_reconstruction

LOG_MAXINT = math.log(MAXINT + 1)


def gain_for(reference) -> np.ndarray:
    """Weber gain ``(255 - reference) / log(256)``."""
    return (MAXINT - np.asarray(reference, dtype=np.float64)) / LOG_MAXINT


@dataclass(frozen=True)
class BackgroundMap:
    tau: np.ndarray
    background: np.ndarray
    gain: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.tau.shape


@dataclass(frozen=True)
class BlockGrid:
    """Per-block statistics on a grid anchored at the top-left corner.

    Arrays are indexed ``[block_row, block_col]``.  Edge blocks are smaller
    when the block size does not divide the image.
    """

    block_w: int
    block_h: int
    height: int
    width: int
    minimum: np.ndarray
    maximum: np.ndarray

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.minimum.shape

    @property
    def tau(self) -> np.ndarray:
        return (self.minimum.astype(np.float64) + self.maximum) / 2.0

    @property
    def gain_dark(self) -> np.ndarray:
        return gain_for(self.minimum)

    @property
    def gain_bright(self) -> np.ndarray:
        return gain_for(self.maximum)

    def origin(self, row: int, col: int) -> tuple[int, int]:
        """``(x, y)`` of the block's top-left pixel."""
        return col * self.block_w, row * self.block_h

    def extent(self, row: int, col: int) -> tuple[int, int]:
        x, y = self.origin(row, col)
        return min(self.block_w, self.width - x), min(self.block_h, self.height - y)

    def expand(self, values: np.ndarray) -> np.ndarray:
        """Broadcast a per-block array to a per-pixel map."""
        full = np.repeat(np.repeat(values, self.block_h, axis=0), self.block_w, axis=1)
        return full[: self.height, : self.width]


def block_stats(f, block_w: int, block_h: int) -> BlockGrid:
    f = as_gray(f)
    h, w = f.shape
    for name, size, limit in (("block_w", block_w, w), ("block_h", block_h, h)):
        if isinstance(size, bool) or int(size) != size or size < 1:
            raise ValueError(f"{name} must be a positive integer, got {size!r}")
        if size > limit:
            raise ValueError(f"{name}={size} exceeds image dimension {limit}")
    block_w, block_h = int(block_w), int(block_h)
    # reduceat splits at block starts; the last segment absorbs the ragged edge
    ys = np.arange(0, h, block_h)
    xs = np.arange(0, w, block_w)
    mins = np.minimum.reduceat(np.minimum.reduceat(f, ys, axis=0), xs, axis=1)
    maxs = np.maximum.reduceat(np.maximum.reduceat(f, ys, axis=0), xs, axis=1)
    return BlockGrid(block_w, block_h, h, w, mins, maxs)


def background_block(f, block_w: int, block_h: int) -> BackgroundMap:
    """Per-pixel view of the block analysis.

    Dark pixels (``f <= tau_i``) take the block maximum as background and the
    gain built from the block minimum; clear pixels take the block minimum and
    the gain built from the block maximum.
    """
    f = as_gray(f)
    grid = block_stats(f, block_w, block_h)
    tau = grid.expand(grid.tau)
    dark = f <= tau
    background = np.where(dark, grid.expand(grid.maximum), grid.expand(grid.minimum))
    gain = np.where(dark, grid.expand(grid.gain_dark), grid.expand(grid.gain_bright))
    return BackgroundMap(tau, background.astype(np.uint8), gain)


def tau_erosion_dilation(f, mu: int, impl: MorphImpl = "separable") -> BackgroundMap:
    """Midpoint of the local min and max at scale ``mu``."""
    f = as_gray(f)
    lo = erode(f, mu, impl)
    hi = dilate(f, mu, impl)
    tau = (lo.astype(np.float64) + hi) / 2.0
    background = np.where(f <= tau, hi, lo).astype(np.uint8)
    return BackgroundMap(tau, background, gain_for(tau))


def background_obr(f, mu: int, impl: MorphImpl = "separable") -> BackgroundMap:
    """Opening by reconstruction as criterion, its unit erosion as background."""
    f = as_gray(f)
    opened = opening_by_reconstruction(f, mu, impl)
    b = erode(opened, 1, impl)
    return BackgroundMap(opened.astype(np.float64), b, gain_for(b))
