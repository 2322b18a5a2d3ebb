"""Weber's-law contrast operators.

All three pipelines share one template, ``v = k(x) * log(f + 1) + b(x)``; they
differ only in how the background map supplies ``k`` and ``b``.  Real values
are quantized once, at the end, by :func:`~morphenhance.image.clamp_round`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .background import (
    BackgroundMap,
    background_block,
    background_obr,
    tau_erosion_dilation,
)
from .image import MAXINT, as_gray, as_rgb, clamp_round, is_rgb
from .morphology import MorphImpl, check_mu

# log(f + 1) for every 8-bit intensity
LOG1P = np.array([math.log(i + 1) for i in range(MAXINT + 1)])


@dataclass(frozen=True)
class BlockMethod:
    block_w: int
    block_h: int
    name = "block"

    def background(self, f, impl: MorphImpl = "separable") -> BackgroundMap:
        return background_block(f, self.block_w, self.block_h)


@dataclass(frozen=True)
class ErosionDilationMethod:
    mu: int
    name = "ed"

    def __post_init__(self):
        check_mu(self.mu)

    def background(self, f, impl: MorphImpl = "separable") -> BackgroundMap:
        return tau_erosion_dilation(f, self.mu, impl)


@dataclass(frozen=True)
class ReconstructionMethod:
    mu: int
    name = "obr"

    def __post_init__(self):
        check_mu(self.mu)

    def background(self, f, impl: MorphImpl = "separable") -> BackgroundMap:
        return background_obr(f, self.mu, impl)


EnhanceMethod = Union[BlockMethod, ErosionDilationMethod, ReconstructionMethod]


def weber_values(f, bg: BackgroundMap) -> np.ndarray:
    """Pre-quantization enhanced values ``gain * log(f + 1) + background``."""
    f = as_gray(f)
    return bg.gain * LOG1P[f] + bg.background


@dataclass(frozen=True)
class Enhancement:
    """Enhanced image together with the real values it was quantized from."""

    image: np.ndarray
    values: np.ndarray
    background: BackgroundMap


def enhance_gray(f, method: EnhanceMethod, impl: MorphImpl = "separable") -> Enhancement:
    f = as_gray(f)
    bg = method.background(f, impl)
    values = weber_values(f, bg)
    return Enhancement(clamp_round(values), values, bg)


def enhance_block(f, block_w: int, block_h: int) -> np.ndarray:
    return enhance_gray(f, BlockMethod(block_w, block_h)).image


def enhance_erosion_dilation(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    return enhance_gray(f, ErosionDilationMethod(mu), impl).image


def enhance_obr(f, mu: int, impl: MorphImpl = "separable") -> np.ndarray:
    return enhance_gray(f, ReconstructionMethod(mu), impl).image


def enhance_rgb(img, method: EnhanceMethod, impl: MorphImpl = "separable") -> np.ndarray:
    """Apply a grayscale pipeline to each of the R, G, B planes independently."""
    img = as_rgb(img)
    planes = [enhance_gray(img[..., c], method, impl).image for c in range(3)]
    return np.stack(planes, axis=-1)


def enhance(img, method: EnhanceMethod, impl: MorphImpl = "separable"):
    """Enhance a gray or RGB image.

    Returns ``(image, values)``; for RGB input ``values`` is stacked per channel.
    """
    if is_rgb(img):
        img = as_rgb(img)
        results = [enhance_gray(img[..., c], method, impl) for c in range(3)]
        return (
            np.stack([r.image for r in results], axis=-1),
            np.stack([r.values for r in results], axis=-1),
        )
    result = enhance_gray(img, method, impl)
    return result.image, result.values
