"""Grayscale flat-SE morphology and Weber's-law low-light enhancement."""
from .background import (
    BackgroundMap,
    BlockGrid,
    background_block,
    background_obr,
    block_stats,
    tau_erosion_dilation,
)
from .codec import read_image, write_image
from .enhancement import (
    BlockMethod,
    ErosionDilationMethod,
    ReconstructionMethod,
    enhance,
    enhance_block,
    enhance_erosion_dilation,
    enhance_obr,
    enhance_rgb,
)
from .image import clamp_round, complement, pointwise_min, rgb_to_gray
from .metrics import histogram_equalize, image_stats, weber_contrast
from .morphology import (
    close,
    closing_by_reconstruction,
    dilate,
    erode,
    geodesic_dilate,
    open,
    opening_by_reconstruction,
    reconstruct_by_dilation,
    running_extremum_1d,
)

__version__ = "0.1.0"
