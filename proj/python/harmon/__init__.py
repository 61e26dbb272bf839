"""Self-supervised image harmonization toolkit.

Images travel as float32 (H, W, 3) numpy arrays in [0, 1], masks as (H, W)
arrays. See the README for the CLI and file formats.
"""

from ._core import (  # noqa: F401
    AugmentConfig,
    Harmonizer,
    Lut3d,
    PolyColorMap,
    apply_color_map,
    color_transfer_meanstd,
    composite,
    extract_features,
    fit_color_map,
    gen_triplet,
    harmonize_composite,
    identity_lut,
    load_image,
    load_mask,
    locality_crop,
    mse,
    parse_cube,
    psnr,
    random_smooth_lut,
    resize_bilinear,
    sample_crop_pair,
    saturation_jitter,
    save_image,
    save_mask,
    ssim,
    train,
    write_cube,
)

__all__ = [
    "AugmentConfig",
    "Harmonizer",
    "Lut3d",
    "PolyColorMap",
    "apply_color_map",
    "color_transfer_meanstd",
    "composite",
    "extract_features",
    "fit_color_map",
    "gen_triplet",
    "harmonize_composite",
    "identity_lut",
    "load_image",
    "load_mask",
    "locality_crop",
    "mse",
    "parse_cube",
    "psnr",
    "random_smooth_lut",
    "resize_bilinear",
    "sample_crop_pair",
    "saturation_jitter",
    "save_image",
    "save_mask",
    "ssim",
    "train",
    "write_cube",
]

__version__ = "0.1.0"
