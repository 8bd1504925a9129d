"""Per-pixel shade classification of tile rasters by brightness thresholding.

A pixel counts as shaded when the arithmetic mean of its RGB channels falls
below the threshold (default 75); pixels exactly at the threshold stay
unshaded.  The comparison is done on integer channel sums, so there is no
floating-point boundary ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .geo import GeoPoint
from .tiles import TileRef

DEFAULT_THRESHOLD = 75

MASK_MAGIC = "shade-mask 1"

OVERLAY_RGB = (255, 255, 0)


@dataclass(frozen=True)
class TileImage:
    """An 8-bit RGB raster pinned to a tile footprint."""

    tile: TileRef
    pixels: np.ndarray

    def __post_init__(self) -> None:
        n = self.tile.side_px
        if self.pixels.shape != (n, n, 3):
            raise ValueError(
                f"pixel grid {self.pixels.shape} does not match {n}x{n}x3 tile raster"
            )


@dataclass(frozen=True)
class ShadeMask:
    """Boolean shaded/unshaded grid for one tile."""

    tile: TileRef
    shaded: np.ndarray
    threshold_used: int

    def __post_init__(self) -> None:
        n = self.tile.side_px
        if self.shaded.shape != (n, n):
            raise ValueError(f"mask grid {self.shaded.shape} does not match {n}x{n} tile")


def extract_mask(img: TileImage, threshold: int = DEFAULT_THRESHOLD) -> ShadeMask:
    """Classify every pixel of ``img``: shaded iff mean(r, g, b) < threshold."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold {threshold} outside [0, 255]")
    n = img.tile.side_px
    if img.pixels.shape != (n, n, 3):
        raise ValueError(f"pixel grid {img.pixels.shape} does not match tile side {n}")
    channel_sum = img.pixels.astype(np.uint16).sum(axis=2)
    shaded = channel_sum < 3 * threshold
    return ShadeMask(img.tile, shaded, threshold)


def shade_fraction(mask: ShadeMask) -> float:
    """Fraction of tile pixels classified as shaded."""
    return float(mask.shaded.mean())


def read_tile_image(path: str | Path, tile: TileRef) -> TileImage:
    """Load a lossless RGB(A) raster file; an alpha channel is dropped."""
    with Image.open(path) as im:
        rgb = im.convert("RGB")
        pixels = np.asarray(rgb, dtype=np.uint8)
    if pixels.shape[0] != pixels.shape[1]:
        raise ValueError(f"{path}: tile raster must be square, got {pixels.shape}")
    if pixels.shape[0] != tile.side_px:
        raise ValueError(
            f"{path}: raster side {pixels.shape[0]} does not match tile side {tile.side_px}"
        )
    return TileImage(tile, pixels)


def render_overlay(img: TileImage, mask: ShadeMask) -> np.ndarray:
    """Debug raster: the input image with shaded pixels blended 50% yellow."""
    if mask.tile != img.tile:
        raise ValueError("mask and image refer to different tiles")
    out = img.pixels.astype(np.uint16).copy()
    overlay = np.array(OVERLAY_RGB, dtype=np.uint16)
    out[mask.shaded] = (out[mask.shaded] + overlay) // 2
    return out.astype(np.uint8)


def write_mask(mask: ShadeMask, path: str | Path) -> None:
    """Compact bitmask file: two text header lines, then one bit per pixel."""
    c = mask.tile.center
    header = (
        f"{MASK_MAGIC}\n"
        f"{c.lat!r} {c.lon!r} {mask.tile.zoom} {mask.tile.side_px} {mask.threshold_used}\n"
    )
    payload = np.packbits(mask.shaded.reshape(-1)).tobytes()
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(payload)


def read_mask(path: str | Path) -> ShadeMask:
    with open(path, "rb") as fh:
        magic = fh.readline().decode("ascii").rstrip("\n")
        if magic != MASK_MAGIC:
            raise ValueError(f"{path}: not a shade-mask file (header {magic!r})")
        fields = fh.readline().decode("ascii").split()
        if len(fields) != 5:
            raise ValueError(f"{path}: malformed mask header")
        lat, lon = float(fields[0]), float(fields[1])
        zoom, side_px, threshold = int(fields[2]), int(fields[3]), int(fields[4])
        payload = fh.read()
    expected = (side_px * side_px + 7) // 8
    if len(payload) != expected:
        raise ValueError(f"{path}: expected {expected} payload bytes, got {len(payload)}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8))[: side_px * side_px]
    shaded = bits.astype(bool).reshape(side_px, side_px)
    tile = TileRef(GeoPoint(lat, lon), zoom, side_px)
    return ShadeMask(tile, shaded, threshold)
