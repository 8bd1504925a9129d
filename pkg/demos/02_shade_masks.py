"""
Shade masks from raw pixels
===========================

Shade classification is a single brightness threshold: a pixel whose mean
RGB value is below 75 counts as shaded.  This script builds a synthetic
tile with a dark block, extracts its mask, and writes the two mask
artifacts (bitmask file and yellow debug overlay) next to this script.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from shade_routing import GeoPoint, TileImage, TileRef, extract_mask, read_mask, shade_fraction, write_mask
from shade_routing.masks import render_overlay

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# Bright ground with a dark block over the left 40% of the tile.
tile = TileRef(GeoPoint(33.4234, -111.9375))
pixels = np.full((400, 400, 3), 210, dtype=np.uint8)
pixels[:, :160] = 35
image = TileImage(tile, pixels)

mask = extract_mask(image)  # threshold defaults to 75
print("shade fraction:", shade_fraction(mask))

# Thresholds are inclusive-bright: a pixel exactly at 75 stays unshaded.
boundary = TileImage(tile, np.full((400, 400, 3), 75, dtype=np.uint8))
print("all-75 tile fraction:", shade_fraction(extract_mask(boundary)))

# The compact bitmask file carries the tile reference in its header.
mask_path = out_dir / "demo_tile.mask"
write_mask(mask, mask_path)
loaded = read_mask(mask_path)
print("mask file round-trips:", bool((loaded.shaded == mask.shaded).all()), "->", mask_path)

# The debug overlay blends shaded pixels toward yellow, for eyeballing.
overlay_path = out_dir / "demo_tile_overlay.png"
Image.fromarray(render_overlay(image, mask)).save(overlay_path)
print("overlay written ->", overlay_path)
