"""Image decoding into :class:`PixelGrid` objects.

Supported sources are PNG, JPEG and binary or ASCII PPM/PGM, 8 bits per
sample. Alpha is dropped; palette and bilevel images are expanded.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

SUPPORTED_FORMATS = ("PNG", "JPEG", "PPM")


class ImageFormatError(OSError):
    """The file is not a supported 8-bit PNG/JPEG/PPM/PGM image."""


@dataclass(frozen=True, eq=False)
class PixelGrid:
    """Decoded image as a flat, row-major, channel-interleaved uint8 array."""

    width: int
    height: int
    channels: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        raw = np.asarray(self.data)
        if raw.dtype != np.uint8:
            if raw.size and (raw.min() < 0 or raw.max() > 255):
                raise ValueError("intensities must lie in [0, 255]")
            if raw.dtype.kind == "f" and not np.all(raw == np.round(raw)):
                raise ValueError("intensities must be integers")
        arr = np.array(raw, dtype=np.uint8).reshape(-1)
        expected = self.width * self.height * self.channels
        if arr.size != expected:
            raise ValueError(f"data length {arr.size} != width*height*channels = {expected}")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def n_pixels(self) -> int:
        return self.width * self.height

    def pixels(self) -> np.ndarray:
        """Read-only ``(n_pixels, channels)`` view, one row per pixel."""
        return self.data.reshape(self.n_pixels, self.channels)

    def as_array(self) -> np.ndarray:
        return self.data.reshape(self.height, self.width, self.channels)

    @classmethod
    def from_array(cls, arr) -> "PixelGrid":
        """Build from an ``(h, w)`` or ``(h, w, c)`` array."""
        arr = np.asarray(arr)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3:
            raise ValueError(f"expected a 2-D or 3-D array, got shape {arr.shape}")
        h, w, c = arr.shape
        return cls(w, h, c, arr.reshape(-1))

    def __eq__(self, other):
        if not isinstance(other, PixelGrid):
            return NotImplemented
        return (self.width, self.height, self.channels) == (other.width, other.height, other.channels) \
            and np.array_equal(self.data, other.data)

    __hash__ = None


def _sixteen_bit(img: Image.Image) -> bool:
    if img.mode in ("I;16", "I;16B", "I;16L", "I;16N", "I", "F"):
        return True
    for tile in img.tile:
        args = tile.args if hasattr(tile, "args") else tile[3]
        if isinstance(args, str) and "16" in args:
            return True
        if isinstance(args, tuple):
            if any(isinstance(a, str) and "16" in a for a in args):
                return True
            # PNM tiles carry (rawmode, maxval)
            if img.format == "PPM" and len(args) > 1 and isinstance(args[1], int) and args[1] > 255:
                return True
    return False


def load_image(path) -> PixelGrid:
    """Decode an image file.

    Color sources give a 3-channel grid, single-channel sources a 1-channel
    grid. Raises ``OSError`` when the file cannot be read and
    :class:`ImageFormatError` for unsupported, corrupt or 16-bit files.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        try:
            img = Image.open(fh)
        except UnidentifiedImageError as exc:
            raise ImageFormatError(f"{path}: not a recognised image") from exc
        with img:
            if img.format not in SUPPORTED_FORMATS:
                raise ImageFormatError(f"{path}: unsupported format {img.format}")
            if _sixteen_bit(img):
                raise ImageFormatError(f"{path}: only 8-bit samples are supported")
            try:
                img.load()
            except (OSError, SyntaxError, ValueError) as exc:
                raise ImageFormatError(f"{path}: corrupt image data ({exc})") from exc
            img = _normalise_mode(img, path)
            arr = np.asarray(img, dtype=np.uint8)
    return PixelGrid.from_array(arr)


def _normalise_mode(img: Image.Image, path: str) -> Image.Image:
    mode = img.mode
    if mode in ("L", "RGB"):
        return img
    if mode in ("1", "LA", "La"):
        return img.convert("L")
    if mode == "P":
        pal = img.convert("RGBA" if "transparency" in img.info else "RGB")
        return pal.convert("RGB")
    if mode in ("RGBA", "RGBa", "RGBX", "CMYK", "YCbCr", "LAB", "HSV"):
        return img.convert("RGB")
    raise ImageFormatError(f"{path}: unsupported pixel mode {mode}")


def save_image(grid: PixelGrid, path, format: str | None = None) -> None:
    arr = grid.as_array()
    img = Image.fromarray(arr[:, :, 0] if grid.channels == 1 else arr)
    img.save(path, format=format)


def to_grayscale(grid: PixelGrid) -> PixelGrid:
    """BT.601 luma, rounded half-up. 1-channel grids come back unchanged."""
    if grid.channels == 1:
        return grid
    px = grid.pixels().astype(np.int64)
    # integer weights keep the half-up rounding exact
    luma = (299 * px[:, 0] + 587 * px[:, 1] + 114 * px[:, 2] + 500) // 1000
    return PixelGrid(grid.width, grid.height, 1, luma.astype(np.uint8))
