"""Image decoding, auto-crop and resize.

Only PNG and JPEG are accepted, detected by magic bytes and then fully
decoded so corrupt streams are rejected up front.  The auto-crop rule is
the largest centered box of the requested aspect that fits in the frame;
fractional dimensions and offsets round down.  All functions are pure.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction

from PIL import Image

from .errors import CorruptImageError, UnsupportedImageError, ValidationError

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
JPEG_MAGIC = b"\xff\xd8\xff"

MAX_RESIZE_DIM = 4096

# badge photo normalization target
BADGE_ASPECT = (3, 4)
BADGE_SIZE = (300, 400)


@dataclass
class ImageBlob:
    """Encoded image bytes plus the header facts needed for validation."""

    data: bytes
    format: str          # "PNG" or "JPEG"
    width_px: int
    height_px: int


@dataclass(frozen=True)
class CropBox:
    x: int
    y: int
    width: int
    height: int


def detect_format(data: bytes) -> str:
    if data.startswith(PNG_MAGIC):
        return "PNG"
    if data.startswith(JPEG_MAGIC):
        return "JPEG"
    raise UnsupportedImageError("unsupported format: not PNG or JPEG")


def decode(data: bytes) -> ImageBlob:
    if not data:
        raise ValidationError("photo", "invalid image: empty payload")
    fmt = detect_format(data)
    try:
        with Image.open(io.BytesIO(data)) as img:
            img.load()
            width, height = img.size
    except UnsupportedImageError:
        raise
    except Exception as exc:
        raise CorruptImageError(f"corrupt {fmt} stream") from exc
    if width <= 0 or height <= 0:
        raise CorruptImageError("zero-dimension image")
    return ImageBlob(data=data, format=fmt, width_px=width, height_px=height)


def probe(data: bytes) -> ImageBlob:
    """Header-only variant of decode: fills format and dimensions without
    decoding pixel data.  Used on fetch paths where bytes are trusted."""
    fmt = detect_format(data)
    try:
        with Image.open(io.BytesIO(data)) as img:
            width, height = img.size
    except Exception as exc:
        raise CorruptImageError(f"corrupt {fmt} stream") from exc
    return ImageBlob(data=data, format=fmt, width_px=width, height_px=height)


def auto_crop_box(width: int, height: int, aspect_w: int, aspect_h: int) -> CropBox:
    """Largest centered box of aspect (aspect_w : aspect_h) fitting in a
    width × height frame, dimensions floored, offsets floored."""
    if width <= 0 or height <= 0 or aspect_w <= 0 or aspect_h <= 0:
        raise ValidationError("aspect", "dimensions and aspect must be positive")
    # scale chosen as large as possible such that the floored box still
    # fits; equivalent to taking s just below min((W+1)/aw, (H+1)/ah)
    limit = min(Fraction(width + 1, aspect_w), Fraction(height + 1, aspect_h))

    def floored(n: Fraction) -> int:
        # floor of s*n for s approaching `limit` from below
        v = limit * n
        return int(v) - 1 if v.denominator == 1 else int(v)

    w = max(1, min(width, floored(Fraction(aspect_w))))
    h = max(1, min(height, floored(Fraction(aspect_h))))
    return CropBox(x=(width - w) // 2, y=(height - h) // 2, width=w, height=h)


def _open(blob: ImageBlob) -> Image.Image:
    return Image.open(io.BytesIO(blob.data))


def _encode(img: Image.Image, fmt: str) -> ImageBlob:
    buf = io.BytesIO()
    img.save(buf, format=fmt)
    data = buf.getvalue()
    return ImageBlob(data=data, format=fmt, width_px=img.width, height_px=img.height)


def crop(blob: ImageBlob, box: CropBox) -> ImageBlob:
    if (box.x < 0 or box.y < 0 or box.width <= 0 or box.height <= 0
            or box.x + box.width > blob.width_px
            or box.y + box.height > blob.height_px):
        raise ValidationError("crop", "crop box out of image bounds")
    with _open(blob) as img:
        out = img.crop((box.x, box.y, box.x + box.width, box.y + box.height))
        return _encode(out, blob.format)


def resize(blob: ImageBlob, width: int, height: int) -> ImageBlob:
    if not (0 < width <= MAX_RESIZE_DIM and 0 < height <= MAX_RESIZE_DIM):
        raise ValidationError("resize", f"target dimensions must be in 1..{MAX_RESIZE_DIM}")
    with _open(blob) as img:
        out = img.resize((width, height), Image.BILINEAR)
        return _encode(out, blob.format)


def normalize_badge_photo(data: bytes, box: CropBox | None = None) -> ImageBlob:
    """Upload pipeline: decode, crop to the badge aspect (caller may supply
    an adjusted box, re-validated against bounds), resize to the badge
    slot, re-encode as PNG."""
    blob = decode(data)
    if box is None:
        box = auto_crop_box(blob.width_px, blob.height_px, *BADGE_ASPECT)
    cropped = crop(blob, box)
    sized = resize(cropped, *BADGE_SIZE)
    with _open(sized) as img:
        return _encode(img.convert("RGB"), "PNG")
