"""Code 39 encoding, rasterization, and decoding.

Each character is nine elements — five bars and four spaces, exactly three
of them wide — delimited by the ``*`` start/stop character, with a
one-unit space between characters.  Wide elements are two units, narrow
one.  The decoder here exists so rendered output can be verified by
run-length scanning; production reads happen on physical scanners.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from PIL import Image

from .errors import BarcodeError, ValidationError
from .imaging import ImageBlob, _encode

MAX_TEXT_LEN = 32
QUIET_ZONE_MODULES = 10
WIDE = 2
NARROW = 1

# Nine-element width patterns, narrow=1 wide=2, alternating bar/space
# starting with a bar.
_PATTERNS = {
    "0": "111221211", "1": "211211112", "2": "112211112", "3": "212211111",
    "4": "111221112", "5": "211221111", "6": "112221111", "7": "111211212",
    "8": "211211211", "9": "112211211",
    "A": "211112112", "B": "112112112", "C": "212112111", "D": "111122112",
    "E": "211122111", "F": "112122111", "G": "111112212", "H": "211112211",
    "I": "112112211", "J": "111122211", "K": "211111122", "L": "112111122",
    "M": "212111121", "N": "111121122", "O": "211121121", "P": "112121121",
    "Q": "111111222", "R": "211111221", "S": "112111221", "T": "111121221",
    "U": "221111112", "V": "122111112", "W": "222111111", "X": "121121112",
    "Y": "221121111", "Z": "122121111",
    "-": "121111212", ".": "221111211", " ": "122111211", "*": "121121211",
    "$": "121212111", "/": "121211121", "+": "121112121", "%": "111212121",
}
_REVERSE = {v: k for k, v in _PATTERNS.items()}

ALPHABET = "".join(sorted(set(_PATTERNS) - {"*"}))


@dataclass(frozen=True)
class BarcodeSymbol:
    """Module sequence for one encoded string, start/stop included."""

    text: str
    modules: tuple[tuple[str, int], ...]   # (kind "bar"|"space", width 1|2)

    def total_units(self) -> int:
        return sum(w for _, w in self.modules)


def _char_modules(char: str) -> list[tuple[str, int]]:
    pattern = _PATTERNS[char]
    return [
        ("bar" if i % 2 == 0 else "space", int(w))
        for i, w in enumerate(pattern)
    ]


def encode_code39(text: str) -> BarcodeSymbol:
    if not text:
        raise BarcodeError("empty text")
    if len(text) > MAX_TEXT_LEN:
        raise BarcodeError(f"text exceeds {MAX_TEXT_LEN} characters")
    for ch in text:
        if ch == "*" or ch not in _PATTERNS:
            raise BarcodeError(f"character outside alphabet: {ch!r}")
    modules: list[tuple[str, int]] = []
    for i, ch in enumerate("*" + text + "*"):
        if i:
            modules.append(("space", NARROW))   # inter-character gap
        modules.extend(_char_modules(ch))
    return BarcodeSymbol(text=text, modules=tuple(modules))


def decode_modules(modules: Iterable[tuple[str, int]]) -> str:
    """Independent of the encoder table direction of use: groups the
    module stream back into 9-element characters and reverse-looks-up."""
    mods = list(modules)
    chars: list[str] = []
    pos = 0
    while pos < len(mods):
        group = mods[pos:pos + 9]
        if len(group) < 9:
            raise BarcodeError("truncated module sequence")
        for i, (kind, width) in enumerate(group):
            expected = "bar" if i % 2 == 0 else "space"
            if kind != expected or width not in (NARROW, WIDE):
                raise BarcodeError("malformed module sequence")
        key = "".join(str(w) for _, w in group)
        ch = _REVERSE.get(key)
        if ch is None:
            raise BarcodeError(f"unknown character pattern {key}")
        chars.append(ch)
        pos += 9
        if pos < len(mods):
            kind, width = mods[pos]
            if kind != "space" or width != NARROW:
                raise BarcodeError("missing inter-character gap")
            pos += 1
    if len(chars) < 2 or chars[0] != "*" or chars[-1] != "*":
        raise BarcodeError("missing start/stop delimiters")
    body = chars[1:-1]
    if "*" in body:
        raise BarcodeError("stray start/stop character")
    return "".join(body)


def render_barcode(symbol: BarcodeSymbol, module_width_px: int, height_px: int) -> ImageBlob:
    """Monochrome PNG with a 10-module quiet zone on each side."""
    if module_width_px < 2:
        raise ValidationError("module_width_px", "module width must be at least 2 px")
    if height_px <= 0:
        raise ValidationError("height_px", "height must be positive")
    quiet = QUIET_ZONE_MODULES * module_width_px
    width = symbol.total_units() * module_width_px + 2 * quiet
    img = Image.new("L", (width, height_px), 255)
    px = img.load()
    x = quiet
    for kind, units in symbol.modules:
        span = units * module_width_px
        if kind == "bar":
            for cx in range(x, x + span):
                for cy in range(height_px):
                    px[cx, cy] = 0
        x += span
    return _encode(img, "PNG")


def scan_row(image: Image.Image, y: int | None = None) -> list[tuple[str, int]]:
    """Run-length scan of one raster row back into modules.  The narrow
    module width is inferred from the shortest run."""
    gray = image.convert("L")
    if y is None:
        y = gray.height // 2
    row = [gray.getpixel((x, y)) < 128 for x in range(gray.width)]
    runs: list[tuple[bool, int]] = []
    for black in row:
        if runs and runs[-1][0] == black:
            runs[-1] = (black, runs[-1][1] + 1)
        else:
            runs.append((black, 1))
    # strip quiet zones (leading/trailing white)
    if runs and not runs[0][0]:
        runs = runs[1:]
    if runs and not runs[-1][0]:
        runs = runs[:-1]
    if not runs:
        raise BarcodeError("no bars found in scan row")
    narrow = min(length for _, length in runs)
    modules: list[tuple[str, int]] = []
    for black, length in runs:
        units = round(length / narrow)
        if units not in (NARROW, WIDE):
            raise BarcodeError(f"ambiguous run width {length}")
        modules.append(("bar" if black else "space", units))
    return modules


def decode_image(blob: ImageBlob) -> str:
    import io

    with Image.open(io.BytesIO(blob.data)) as img:
        return decode_modules(scan_row(img))
