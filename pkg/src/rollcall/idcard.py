"""Print-ready identity cards: photo, text fields, Code 39 barcode.

Rendering is deterministic — fixed embedded font, no timestamps — so two
renders of identical inputs are byte-identical PNGs and golden tests are
stable.  The default layout approximates a landscape CR80 badge.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

from . import barcode
from .errors import LayoutError
from .imaging import CropBox, ImageBlob, _encode
from .model import EmployeeRecord, StudentRecord


@dataclass(frozen=True)
class TextSlot:
    field: str      # "name", "id", "dept", or any record attribute
    x: int
    y: int
    size_pt: int


@dataclass
class CardLayout:
    card_width: int = 648
    card_height: int = 408
    dpi: int = 300
    photo_slot: CropBox = field(default_factory=lambda: CropBox(24, 24, 270, 360))
    text_slots: list[TextSlot] = field(default_factory=lambda: [
        TextSlot("title", 318, 36, 20),
        TextSlot("name", 318, 96, 18),
        TextSlot("id", 318, 144, 16),
        TextSlot("dept", 318, 186, 16),
    ])
    barcode_slot: CropBox = field(default_factory=lambda: CropBox(318, 276, 306, 96))

    def validate(self) -> "CardLayout":
        if self.card_width <= 0 or self.card_height <= 0 or self.dpi <= 0:
            raise LayoutError("card dimensions and dpi must be positive")
        rects = [("photo_slot", self.photo_slot), ("barcode_slot", self.barcode_slot)]
        for name, box in rects:
            if (box.x < 0 or box.y < 0 or box.width <= 0 or box.height <= 0
                    or box.x + box.width > self.card_width
                    or box.y + box.height > self.card_height):
                raise LayoutError(f"{name} outside card bounds")
        a, b = self.photo_slot, self.barcode_slot
        if not (a.x + a.width <= b.x or b.x + b.width <= a.x
                or a.y + a.height <= b.y or b.y + b.height <= a.y):
            raise LayoutError("photo_slot and barcode_slot overlap")
        for slot in self.text_slots:
            if not (0 <= slot.x < self.card_width and 0 <= slot.y < self.card_height):
                raise LayoutError(f"text slot {slot.field!r} outside card bounds")
            if slot.size_pt <= 0:
                raise LayoutError(f"text slot {slot.field!r} has non-positive size")
        return self

    @classmethod
    def from_file(cls, path: str | Path) -> "CardLayout":
        """Key-value layout file:

            card_width = 648
            card_height = 408
            dpi = 300
            photo_slot = x,y,w,h
            barcode_slot = x,y,w,h
            text_slot.<field> = x,y,size_pt

        Blank lines and '#' comments are ignored."""
        layout = cls(text_slots=[])
        saw_text = False
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise LayoutError(f"layout line {lineno}: expected key = value")
            key, _, value = (s.strip() for s in line.partition("="))
            try:
                if key in ("card_width", "card_height", "dpi"):
                    setattr(layout, key, int(value))
                elif key in ("photo_slot", "barcode_slot"):
                    x, y, w, h = (int(v) for v in value.split(","))
                    setattr(layout, key, CropBox(x, y, w, h))
                elif key.startswith("text_slot."):
                    x, y, pt = (int(v) for v in value.split(","))
                    layout.text_slots.append(TextSlot(key[len("text_slot."):], x, y, pt))
                    saw_text = True
                else:
                    raise LayoutError(f"layout line {lineno}: unknown key {key!r}")
            except ValueError:
                raise LayoutError(f"layout line {lineno}: bad value {value!r}") from None
        if not saw_text:
            layout.text_slots = cls().text_slots
        return layout.validate()


def _font(size_pt: int):
    try:
        return ImageFont.load_default(size=size_pt)
    except TypeError:   # older Pillow: fixed-size embedded font
        return ImageFont.load_default()


def _field_text(rec, field_name: str) -> str:
    if isinstance(rec, EmployeeRecord):
        special = {
            "title": "EMPLOYEE IDENTITY CARD",
            "name": " ".join(p for p in (rec.first_name, rec.middle_name, rec.last_name) if p),
            "id": f"ID: {rec.emp_id}",
            "dept": rec.dept,
        }
    elif isinstance(rec, StudentRecord):
        special = {
            "title": "STUDENT IDENTITY CARD",
            "name": " ".join(p for p in (rec.first_name, rec.middle_name, rec.last_name) if p),
            "id": f"ID: {rec.student_id}",
            "dept": rec.branch,
        }
    else:
        raise LayoutError(f"unsupported record type {type(rec).__name__}")
    if field_name in special:
        return special[field_name]
    if hasattr(rec, field_name):
        value = getattr(rec, field_name)
        return "" if value is None else str(value)
    raise LayoutError(f"text field {field_name!r} missing from record")


def record_id_of(rec) -> int:
    return rec.emp_id if isinstance(rec, EmployeeRecord) else rec.student_id


def _placeholder(width: int, height: int) -> Image.Image:
    """Neutral head-and-shoulders silhouette for photo-less records."""
    img = Image.new("RGB", (width, height), (225, 228, 232))
    draw = ImageDraw.Draw(img)
    cx = width // 2
    head_r = width // 5
    draw.ellipse(
        (cx - head_r, height // 5, cx + head_r, height // 5 + 2 * head_r),
        fill=(160, 166, 175),
    )
    draw.ellipse(
        (cx - 2 * head_r, height // 5 + int(2.3 * head_r),
         cx + 2 * head_r, height // 5 + int(5.5 * head_r)),
        fill=(160, 166, 175),
    )
    return img


def render_card(rec, photo: ImageBlob | None, layout: CardLayout | None = None) -> ImageBlob:
    layout = (layout or CardLayout()).validate()
    card = Image.new("RGB", (layout.card_width, layout.card_height), "white")
    draw = ImageDraw.Draw(card)
    draw.rectangle(
        (0, 0, layout.card_width - 1, layout.card_height - 1), outline=(40, 40, 40), width=2
    )

    ps = layout.photo_slot
    if photo is not None:
        with Image.open(io.BytesIO(photo.data)) as img:
            face = img.convert("RGB").resize((ps.width, ps.height), Image.BILINEAR)
    else:
        face = _placeholder(ps.width, ps.height)
    card.paste(face, (ps.x, ps.y))
    draw.rectangle(
        (ps.x - 1, ps.y - 1, ps.x + ps.width, ps.y + ps.height), outline=(40, 40, 40)
    )

    for slot in layout.text_slots:
        draw.text((slot.x, slot.y), _field_text(rec, slot.field),
                  font=_font(slot.size_pt), fill=(10, 10, 10))

    bs = layout.barcode_slot
    symbol = barcode.encode_code39(str(record_id_of(rec)))
    code_img_blob = barcode.render_barcode(symbol, module_width_px=2, height_px=bs.height)
    with Image.open(io.BytesIO(code_img_blob.data)) as code_img:
        if code_img.width > bs.width:
            raise LayoutError("barcode does not fit its slot at minimum module width")
        bx = bs.x + (bs.width - code_img.width) // 2
        card.paste(code_img.convert("RGB"), (bx, bs.y))

    return _encode(card, "PNG")


def barcode_region(card: ImageBlob, layout: CardLayout | None = None) -> Image.Image:
    """Crop the barcode slot out of a rendered card (scan-test helper)."""
    layout = layout or CardLayout()
    bs = layout.barcode_slot
    with Image.open(io.BytesIO(card.data)) as img:
        return img.crop((bs.x, bs.y, bs.x + bs.width, bs.y + bs.height)).copy()
