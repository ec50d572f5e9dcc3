import pytest

from rollcall import barcode, idcard, imaging
from rollcall.errors import LayoutError
from rollcall.idcard import CardLayout, TextSlot, render_card
from rollcall.imaging import CropBox

from conftest import employee, make_png, student


@pytest.fixture
def photo():
    return imaging.normalize_badge_photo(make_png(600, 800))


def card_decodes_to(card, expected):
    region = idcard.barcode_region(card)
    assert barcode.decode_modules(barcode.scan_row(region)) == expected


class TestRenderCard:
    def test_default_layout_dimensions(self, photo):
        card = render_card(employee(), photo)
        layout = CardLayout()
        assert (card.width_px, card.height_px) == (layout.card_width, layout.card_height)
        assert card.format == "PNG"

    def test_barcode_region_decodes_to_id(self, photo):
        card_decodes_to(render_card(employee(), photo), "9")

    def test_student_card(self, photo):
        card_decodes_to(render_card(student(student_id=314), photo), "314")

    def test_placeholder_without_photo(self):
        card = render_card(employee(), None)
        assert card.format == "PNG"
        card_decodes_to(card, "9")

    def test_deterministic_bytes(self, photo):
        a = render_card(employee(), photo)
        b = render_card(employee(), photo)
        assert a.data == b.data

    def test_missing_text_field_rejected(self, photo):
        layout = CardLayout(text_slots=[TextSlot("no_such_field", 320, 60, 14)])
        with pytest.raises(LayoutError, match="missing from record"):
            render_card(employee(), photo, layout)


class TestLayoutValidation:
    def test_slot_outside_card(self):
        layout = CardLayout(photo_slot=CropBox(600, 24, 270, 360))
        with pytest.raises(LayoutError, match="outside card bounds"):
            layout.validate()

    def test_overlapping_slots(self):
        layout = CardLayout(barcode_slot=CropBox(24, 24, 306, 96))
        with pytest.raises(LayoutError, match="overlap"):
            layout.validate()

    def test_text_slot_outside(self):
        layout = CardLayout(text_slots=[TextSlot("name", 9999, 10, 12)])
        with pytest.raises(LayoutError):
            layout.validate()


class TestLayoutFile:
    def test_round_trip(self, tmp_path, photo):
        path = tmp_path / "layout.txt"
        path.write_text(
            "# wide test card\n"
            "card_width = 700\n"
            "card_height = 420\n"
            "dpi = 300\n"
            "photo_slot = 20,20,270,360\n"
            "barcode_slot = 330,300,340,90\n"
            "text_slot.name = 330,60,18\n"
            "text_slot.id = 330,110,14\n"
        )
        layout = CardLayout.from_file(path)
        assert layout.card_width == 700
        assert layout.photo_slot == CropBox(20, 20, 270, 360)
        assert [s.field for s in layout.text_slots] == ["name", "id"]
        card = render_card(employee(), photo, layout)
        assert (card.width_px, card.height_px) == (700, 420)
        region = idcard.barcode_region(card, layout)
        assert barcode.decode_modules(barcode.scan_row(region)) == "9"

    def test_bad_line_rejected(self, tmp_path):
        path = tmp_path / "layout.txt"
        path.write_text("card_width 648\n")
        with pytest.raises(LayoutError):
            CardLayout.from_file(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "layout.txt"
        path.write_text("sparkle = 7\n")
        with pytest.raises(LayoutError):
            CardLayout.from_file(path)
