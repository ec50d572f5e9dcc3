import datetime
import io

import pytest
from PIL import Image

from rollcall import schema
from rollcall.config import ConnectionConfig, StorageStrategy
from rollcall.db import connect
from rollcall.imaging import decode
from rollcall.model import EmployeeRecord, StudentRecord


@pytest.fixture
def cfg(tmp_path):
    return ConnectionConfig(engine="sqlite", path=str(tmp_path / "rollcall.db"))


@pytest.fixture(params=[StorageStrategy.LARGE_OBJECT, StorageStrategy.INLINE_BYTES],
                ids=["large_object", "inline_bytes"])
def strategy(request):
    return request.param


@pytest.fixture
def migrated(cfg, strategy):
    schema.migrate(cfg, strategy)
    return cfg


@pytest.fixture
def db(migrated):
    with connect(migrated) as adapter:
        yield adapter


@pytest.fixture
def lo_cfg(tmp_path):
    config = ConnectionConfig(engine="sqlite", path=str(tmp_path / "lo.db"))
    schema.migrate(config, StorageStrategy.LARGE_OBJECT)
    return config


@pytest.fixture
def lo_db(lo_cfg):
    with connect(lo_cfg) as adapter:
        yield adapter


def make_png(width=200, height=200, color=(90, 120, 200)):
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="PNG")
    return buf.getvalue()


def make_jpeg(width=200, height=200, color=(90, 120, 200)):
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="JPEG", quality=90)
    return buf.getvalue()


@pytest.fixture
def png_blob():
    return decode(make_png())


def employee(emp_id=9, **overrides):
    """The form record from the published entry screen, by default."""
    base = dict(
        emp_id=emp_id,
        first_name="Sourav",
        last_name="Bag",
        emp_contact_no="8131042345",
        date_of_birth=datetime.date(1991, 5, 14),
        dept="Electronics and Cor",
        date_of_joining=datetime.date(2015, 7, 1),
        highest_education="M.Tech",
        designation="Asst. Professor",
        employment_type="Employee",
        gender="Male",
        blood_group="A+",
        years_of_experience=1,
    )
    base.update(overrides)
    return EmployeeRecord(**base)


def student(student_id=1, **overrides):
    base = dict(
        student_id=student_id,
        first_name="A",
        last_name="B",
        student_contact_no="9000000001",
        date_of_birth=datetime.date(2001, 3, 2),
        branch="CSE",
        date_of_admission=datetime.date(2019, 8, 1),
        session="2019-23",
        semester=1,
        aicte_course_id=101,
        gender="Male",
        blood_group="O+",
    )
    base.update(overrides)
    return StudentRecord(**base)
