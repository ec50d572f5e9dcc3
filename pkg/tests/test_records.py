import datetime

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from rollcall import records, storage
from rollcall.config import StorageStrategy
from rollcall.errors import DuplicateError, ValidationError
from rollcall.imaging import decode
from rollcall.model import EMP_TABLE, STU_TABLE, BLOOD_GROUPS

from conftest import employee, make_png, student

LO = StorageStrategy.LARGE_OBJECT


class TestEmployeeCrud:
    def test_create_form_record(self, db):
        assert records.create_record(db, EMP_TABLE, employee()) == 9
        got = records.get_record(db, EMP_TABLE, 9)
        assert got == employee()

    def test_get_unknown_id_absent(self, db):
        assert records.get_record(db, EMP_TABLE, 424242) is None

    def test_duplicate_id_rejected(self, db):
        records.create_record(db, EMP_TABLE, employee())
        with pytest.raises(DuplicateError):
            records.create_record(db, EMP_TABLE, employee())

    def test_update_visible(self, db):
        records.create_record(db, EMP_TABLE, employee())
        assert records.update_record(db, EMP_TABLE, employee(designation="Professor"))
        assert records.get_record(db, EMP_TABLE, 9).designation == "Professor"

    def test_update_absent_returns_false(self, db):
        assert records.update_record(db, EMP_TABLE, employee(emp_id=77)) is False

    def test_update_preserves_photo(self, db, strategy, png_blob):
        records.create_record(db, EMP_TABLE, employee())
        storage.store_photo(db, strategy, EMP_TABLE, 9, png_blob)
        records.update_record(db, EMP_TABLE, employee(designation="Professor"))
        assert storage.fetch_photo(db, strategy, EMP_TABLE, 9).data == png_blob.data

    def test_delete_twice(self, db):
        records.create_record(db, EMP_TABLE, employee())
        assert records.delete_record(db, EMP_TABLE, 9) is True
        assert records.delete_record(db, EMP_TABLE, 9) is False

    def test_delete_unlinks_photo(self, lo_db, png_blob):
        records.create_record(lo_db, EMP_TABLE, employee())
        storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        records.delete_record(lo_db, EMP_TABLE, 9)
        assert records.get_record(lo_db, EMP_TABLE, 9) is None
        assert storage.list_orphans(lo_db, LO) == set()


class TestValidation:
    @pytest.mark.parametrize("field,bound", [
        ("first_name", 50), ("middle_name", 50), ("last_name", 50),
        ("dept", 20), ("highest_education", 20), ("designation", 20),
        ("employment_type", 20), ("gender", 6), ("remark", 255),
    ])
    def test_employee_text_bounds(self, field, bound):
        employee(**{field: "x" * bound}).validate()
        with pytest.raises(ValidationError, match=f"{field} exceeds {bound}"):
            employee(**{field: "x" * (bound + 1)}).validate()

    def test_contact_number_bounds(self):
        employee(emp_contact_no="1" * 15).validate()
        with pytest.raises(ValidationError, match="emp_contact_no exceeds 15"):
            employee(emp_contact_no="1" * 16).validate()
        with pytest.raises(ValidationError, match="digits"):
            employee(emp_contact_no="12345-678").validate()

    def test_contact_number_keeps_leading_zero(self, db):
        records.create_record(db, EMP_TABLE, employee(emp_contact_no="0123456789"))
        assert records.get_record(db, EMP_TABLE, 9).emp_contact_no == "0123456789"

    def test_blood_group_enumeration(self):
        for bg in BLOOD_GROUPS:
            employee(blood_group=bg).validate()
        with pytest.raises(ValidationError, match="blood_group not in enumeration"):
            employee(blood_group="C+").validate()

    def test_joining_before_birth_rejected(self):
        with pytest.raises(ValidationError, match="precedes"):
            employee(date_of_joining=datetime.date(1980, 1, 1)).validate()

    def test_negative_experience_rejected(self):
        with pytest.raises(ValidationError, match="years_of_experience"):
            employee(years_of_experience=-1).validate()

    @pytest.mark.parametrize("field,bound", [
        ("first_name", 50), ("branch", 20), ("session", 20), ("remark", 255),
    ])
    def test_student_text_bounds(self, field, bound):
        student(**{field: "x" * bound}).validate()
        with pytest.raises(ValidationError, match=f"{field} exceeds {bound}"):
            student(**{field: "x" * (bound + 1)}).validate()

    @pytest.mark.parametrize("semester", [0, 13, -1])
    def test_semester_out_of_range(self, semester):
        with pytest.raises(ValidationError, match="semester out of range"):
            student(semester=semester).validate()

    def test_minimal_student_round_trips(self, db):
        assert records.create_record(db, STU_TABLE, student()) == 1
        assert records.get_record(db, STU_TABLE, 1) == student()


class TestList:
    def test_id_order_and_total(self, db):
        for emp_id in (5, 1, 3):
            records.create_record(db, EMP_TABLE, employee(emp_id=emp_id))
        recs, total = records.list_records(db, EMP_TABLE, limit=10)
        assert [r.emp_id for r in recs] == [1, 3, 5]
        assert total == 3

    def test_filter_by_dept(self, db):
        records.create_record(db, EMP_TABLE, employee(emp_id=1))
        records.create_record(db, EMP_TABLE, employee(emp_id=2, dept="Physics"))
        recs, total = records.list_records(db, EMP_TABLE,
                                           {"dept": "Electronics and Cor"})
        assert total == 1 and recs[0].emp_id == 1

    def test_paging_total_ignores_window(self, db):
        for emp_id in range(1, 8):
            records.create_record(db, EMP_TABLE, employee(emp_id=emp_id))
        recs, total = records.list_records(db, EMP_TABLE, offset=2, limit=2)
        assert [r.emp_id for r in recs] == [3, 4]
        assert total == 7

    @pytest.mark.parametrize("limit", [0, 501, -3])
    def test_bad_limit(self, db, limit):
        with pytest.raises(ValidationError):
            records.list_records(db, EMP_TABLE, limit=limit)


CSV_HEADER = ",".join(records.record_fields(EMP_TABLE))


def emp_csv_line(emp_id, first_name="Sourav"):
    return (f"{emp_id},{first_name},,Bag,8131042345,1991-05-14,Electronics and Cor,"
            f"2015-07-01,M.Tech,Asst. Professor,Employee,Male,A+,1,")


class TestImportCsv:
    def test_valid_plus_invalid_rows(self, db):
        text = "\n".join([CSV_HEADER, emp_csv_line(1),
                          emp_csv_line(2, "x" * 51), emp_csv_line(3)])
        report = records.import_csv(db, EMP_TABLE, text)
        assert report.inserted == 2
        assert report.rejected == [(3, "first_name exceeds 50")]

    def test_header_only(self, db):
        report = records.import_csv(db, EMP_TABLE, CSV_HEADER + "\n")
        assert report.inserted == 0 and report.rejected == []

    def test_duplicate_within_file(self, db):
        text = "\n".join([CSV_HEADER, emp_csv_line(1), emp_csv_line(1)])
        report = records.import_csv(db, EMP_TABLE, text)
        assert report.inserted == 1
        assert report.rejected[0][0] == 3
        assert "duplicate" in report.rejected[0][1]

    def test_unknown_header_rejected(self, db):
        with pytest.raises(ValidationError):
            records.import_csv(db, EMP_TABLE, "nope,fields\n1,2\n")

    def test_export_import_round_trip(self, db, cfg, tmp_path):
        from rollcall import schema
        from rollcall.config import ConnectionConfig
        from rollcall.db import connect

        for emp_id in (1, 2):
            records.create_record(db, EMP_TABLE, employee(emp_id=emp_id,
                                                          remark="has, comma"))
        text = records.export_csv(db, EMP_TABLE)
        other_cfg = ConnectionConfig(engine="sqlite", path=str(tmp_path / "other.db"))
        schema.migrate(other_cfg, LO)
        with connect(other_cfg) as other:
            report = records.import_csv(other, EMP_TABLE, text)
            assert report.inserted == 2 and not report.rejected
            assert records.get_record(other, EMP_TABLE, 1) == records.get_record(db, EMP_TABLE, 1)


names = st.text(
    alphabet=st.characters(whitelist_categories=("Lu", "Ll")), min_size=1, max_size=50)
bounded20 = st.text(
    alphabet=st.characters(whitelist_categories=("Lu", "Ll")), min_size=1, max_size=20)
dates = st.dates(min_value=datetime.date(1950, 1, 1), max_value=datetime.date(2000, 12, 31))


@st.composite
def employees(draw):
    dob = draw(dates)
    return employee(
        emp_id=draw(st.integers(min_value=1, max_value=10**9)),
        first_name=draw(names),
        middle_name=draw(st.none() | names),
        last_name=draw(names),
        emp_contact_no=draw(st.text(alphabet="0123456789", min_size=1, max_size=15)),
        date_of_birth=dob,
        date_of_joining=draw(st.dates(min_value=dob, max_value=datetime.date(2024, 1, 1))),
        dept=draw(bounded20),
        highest_education=draw(bounded20),
        designation=draw(bounded20),
        employment_type=draw(bounded20),
        gender=draw(st.sampled_from(["Male", "Female", "Other"])),
        blood_group=draw(st.sampled_from(sorted(BLOOD_GROUPS))),
        years_of_experience=draw(st.integers(min_value=0, max_value=60)),
        remark=draw(st.none() | st.text(max_size=255).filter(lambda s: s != "")),
    )


@settings(max_examples=25, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(rec=employees())
def test_crud_round_trip_property(lo_db, rec):
    """create -> get field-equal, update -> get, delete -> absent."""
    records.delete_record(lo_db, EMP_TABLE, rec.emp_id)
    records.create_record(lo_db, EMP_TABLE, rec)
    assert records.get_record(lo_db, EMP_TABLE, rec.emp_id) == rec
    rec2 = employee(emp_id=rec.emp_id)
    records.update_record(lo_db, EMP_TABLE, rec2)
    assert records.get_record(lo_db, EMP_TABLE, rec.emp_id) == rec2
    assert records.delete_record(lo_db, EMP_TABLE, rec.emp_id)
    assert records.get_record(lo_db, EMP_TABLE, rec.emp_id) is None
