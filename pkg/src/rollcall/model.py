"""Employee and student domain records with field-level validation.

Field names, widths and types mirror the backing tables; validation is
total and deterministic — a record either persists exactly as given or is
rejected with the offending field named.  Nothing is ever truncated.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, fields as dc_fields
from typing import Any, Optional

from .errors import ValidationError

EMP_TABLE = "tab_t_emp_details"
STU_TABLE = "tab_t_students"
PHOTO_COLUMN = "myphoto"
LO_DOMAIN = "lo"

BLOOD_GROUPS = {"A+", "A-", "B+", "B-", "AB+", "AB-", "O+", "O-"}

MAX_SEMESTER = 12


def _check_text(field: str, value: Any, bound: int, required: bool) -> Optional[str]:
    if value is None or value == "":
        if required:
            raise ValidationError(field, f"{field} is required")
        return None
    if not isinstance(value, str):
        raise ValidationError(field, f"{field} must be text")
    if len(value) > bound:
        raise ValidationError(field, f"{field} exceeds {bound}")
    return value


def _check_digits(field: str, value: Any, bound: int) -> str:
    if not isinstance(value, str) or not value:
        raise ValidationError(field, f"{field} must be a non-empty digit string")
    if not value.isdigit():
        raise ValidationError(field, f"{field} must contain only digits")
    if len(value) > bound:
        raise ValidationError(field, f"{field} exceeds {bound}")
    return value


def _check_date(field: str, value: Any) -> datetime.date:
    if isinstance(value, datetime.date) and not isinstance(value, datetime.datetime):
        return value
    if isinstance(value, str):
        try:
            return datetime.date.fromisoformat(value)
        except ValueError:
            raise ValidationError(field, f"{field} is not a valid ISO date") from None
    raise ValidationError(field, f"{field} must be a date")


def _check_int(field: str, value: Any, minimum: int, maximum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(field, f"{field} must be an integer")
    if value < minimum or (maximum is not None and value > maximum):
        raise ValidationError(field, f"{field} out of range")
    return value


def _check_blood_group(value: Any) -> str:
    if not isinstance(value, str) or value not in BLOOD_GROUPS:
        raise ValidationError("blood_group", "blood_group not in enumeration")
    return value


@dataclass
class EmployeeRecord:
    emp_id: int
    first_name: str
    last_name: str
    emp_contact_no: str
    date_of_birth: datetime.date
    dept: str
    date_of_joining: datetime.date
    highest_education: str
    designation: str
    employment_type: str
    gender: str
    blood_group: str
    years_of_experience: int
    middle_name: Optional[str] = None
    remark: Optional[str] = None

    def validate(self) -> "EmployeeRecord":
        self.emp_id = _check_int("emp_id", self.emp_id, 1)
        _check_text("first_name", self.first_name, 50, required=True)
        self.middle_name = _check_text("middle_name", self.middle_name, 50, required=False)
        _check_text("last_name", self.last_name, 50, required=True)
        _check_digits("emp_contact_no", self.emp_contact_no, 15)
        self.date_of_birth = _check_date("date_of_birth", self.date_of_birth)
        _check_text("dept", self.dept, 20, required=True)
        self.date_of_joining = _check_date("date_of_joining", self.date_of_joining)
        if self.date_of_joining < self.date_of_birth:
            raise ValidationError("date_of_joining", "date_of_joining precedes date_of_birth")
        _check_text("highest_education", self.highest_education, 20, required=True)
        _check_text("designation", self.designation, 20, required=True)
        _check_text("employment_type", self.employment_type, 20, required=True)
        _check_text("gender", self.gender, 6, required=True)
        _check_blood_group(self.blood_group)
        self.years_of_experience = _check_int("years_of_experience", self.years_of_experience, 0)
        self.remark = _check_text("remark", self.remark, 255, required=False)
        return self


@dataclass
class StudentRecord:
    student_id: int
    first_name: str
    last_name: str
    student_contact_no: str
    date_of_birth: datetime.date
    branch: str
    date_of_admission: datetime.date
    session: str
    semester: int
    aicte_course_id: int
    gender: str
    blood_group: str
    middle_name: Optional[str] = None
    remark: Optional[str] = None

    def validate(self) -> "StudentRecord":
        self.student_id = _check_int("student_id", self.student_id, 1)
        _check_text("first_name", self.first_name, 50, required=True)
        self.middle_name = _check_text("middle_name", self.middle_name, 50, required=False)
        _check_text("last_name", self.last_name, 50, required=True)
        _check_digits("student_contact_no", self.student_contact_no, 15)
        self.date_of_birth = _check_date("date_of_birth", self.date_of_birth)
        _check_text("branch", self.branch, 20, required=True)
        self.date_of_admission = _check_date("date_of_admission", self.date_of_admission)
        _check_text("session", self.session, 20, required=True)
        self.semester = _check_int("semester", self.semester, 1, MAX_SEMESTER)
        self.aicte_course_id = _check_int("aicte_course_id", self.aicte_course_id, 1)
        _check_text("gender", self.gender, 6, required=True)
        _check_blood_group(self.blood_group)
        self.remark = _check_text("remark", self.remark, 255, required=False)
        return self


# Column layout of the backing tables, in declaration order.  SQL types
# are PostgreSQL dialect; the embedded engine accepts them verbatim.
# Contact numbers are digit strings, not numerics, so leading zeros and
# 15-digit numbers survive.  The photo column is added by a later migration, not
# listed here.
EMP_COLUMNS = [
    ("emp_id", "bigint PRIMARY KEY"),
    ("first_name", "varchar(50) NOT NULL"),
    ("middle_name", "varchar(50)"),
    ("last_name", "varchar(50) NOT NULL"),
    ("emp_contact_no", "varchar(15) NOT NULL"),
    ("date_of_birth", "date NOT NULL"),
    ("dept", "varchar(20) NOT NULL"),
    ("date_of_joining", "date NOT NULL"),
    ("highest_education", "varchar(20) NOT NULL"),
    ("designation", "varchar(20) NOT NULL"),
    ("employment_type", "varchar(20) NOT NULL"),
    ("gender", "varchar(6) NOT NULL"),
    ("blood_group", "varchar(6) NOT NULL"),
    ("years_of_experience", "integer NOT NULL"),
    ("remark", "varchar(255)"),
]

STU_COLUMNS = [
    ("student_id", "bigint PRIMARY KEY"),
    ("first_name", "varchar(50) NOT NULL"),
    ("middle_name", "varchar(50)"),
    ("last_name", "varchar(50) NOT NULL"),
    ("student_contact_no", "varchar(15) NOT NULL"),
    ("date_of_birth", "date NOT NULL"),
    ("branch", "varchar(20) NOT NULL"),
    ("date_of_admission", "date NOT NULL"),
    ("session", "varchar(20) NOT NULL"),
    ("semester", "integer NOT NULL"),
    ("aicte_course_id", "bigint NOT NULL"),
    ("gender", "varchar(6) NOT NULL"),
    ("blood_group", "varchar(6) NOT NULL"),
    ("remark", "varchar(255)"),
]

TABLE_COLUMNS = {EMP_TABLE: EMP_COLUMNS, STU_TABLE: STU_COLUMNS}
TABLE_ID_COLUMN = {EMP_TABLE: "emp_id", STU_TABLE: "student_id"}
TABLE_RECORD = {EMP_TABLE: EmployeeRecord, STU_TABLE: StudentRecord}


def record_fields(table: str) -> list[str]:
    """Canonical field order = column order of the backing table."""
    return [name for name, _ in TABLE_COLUMNS[table]]


def record_to_row(rec) -> list:
    """Values in column order, dates as ISO strings."""
    out = []
    for f in record_fields(EMP_TABLE if isinstance(rec, EmployeeRecord) else STU_TABLE):
        v = getattr(rec, f)
        if isinstance(v, datetime.date):
            v = v.isoformat()
        out.append(v)
    return out


def row_to_record(table: str, row) -> Any:
    cls = TABLE_RECORD[table]
    names = record_fields(table)
    kwargs = dict(zip(names, row))
    for f in dc_fields(cls):
        if f.type in ("datetime.date",) or "date" in f.name:
            v = kwargs.get(f.name)
            if isinstance(v, str):
                kwargs[f.name] = datetime.date.fromisoformat(v)
    return cls(**kwargs)
