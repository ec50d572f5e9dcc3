"""CRUD and CSV import/export for employee and student records.

All writes validate first, persist second; the photo column is never
touched by record updates.  Listing is ordered by id and paginated; the
returned total ignores paging.
"""

from __future__ import annotations

import csv
import datetime
import io
import sqlite3
from dataclasses import dataclass, field

from .db import DatabaseAdapter
from .errors import DuplicateError, NotFoundError, ValidationError
from .model import (
    EMP_TABLE,
    STU_TABLE,
    TABLE_COLUMNS,
    TABLE_ID_COLUMN,
    record_fields,
    record_to_row,
    row_to_record,
)

MAX_PAGE_LIMIT = 500

LIST_FILTERS = {
    EMP_TABLE: ("dept", "designation", "employment_type"),
    STU_TABLE: ("branch", "session", "semester"),
}

_INT_FIELDS = {"emp_id", "student_id", "years_of_experience", "semester", "aicte_course_id"}


def _select_cols(table: str) -> str:
    return ", ".join(record_fields(table))


def create_record(db: DatabaseAdapter, table: str, rec) -> int:
    rec.validate()
    id_col = TABLE_ID_COLUMN[table]
    rec_id = getattr(rec, id_col)
    cols = record_fields(table)
    placeholders = ", ".join("?" for _ in cols)
    try:
        with db.transaction():
            db.execute(
                f"INSERT INTO {table} ({', '.join(cols)}) VALUES ({placeholders})",
                record_to_row(rec),
            )
    except sqlite3.IntegrityError as exc:
        raise DuplicateError(f"duplicate id: {id_col} {rec_id} already exists") from exc
    except Exception as exc:
        if "duplicate" in str(exc).lower() or "unique" in str(exc).lower():
            raise DuplicateError(f"duplicate id: {id_col} {rec_id} already exists") from exc
        raise
    return rec_id


def get_record(db: DatabaseAdapter, table: str, rec_id: int):
    id_col = TABLE_ID_COLUMN[table]
    rows = db.query(
        f"SELECT {_select_cols(table)} FROM {table} WHERE {id_col} = ?", (rec_id,)
    )
    return row_to_record(table, rows[0]) if rows else None


def update_record(db: DatabaseAdapter, table: str, rec) -> bool:
    """Full-row replacement keyed on the record's id; photo untouched."""
    rec.validate()
    id_col = TABLE_ID_COLUMN[table]
    cols = [c for c in record_fields(table) if c != id_col]
    values = dict(zip(record_fields(table), record_to_row(rec)))
    assignments = ", ".join(f"{c} = ?" for c in cols)
    with db.transaction():
        n = db.execute(
            f"UPDATE {table} SET {assignments} WHERE {id_col} = ?",
            [values[c] for c in cols] + [values[id_col]],
        )
    return n > 0


def delete_record(db: DatabaseAdapter, table: str, rec_id: int) -> bool:
    """Row removal; the schema's cleanup trigger unlinks any photo."""
    id_col = TABLE_ID_COLUMN[table]
    with db.transaction():
        n = db.execute(f"DELETE FROM {table} WHERE {id_col} = ?", (rec_id,))
    return n > 0


def list_records(
    db: DatabaseAdapter,
    table: str,
    filters: dict | None = None,
    offset: int = 0,
    limit: int = 100,
):
    """Returns (records, total).  Deterministic id order; total ignores
    paging."""
    if not 1 <= limit <= MAX_PAGE_LIMIT:
        raise ValidationError("limit", f"limit must be in 1..{MAX_PAGE_LIMIT}")
    if offset < 0:
        raise ValidationError("offset", "offset must be non-negative")
    id_col = TABLE_ID_COLUMN[table]
    where, params = "", []
    if filters:
        allowed = LIST_FILTERS[table]
        bad = [k for k in filters if k not in allowed]
        if bad:
            raise ValidationError(bad[0], f"unknown filter {bad[0]!r}")
        clauses = [f"{k} = ?" for k in filters]
        where = " WHERE " + " AND ".join(clauses)
        params = list(filters.values())
    total = db.query(f"SELECT COUNT(*) FROM {table}{where}", params)[0][0]
    rows = db.query(
        f"SELECT {_select_cols(table)} FROM {table}{where}"
        f" ORDER BY {id_col} LIMIT ? OFFSET ?",
        params + [limit, offset],
    )
    return [row_to_record(table, r) for r in rows], total


@dataclass
class ImportReport:
    inserted: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)


def _coerce(table: str, raw: dict) -> object:
    kwargs = {}
    for name, value in raw.items():
        if value == "" or value is None:
            kwargs[name] = None
            continue
        if name in _INT_FIELDS:
            try:
                kwargs[name] = int(value)
            except ValueError:
                raise ValidationError(name, f"{name} must be an integer") from None
        else:
            kwargs[name] = value
    cls = {EMP_TABLE: "EmployeeRecord", STU_TABLE: "StudentRecord"}[table]
    from . import model

    record_cls = getattr(model, cls)
    required = {f for f in record_fields(table) if f not in ("middle_name", "remark")}
    for f in required:
        if kwargs.get(f) is None:
            raise ValidationError(f, f"{f} is required")
    return record_cls(**kwargs)


def import_csv(db: DatabaseAdapter, table: str, stream: str) -> ImportReport:
    """Header row must carry the canonical field names.  Each data row is
    validated and inserted in its own transaction; failures are reported
    with their physical line number (header is line 1)."""
    reader = csv.reader(io.StringIO(stream))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("csv", "empty CSV: missing header row") from None
    expected = record_fields(table)
    if [h.strip() for h in header] != expected:
        raise ValidationError("csv", f"header must be exactly: {','.join(expected)}")
    report = ImportReport()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(v == "" for v in row):
            continue
        if len(row) != len(expected):
            report.rejected.append((lineno, f"expected {len(expected)} fields, got {len(row)}"))
            continue
        try:
            rec = _coerce(table, dict(zip(expected, row)))
            create_record(db, table, rec)
            report.inserted += 1
        except (ValidationError, DuplicateError) as exc:
            report.rejected.append((lineno, exc.detail))
    return report


def export_csv(db: DatabaseAdapter, table: str) -> str:
    """RFC 4180 CSV, canonical header, rows in id order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record_fields(table))
    offset = 0
    while True:
        recs, total = list_records(db, table, offset=offset, limit=MAX_PAGE_LIMIT)
        for rec in recs:
            row = record_to_row(rec)
            writer.writerow(["" if v is None else v for v in row])
        offset += len(recs)
        if offset >= total or not recs:
            break
    return buf.getvalue()


def table_for(kind: str) -> str:
    if kind in ("employee", "employees", EMP_TABLE):
        return EMP_TABLE
    if kind in ("student", "students", STU_TABLE):
        return STU_TABLE
    raise NotFoundError(f"unknown table {kind!r}")
