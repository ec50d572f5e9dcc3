"""Photo persistence under two interchangeable strategies.

Large-object mode keeps bytes in the server-side object catalog and the
row's ``myphoto`` column holds only the object identifier; inline mode
writes the bytes into the column directly.  Every operation is one
transaction, so a failed store leaves neither an unlinked object nor a
dangling column value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import LO_CHUNK_SIZE, StorageStrategy
from .db import DatabaseAdapter
from .errors import (
    DanglingPhotoError,
    NotFoundError,
    OversizeError,
    StrategyError,
    ValidationError,
)
from .imaging import ImageBlob, decode, probe
from .model import PHOTO_COLUMN, TABLE_COLUMNS, TABLE_ID_COLUMN

VACUUM_LOCK = "rollcall_vacuum"


@dataclass(frozen=True)
class PhotoRef:
    strategy: StorageStrategy
    table: str
    record_id: int
    object_id: Optional[int] = None   # present iff strategy is LARGE_OBJECT

    def __post_init__(self):
        has_oid = self.object_id is not None
        if has_oid != (self.strategy == StorageStrategy.LARGE_OBJECT):
            raise ValidationError("object_id", "object_id present iff large-object strategy")


def _check_table(table: str) -> str:
    if table not in TABLE_COLUMNS:
        raise NotFoundError(f"unknown table {table!r}")
    return TABLE_ID_COLUMN[table]


def _row_photo(db: DatabaseAdapter, table: str, id_col: str, record_id: int):
    rows = db.query(
        f"SELECT {PHOTO_COLUMN} FROM {table} WHERE {id_col} = ?", (record_id,)
    )
    if not rows:
        raise NotFoundError(f"no row {record_id} in {table}")
    return rows[0][0]


def _chunks(data: bytes):
    for off in range(0, len(data), LO_CHUNK_SIZE):
        yield data[off:off + LO_CHUNK_SIZE]


def store_photo(
    db: DatabaseAdapter,
    strategy: StorageStrategy,
    table: str,
    record_id: int,
    blob: ImageBlob,
    max_bytes: int = 16 * 1024 * 1024,
) -> PhotoRef:
    id_col = _check_table(table)
    if not blob.data:
        raise ValidationError("photo", "invalid image: empty payload")
    if len(blob.data) > max_bytes:
        raise OversizeError(f"photo exceeds {max_bytes} bytes")
    checked = decode(blob.data)
    if (checked.format, checked.width_px, checked.height_px) != (
            blob.format, blob.width_px, blob.height_px):
        raise ValidationError("photo", "declared format/dimensions do not match content")

    with db.transaction():
        old = _row_photo(db, table, id_col, record_id)
        if strategy == StorageStrategy.LARGE_OBJECT:
            oid = db.lo_create(_chunks(blob.data))
            db.execute(
                f"UPDATE {table} SET {PHOTO_COLUMN} = ? WHERE {id_col} = ?",
                (oid, record_id),
            )
            # the cleanup trigger unlinks the old object; this covers
            # pre-trigger deployments (idempotent)
            if old is not None:
                db.lo_unlink(old)
            return PhotoRef(strategy, table, record_id, oid)
        db.execute(
            f"UPDATE {table} SET {PHOTO_COLUMN} = ? WHERE {id_col} = ?",
            (blob.data, record_id),
        )
        return PhotoRef(strategy, table, record_id)


def fetch_photo(
    db: DatabaseAdapter, strategy: StorageStrategy, table: str, record_id: int
) -> Optional[ImageBlob]:
    id_col = _check_table(table)
    stored = _row_photo(db, table, id_col, record_id)
    if stored is None:
        return None
    if strategy == StorageStrategy.LARGE_OBJECT:
        try:
            data = b"".join(db.lo_read(int(stored)))
        except KeyError:
            raise DanglingPhotoError(
                f"{table} row {record_id} references missing object {stored}"
            ) from None
        return probe(data)
    return probe(bytes(stored))


def delete_photo(
    db: DatabaseAdapter, strategy: StorageStrategy, table: str, record_id: int
) -> bool:
    id_col = _check_table(table)
    with db.transaction():
        stored = _row_photo(db, table, id_col, record_id)
        if stored is None:
            return False
        db.execute(
            f"UPDATE {table} SET {PHOTO_COLUMN} = NULL WHERE {id_col} = ?",
            (record_id,),
        )
        if strategy == StorageStrategy.LARGE_OBJECT:
            db.lo_unlink(int(stored))   # no-op when the trigger already did
        return True


def referenced_objects(db: DatabaseAdapter) -> set[int]:
    refs: set[int] = set()
    for table in TABLE_COLUMNS:
        cols = dict(db.list_columns(table))
        if PHOTO_COLUMN not in cols:
            continue
        refs.update(
            int(v) for (v,) in db.query(
                f"SELECT {PHOTO_COLUMN} FROM {table} WHERE {PHOTO_COLUMN} IS NOT NULL"
            )
        )
    return refs


def list_orphans(db: DatabaseAdapter, strategy: StorageStrategy) -> set[int]:
    if strategy != StorageStrategy.LARGE_OBJECT:
        raise StrategyError("orphan listing requires the large-object strategy")
    return db.lo_list() - referenced_objects(db)


def vacuum_orphans(db: DatabaseAdapter, strategy: StorageStrategy) -> int:
    """Unlink every orphaned object.  Serialized by an advisory lock so a
    concurrent vacuum fails fast instead of double-reclaiming."""
    if strategy != StorageStrategy.LARGE_OBJECT:
        raise StrategyError("vacuum requires the large-object strategy")
    with db.advisory_lock(VACUUM_LOCK):
        with db.transaction():
            orphans = list_orphans(db, strategy)
            reclaimed = 0
            for oid in orphans:
                if db.lo_unlink(oid):
                    reclaimed += 1
            return reclaimed
