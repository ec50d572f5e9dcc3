import hashlib

import pytest

from rollcall import records, storage
from rollcall.config import StorageStrategy
from rollcall.errors import (
    AdvisoryLockBusyError,
    DanglingPhotoError,
    NotFoundError,
    OversizeError,
    StrategyError,
    ValidationError,
)
from rollcall.imaging import ImageBlob, decode
from rollcall.model import EMP_TABLE

from conftest import employee, make_jpeg, make_png

LO = StorageStrategy.LARGE_OBJECT


def seed_row(db, emp_id=9):
    records.create_record(db, EMP_TABLE, employee(emp_id=emp_id))


class TestStoreFetch:
    def test_round_trip_checksum(self, db, strategy, png_blob):
        seed_row(db)
        ref = storage.store_photo(db, strategy, EMP_TABLE, 9, png_blob)
        assert ref.record_id == 9
        assert (ref.object_id is not None) == (strategy == LO)
        fetched = storage.fetch_photo(db, strategy, EMP_TABLE, 9)
        assert hashlib.sha256(fetched.data).digest() == hashlib.sha256(png_blob.data).digest()

    def test_jpeg_round_trip(self, db, strategy):
        seed_row(db)
        blob = decode(make_jpeg(123, 77))
        storage.store_photo(db, strategy, EMP_TABLE, 9, blob)
        fetched = storage.fetch_photo(db, strategy, EMP_TABLE, 9)
        assert fetched.data == blob.data
        assert (fetched.format, fetched.width_px, fetched.height_px) == ("JPEG", 123, 77)

    def test_fetch_fresh_row_absent(self, db, strategy):
        seed_row(db)
        assert storage.fetch_photo(db, strategy, EMP_TABLE, 9) is None

    def test_store_on_missing_row(self, db, strategy, png_blob):
        with pytest.raises(NotFoundError):
            storage.store_photo(db, strategy, EMP_TABLE, 424242, png_blob)

    def test_empty_blob_rejected(self, db, strategy):
        seed_row(db)
        blob = ImageBlob(data=b"", format="PNG", width_px=1, height_px=1)
        with pytest.raises(ValidationError):
            storage.store_photo(db, strategy, EMP_TABLE, 9, blob)

    def test_mismatched_declaration_rejected(self, db, strategy):
        seed_row(db)
        blob = ImageBlob(data=make_png(10, 10), format="PNG", width_px=99, height_px=99)
        with pytest.raises(ValidationError):
            storage.store_photo(db, strategy, EMP_TABLE, 9, blob)

    def test_oversize_rejected(self, db, strategy, png_blob):
        seed_row(db)
        with pytest.raises(OversizeError):
            storage.store_photo(db, strategy, EMP_TABLE, 9, png_blob, max_bytes=100)

    def test_store_twice_leaves_one_object(self, lo_db, png_blob):
        seed_row(lo_db)
        storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        assert len(lo_db.lo_list()) == 1
        assert lo_db.lo_list() == storage.referenced_objects(lo_db)

    def test_dangling_reference_is_loud(self, lo_db, png_blob):
        seed_row(lo_db)
        ref = storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        # out-of-band catalog tampering
        lo_db.execute("DELETE FROM _rc_lo_chunks WHERE oid = ?", (ref.object_id,))
        lo_db.execute("DELETE FROM _rc_large_objects WHERE oid = ?", (ref.object_id,))
        with pytest.raises(DanglingPhotoError):
            storage.fetch_photo(lo_db, LO, EMP_TABLE, 9)

    def test_atomicity_on_midway_failure(self, lo_db, png_blob, monkeypatch):
        seed_row(lo_db)
        before = lo_db.lo_list()

        def boom(sql, params=()):
            if sql.startswith("UPDATE"):
                raise RuntimeError("induced failure")
            return original(sql, params)

        original = lo_db.execute
        monkeypatch.setattr(lo_db, "execute", boom)
        with pytest.raises(RuntimeError):
            storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        monkeypatch.undo()
        assert lo_db.lo_list() == before
        assert storage.fetch_photo(lo_db, LO, EMP_TABLE, 9) is None


class TestDelete:
    def test_delete_inverts_store(self, db, strategy, png_blob):
        seed_row(db)
        storage.store_photo(db, strategy, EMP_TABLE, 9, png_blob)
        assert storage.delete_photo(db, strategy, EMP_TABLE, 9) is True
        assert storage.fetch_photo(db, strategy, EMP_TABLE, 9) is None
        if strategy == LO:
            assert db.lo_list() == set()

    def test_delete_photoless_row(self, db, strategy):
        seed_row(db)
        assert storage.delete_photo(db, strategy, EMP_TABLE, 9) is False

    def test_delete_then_no_orphans(self, lo_db, png_blob):
        seed_row(lo_db)
        storage.store_photo(lo_db, LO, EMP_TABLE, 9, png_blob)
        storage.delete_photo(lo_db, LO, EMP_TABLE, 9)
        assert storage.list_orphans(lo_db, LO) == set()


class TestOrphans:
    def test_fresh_database_empty(self, lo_db):
        assert storage.list_orphans(lo_db, LO) == set()

    def test_unlinked_object_detected(self, lo_db):
        with lo_db.transaction():
            oid = lo_db.lo_create([b"loose bytes"])
        assert storage.list_orphans(lo_db, LO) == {oid}

    def test_stored_photos_not_orphans(self, lo_db, png_blob):
        for emp_id in (1, 2, 3):
            seed_row(lo_db, emp_id)
            storage.store_photo(lo_db, LO, EMP_TABLE, emp_id, png_blob)
        assert storage.list_orphans(lo_db, LO) == set()

    def test_wrong_strategy_rejected(self, lo_db):
        with pytest.raises(StrategyError):
            storage.list_orphans(lo_db, StorageStrategy.INLINE_BYTES)
        with pytest.raises(StrategyError):
            storage.vacuum_orphans(lo_db, StorageStrategy.INLINE_BYTES)

    def test_vacuum_reclaims_exactly_the_orphans(self, lo_db, png_blob):
        for emp_id in (1, 2, 3, 4, 5):
            seed_row(lo_db, emp_id)
            storage.store_photo(lo_db, LO, EMP_TABLE, emp_id, png_blob)
        with lo_db.transaction():
            lo_db.lo_create([b"orphan one"])
            lo_db.lo_create([b"orphan two"])
        assert storage.vacuum_orphans(lo_db, LO) == 2
        assert storage.list_orphans(lo_db, LO) == set()
        for emp_id in (1, 2, 3, 4, 5):
            fetched = storage.fetch_photo(lo_db, LO, EMP_TABLE, emp_id)
            assert fetched.data == png_blob.data

    def test_vacuum_clean_database(self, lo_db):
        assert storage.vacuum_orphans(lo_db, LO) == 0

    def test_concurrent_vacuum_blocked(self, lo_cfg, lo_db):
        from rollcall.db import connect

        with connect(lo_cfg) as other:
            assert other.try_advisory_lock(storage.VACUUM_LOCK)
            try:
                with pytest.raises(AdvisoryLockBusyError):
                    storage.vacuum_orphans(lo_db, LO)
            finally:
                other.release_advisory_lock(storage.VACUUM_LOCK)


def test_strategy_equivalence_over_sequence(tmp_path, png_blob):
    """Identical operation sequences observe identical externally visible
    results under both strategies."""
    from rollcall import schema
    from rollcall.config import ConnectionConfig
    from rollcall.db import connect

    observations = {}
    second = decode(make_png(64, 64, (10, 200, 30)))
    for strategy in StorageStrategy:
        config = ConnectionConfig(engine="sqlite",
                                  path=str(tmp_path / f"eq-{strategy.value}.db"))
        schema.migrate(config, strategy)
        seen = []
        with connect(config) as db:
            seed_row(db)
            seen.append(storage.fetch_photo(db, strategy, EMP_TABLE, 9) is None)
            storage.store_photo(db, strategy, EMP_TABLE, 9, png_blob)
            seen.append(storage.fetch_photo(db, strategy, EMP_TABLE, 9).data)
            storage.store_photo(db, strategy, EMP_TABLE, 9, second)
            seen.append(storage.fetch_photo(db, strategy, EMP_TABLE, 9).data)
            seen.append(storage.delete_photo(db, strategy, EMP_TABLE, 9))
            seen.append(storage.fetch_photo(db, strategy, EMP_TABLE, 9) is None)
        observations[strategy] = seen
    assert observations[StorageStrategy.LARGE_OBJECT] == observations[StorageStrategy.INLINE_BYTES]
