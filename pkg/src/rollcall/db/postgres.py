"""PostgreSQL engine, using the server's native large-object facility.

Requires psycopg2.  The driver is imported lazily so installations that
only use the embedded engine do not need it.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Any, Iterable, Iterator, Sequence

from ..config import ConnectionConfig, LO_CHUNK_SIZE
from ..errors import ConfigError
from .adapter import DatabaseAdapter

# stable 64-bit namespace for pg_advisory locks
_LOCK_NAMESPACE = 0x726F6C6C  # "roll"


def _lock_key(key: str) -> int:
    # stable across processes, unlike hash()
    import zlib

    return zlib.crc32(key.encode("utf-8")) & 0x7FFFFFFF


class PostgresAdapter(DatabaseAdapter):
    def __init__(self, config: ConnectionConfig):
        try:
            import psycopg2  # noqa: F401
        except ImportError as exc:
            raise ConfigError(
                "engine 'postgres' requires the psycopg2 driver (pip install psycopg2-binary)"
            ) from exc
        self._psycopg2 = psycopg2
        self.config = config
        self.conn = psycopg2.connect(
            host=config.host,
            port=config.port,
            dbname=config.database,
            user=config.user,
            password=config.password,
            sslmode="require" if config.tls else "prefer",
        )
        self.conn.autocommit = True

    @staticmethod
    def _qmark(sql: str) -> str:
        return sql.replace("?", "%s")

    def execute(self, sql: str, params: Sequence[Any] = ()) -> int:
        with self.conn.cursor() as cur:
            cur.execute(self._qmark(sql), tuple(params))
            return cur.rowcount

    def query(self, sql: str, params: Sequence[Any] = ()) -> list[tuple]:
        with self.conn.cursor() as cur:
            cur.execute(self._qmark(sql), tuple(params))
            return cur.fetchall()

    @contextmanager
    def transaction(self):
        if not self.conn.autocommit:
            yield self
            return
        self.conn.autocommit = False
        try:
            yield self
        except BaseException:
            self.conn.rollback()
            raise
        else:
            self.conn.commit()
        finally:
            self.conn.autocommit = True

    # -- large objects -------------------------------------------------

    def lo_create(self, chunks: Iterable[bytes]) -> int:
        lobj = self.conn.lobject(0, "wb")
        for chunk in chunks:
            lobj.write(chunk)
        oid = lobj.oid
        lobj.close()
        return oid

    def lo_read(self, oid: int) -> Iterator[bytes]:
        try:
            lobj = self.conn.lobject(oid, "rb")
        except self._psycopg2.OperationalError as exc:
            raise KeyError(oid) from exc
        try:
            while True:
                chunk = lobj.read(LO_CHUNK_SIZE)
                if not chunk:
                    break
                yield chunk
        finally:
            lobj.close()

    def lo_exists(self, oid: int) -> bool:
        return bool(self.query("SELECT 1 FROM pg_largeobject_metadata WHERE oid = ?", (oid,)))

    def lo_unlink(self, oid: int) -> bool:
        if not self.lo_exists(oid):
            return False
        self.execute("SELECT lo_unlink(?)", (oid,))
        return True

    def lo_list(self) -> set[int]:
        return {r[0] for r in self.query("SELECT oid FROM pg_largeobject_metadata")}

    # -- DDL and introspection ----------------------------------------

    def run_ddl(self, statements: Sequence[str]) -> None:
        with self.transaction():
            for stmt in statements:
                self.execute(stmt)

    def list_tables(self) -> set[str]:
        rows = self.query(
            "SELECT tablename FROM pg_tables WHERE schemaname = 'public'"
        )
        return {r[0] for r in rows}

    def list_columns(self, table: str) -> list[tuple[str, str]]:
        rows = self.query(
            "SELECT column_name, COALESCE(domain_name, data_type)"
            " FROM information_schema.columns"
            " WHERE table_schema = 'public' AND table_name = ?"
            " ORDER BY ordinal_position",
            (table,),
        )
        return [(r[0], r[1].lower()) for r in rows]

    def domain_underlying(self, name: str) -> str | None:
        rows = self.query(
            "SELECT bt.typname FROM pg_type d JOIN pg_type bt ON d.typbasetype = bt.oid"
            " WHERE d.typtype = 'd' AND d.typname = ?",
            (name.lower(),),
        )
        return rows[0][0] if rows else None

    # -- advisory locks ------------------------------------------------

    def try_advisory_lock(self, key: str) -> bool:
        rows = self.query(
            "SELECT pg_try_advisory_lock(?, ?)", (_LOCK_NAMESPACE & 0x7FFFFFFF, _lock_key(key))
        )
        return bool(rows[0][0])

    def release_advisory_lock(self, key: str) -> None:
        self.query(
            "SELECT pg_advisory_unlock(?, ?)", (_LOCK_NAMESPACE & 0x7FFFFFFF, _lock_key(key))
        )

    def close(self) -> None:
        self.conn.close()
