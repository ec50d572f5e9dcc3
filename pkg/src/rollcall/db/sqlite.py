"""Embedded SQLite engine.

Emulates the PostgreSQL facilities the rest of the stack relies on:

- a large-object catalog (``_rc_large_objects`` + ``_rc_lo_chunks``) with
  chunked content, standing in for ``pg_largeobject``;
- domains, recorded in ``_rc_domains`` (SQLite keeps unknown declared
  column types verbatim, so ``ADD COLUMN myphoto lo`` works as-is and
  introspection can resolve ``lo`` through the registry);
- advisory locks via a lock table written in autocommit mode;
- the photo-cleanup trigger, translated from the ``lo_manage`` trigger
  statement into native SQLite triggers.

WAL mode plus a generous busy timeout gives multi-connection concurrency
with serialized writers, which preserves the transactional guarantees the
storage layer needs.
"""

from __future__ import annotations

import os
import re
import sqlite3
from contextlib import contextmanager
from typing import Any, Iterable, Iterator, Sequence

from ..config import ConnectionConfig, LO_CHUNK_SIZE
from .adapter import DatabaseAdapter

_INTERNAL_PREFIXES = ("_rc_", "sqlite_")

_DOMAIN_RE = re.compile(r"^\s*CREATE\s+DOMAIN\s+(\w+)\s+AS\s+(\w+)\s*;?\s*$", re.I)
_EXTENSION_RE = re.compile(r"^\s*CREATE\s+EXTENSION\b", re.I)
_LO_TRIGGER_RE = re.compile(
    r"^\s*CREATE\s+TRIGGER\s+(\w+)\s+BEFORE\s+UPDATE\s+OR\s+DELETE\s+ON\s+(\w+)\s+"
    r"FOR\s+EACH\s+ROW\s+EXECUTE\s+FUNCTION\s+lo_manage\((\w+)\)\s*;?\s*$",
    re.I,
)


class SQLiteAdapter(DatabaseAdapter):
    def __init__(self, config: ConnectionConfig):
        self.config = config
        # check_same_thread off: an adapter is used by one request at a
        # time, but web frameworks may hop threads between dependency
        # setup and handler execution
        self.conn = sqlite3.connect(
            config.path, timeout=60.0, isolation_level=None, check_same_thread=False
        )
        self.conn.execute("PRAGMA journal_mode=WAL")
        self.conn.execute("PRAGMA busy_timeout=60000")
        self.conn.execute("PRAGMA foreign_keys=ON")
        self._bootstrap()

    def _bootstrap(self) -> None:
        with self.transaction():
            for ddl in (
                "CREATE TABLE IF NOT EXISTS _rc_large_objects ("
                " oid INTEGER PRIMARY KEY AUTOINCREMENT)",
                "CREATE TABLE IF NOT EXISTS _rc_lo_chunks ("
                " oid INTEGER NOT NULL, seq INTEGER NOT NULL, data BLOB NOT NULL,"
                " PRIMARY KEY (oid, seq))",
                "CREATE TABLE IF NOT EXISTS _rc_domains ("
                " name TEXT PRIMARY KEY, base TEXT NOT NULL)",
                "CREATE TABLE IF NOT EXISTS _rc_locks ("
                " key TEXT PRIMARY KEY, pid INTEGER NOT NULL)",
            ):
                self.conn.execute(ddl)

    # -- SQL -----------------------------------------------------------

    def execute(self, sql: str, params: Sequence[Any] = ()) -> int:
        cur = self.conn.execute(sql, tuple(params))
        return cur.rowcount

    def query(self, sql: str, params: Sequence[Any] = ()) -> list[tuple]:
        return list(self.conn.execute(sql, tuple(params)).fetchall())

    @contextmanager
    def transaction(self):
        if self.conn.in_transaction:
            # nested use: run inside the enclosing transaction
            yield self
            return
        self.conn.execute("BEGIN IMMEDIATE")
        try:
            yield self
        except BaseException:
            self.conn.execute("ROLLBACK")
            raise
        else:
            self.conn.execute("COMMIT")

    # -- large objects -------------------------------------------------

    def lo_create(self, chunks: Iterable[bytes]) -> int:
        cur = self.conn.execute("INSERT INTO _rc_large_objects DEFAULT VALUES")
        oid = cur.lastrowid
        assert oid is not None
        seq = 0
        for chunk in chunks:
            for off in range(0, len(chunk), LO_CHUNK_SIZE):
                self.conn.execute(
                    "INSERT INTO _rc_lo_chunks (oid, seq, data) VALUES (?, ?, ?)",
                    (oid, seq, chunk[off:off + LO_CHUNK_SIZE]),
                )
                seq += 1
        return oid

    def lo_read(self, oid: int) -> Iterator[bytes]:
        if not self.lo_exists(oid):
            raise KeyError(oid)
        cur = self.conn.execute(
            "SELECT data FROM _rc_lo_chunks WHERE oid = ? ORDER BY seq", (oid,)
        )
        for (data,) in cur:
            yield bytes(data)

    def lo_exists(self, oid: int) -> bool:
        row = self.conn.execute(
            "SELECT 1 FROM _rc_large_objects WHERE oid = ?", (oid,)
        ).fetchone()
        return row is not None

    def lo_unlink(self, oid: int) -> bool:
        self.conn.execute("DELETE FROM _rc_lo_chunks WHERE oid = ?", (oid,))
        cur = self.conn.execute("DELETE FROM _rc_large_objects WHERE oid = ?", (oid,))
        return cur.rowcount > 0

    def lo_list(self) -> set[int]:
        return {oid for (oid,) in self.conn.execute("SELECT oid FROM _rc_large_objects")}

    # -- DDL -----------------------------------------------------------

    def run_ddl(self, statements: Sequence[str]) -> None:
        with self.transaction():
            for stmt in statements:
                for translated in self._translate(stmt):
                    self.conn.execute(translated)

    def _translate(self, stmt: str) -> list[str]:
        m = _DOMAIN_RE.match(stmt)
        if m:
            name, base = m.group(1).lower(), m.group(2).lower()
            return [
                f"INSERT OR REPLACE INTO _rc_domains (name, base) "
                f"VALUES ('{name}', '{base}')"
            ]
        if _EXTENSION_RE.match(stmt):
            return []
        m = _LO_TRIGGER_RE.match(stmt)
        if m:
            name, table, col = m.group(1), m.group(2), m.group(3)
            cleanup = (
                f"DELETE FROM _rc_lo_chunks WHERE oid = OLD.{col};"
                f" DELETE FROM _rc_large_objects WHERE oid = OLD.{col};"
            )
            return [
                f"CREATE TRIGGER {name}_del AFTER DELETE ON {table}"
                f" FOR EACH ROW WHEN OLD.{col} IS NOT NULL"
                f" BEGIN {cleanup} END",
                f"CREATE TRIGGER {name}_upd AFTER UPDATE OF {col} ON {table}"
                f" FOR EACH ROW WHEN OLD.{col} IS NOT NULL"
                f" AND (NEW.{col} IS NULL OR NEW.{col} <> OLD.{col})"
                f" BEGIN {cleanup} END",
            ]
        return [stmt]

    # -- introspection -------------------------------------------------

    def list_tables(self) -> set[str]:
        rows = self.conn.execute(
            "SELECT name FROM sqlite_master WHERE type = 'table'"
        ).fetchall()
        return {
            name for (name,) in rows
            if not any(name.startswith(p) for p in _INTERNAL_PREFIXES)
        }

    def list_columns(self, table: str) -> list[tuple[str, str]]:
        rows = self.conn.execute(f"PRAGMA table_info({table})").fetchall()
        return [(r[1], (r[2] or "").lower()) for r in rows]

    def domain_underlying(self, name: str) -> str | None:
        row = self.conn.execute(
            "SELECT base FROM _rc_domains WHERE name = ?", (name.lower(),)
        ).fetchone()
        return row[0] if row else None

    # -- advisory locks ------------------------------------------------

    def try_advisory_lock(self, key: str) -> bool:
        try:
            self.conn.execute(
                "INSERT INTO _rc_locks (key, pid) VALUES (?, ?)", (key, os.getpid())
            )
            return True
        except sqlite3.IntegrityError:
            return False

    def release_advisory_lock(self, key: str) -> None:
        self.conn.execute("DELETE FROM _rc_locks WHERE key = ?", (key,))

    def close(self) -> None:
        self.conn.close()
