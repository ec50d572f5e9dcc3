"""Database adapter interface.

Two engines are supported: PostgreSQL (the deployment target, using its
native large-object facility) and an embedded SQLite engine that emulates
the large-object catalog, domains and advisory locks so the full stack can
run and be tested without a database server.

All SQL passed through the adapter uses qmark (?) placeholders; adapters
translate to their driver's style.  DDL is authored in PostgreSQL dialect;
the SQLite adapter translates the few constructs SQLite lacks.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Any, Iterable, Iterator, Sequence

from ..config import ConnectionConfig
from ..errors import ConfigError


class DatabaseAdapter(ABC):
    """One adapter wraps one connection.  Concurrent workers each open
    their own adapter; every operation runs in a single transaction."""

    @abstractmethod
    def execute(self, sql: str, params: Sequence[Any] = ()) -> int:
        """Run a statement, return affected row count."""

    @abstractmethod
    def query(self, sql: str, params: Sequence[Any] = ()) -> list[tuple]:
        """Run a query, return all rows."""

    @abstractmethod
    def transaction(self) -> Any:
        """Context manager for an atomic write transaction."""

    # -- large objects -------------------------------------------------

    @abstractmethod
    def lo_create(self, chunks: Iterable[bytes]) -> int:
        """Create a large object from chunks, return its oid.
        Must be called inside a transaction."""

    @abstractmethod
    def lo_read(self, oid: int) -> Iterator[bytes]:
        """Stream a large object's content.  Raises KeyError if absent."""

    @abstractmethod
    def lo_exists(self, oid: int) -> bool: ...

    @abstractmethod
    def lo_unlink(self, oid: int) -> bool:
        """Remove a large object; False if it did not exist (idempotent)."""

    @abstractmethod
    def lo_list(self) -> set[int]:
        """Enumerate every large object in the catalog."""

    # -- DDL and introspection ----------------------------------------

    @abstractmethod
    def run_ddl(self, statements: Sequence[str]) -> None:
        """Execute DDL statements (PostgreSQL dialect) in one transaction."""

    @abstractmethod
    def list_tables(self) -> set[str]: ...

    @abstractmethod
    def list_columns(self, table: str) -> list[tuple[str, str]]:
        """(column name, declared type) pairs; empty if table absent."""

    @abstractmethod
    def domain_underlying(self, name: str) -> str | None:
        """Base type of a domain, or None if the domain does not exist."""

    # -- advisory locks ------------------------------------------------

    @abstractmethod
    def try_advisory_lock(self, key: str) -> bool: ...

    @abstractmethod
    def release_advisory_lock(self, key: str) -> None: ...

    @contextmanager
    def advisory_lock(self, key: str):
        from ..errors import AdvisoryLockBusyError

        if not self.try_advisory_lock(key):
            raise AdvisoryLockBusyError(f"advisory lock {key!r} is held elsewhere")
        try:
            yield
        finally:
            self.release_advisory_lock(key)

    @abstractmethod
    def close(self) -> None: ...

    def __enter__(self) -> "DatabaseAdapter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def connect(config: ConnectionConfig) -> DatabaseAdapter:
    if config.engine == "sqlite":
        from .sqlite import SQLiteAdapter

        return SQLiteAdapter(config)
    if config.engine == "postgres":
        from .postgres import PostgresAdapter

        return PostgresAdapter(config)
    raise ConfigError(f"unknown database engine {config.engine!r}")
