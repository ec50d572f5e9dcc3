"""DDL generation, versioned migrations and schema verification.

The large-object deployment declares a domain ``lo`` over the object
identifier type once, then adds a ``myphoto lo`` column to each
photo-bearing table.  The inline deployment uses ``bytea`` columns and no
domain.  Applied versions are tracked in a ledger table so migration is
repeatable and idempotent.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field

from .config import ConnectionConfig, StorageStrategy
from .db import DatabaseAdapter, connect
from .errors import MigrationError, VersionRegressionError
from .model import EMP_TABLE, LO_DOMAIN, PHOTO_COLUMN, STU_TABLE, TABLE_COLUMNS

PHOTO_TABLES = [EMP_TABLE, STU_TABLE]
LEDGER_TABLE = "rollcall_schema_version"
MIGRATE_LOCK = "rollcall_migrate"


@dataclass(frozen=True)
class MigrationScript:
    version: int
    description: str
    statements: tuple[str, ...]

    def filename(self) -> str:
        return f"V{self.version}__{self.description}.sql"


@dataclass
class SchemaReport:
    applied_versions: list[int] = field(default_factory=list)
    missing_objects: list[str] = field(default_factory=list)
    photo_columns: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing_objects


def _create_table_sql(table: str) -> str:
    cols = ",\n  ".join(f"{name} {sqltype}" for name, sqltype in TABLE_COLUMNS[table])
    return f"CREATE TABLE {table} (\n  {cols}\n);"


def generate_ddl(strategy: StorageStrategy) -> list[MigrationScript]:
    """Deterministic, pure. The ``lo`` domain statement appears exactly
    once for the large-object strategy and never for inline bytes."""
    if strategy == StorageStrategy.LARGE_OBJECT:
        return [
            MigrationScript(1, "create_lo_domain", (f"CREATE DOMAIN {LO_DOMAIN} AS oid;",)),
            MigrationScript(2, "create_tables",
                            tuple(_create_table_sql(t) for t in PHOTO_TABLES)),
            MigrationScript(3, "add_photo_columns", tuple(
                f"ALTER TABLE {t} ADD COLUMN {PHOTO_COLUMN} {LO_DOMAIN};"
                for t in PHOTO_TABLES)),
            MigrationScript(4, "install_photo_cleanup_triggers",
                            ("CREATE EXTENSION IF NOT EXISTS lo;",) + tuple(
                f"CREATE TRIGGER {t}_photo_cleanup BEFORE UPDATE OR DELETE ON {t} "
                f"FOR EACH ROW EXECUTE FUNCTION lo_manage({PHOTO_COLUMN});"
                for t in PHOTO_TABLES)),
        ]
    return [
        MigrationScript(1, "create_tables",
                        tuple(_create_table_sql(t) for t in PHOTO_TABLES)),
        MigrationScript(2, "add_photo_columns", tuple(
            f"ALTER TABLE {t} ADD COLUMN {PHOTO_COLUMN} bytea;"
            for t in PHOTO_TABLES)),
    ]


def write_sql_files(scripts: list[MigrationScript], directory) -> list[str]:
    """One UTF-8 file per version, V<version>__<description>.sql."""
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for script in scripts:
        path = directory / script.filename()
        path.write_text("\n".join(script.statements) + "\n", encoding="utf-8")
        written.append(str(path))
    return written


def _ensure_ledger(db: DatabaseAdapter) -> None:
    db.execute(
        f"CREATE TABLE IF NOT EXISTS {LEDGER_TABLE} ("
        " version INTEGER PRIMARY KEY,"
        " description varchar(100) NOT NULL,"
        " applied_at varchar(40) NOT NULL)"
    )


def applied_versions(db: DatabaseAdapter) -> list[int]:
    _ensure_ledger(db)
    return sorted(v for (v,) in db.query(f"SELECT version FROM {LEDGER_TABLE}"))


def migrate(
    config: ConnectionConfig,
    strategy: StorageStrategy,
    target_version: int | str = "latest",
) -> SchemaReport:
    """Apply pending scripts up to target, one transaction per script.
    Single-writer: serialized via an advisory lock."""
    scripts = generate_ddl(strategy)
    if target_version == "latest":
        target = scripts[-1].version
    else:
        target = int(target_version)
    if target < 0 or target > scripts[-1].version:
        raise MigrationError(f"unknown target version {target}")

    with connect(config) as db:
        with db.advisory_lock(MIGRATE_LOCK):
            _ensure_ledger(db)
            done = applied_versions(db)
            current = max(done) if done else 0
            if target < current:
                raise VersionRegressionError(
                    f"version regression: current {current}, requested {target}"
                )
            for script in scripts:
                if script.version <= current or script.version > target:
                    continue
                with db.transaction():
                    db.run_ddl(script.statements)
                    db.execute(
                        f"INSERT INTO {LEDGER_TABLE} (version, description, applied_at)"
                        " VALUES (?, ?, ?)",
                        (script.version, script.description,
                         datetime.datetime.now(datetime.timezone.utc).isoformat()),
                    )
        return verify_schema(config, strategy, db=db)


def verify_schema(
    config: ConnectionConfig,
    strategy: StorageStrategy,
    db: DatabaseAdapter | None = None,
) -> SchemaReport:
    """Introspect the catalog against the expected objects; resolve photo
    columns through the domain registry to their underlying type."""
    own = db is None
    if own:
        db = connect(config)
    try:
        report = SchemaReport(applied_versions=applied_versions(db))
        tables = db.list_tables()
        large = strategy == StorageStrategy.LARGE_OBJECT

        if large and db.domain_underlying(LO_DOMAIN) is None:
            report.missing_objects.append(LO_DOMAIN)

        for table in PHOTO_TABLES:
            if table not in tables:
                report.missing_objects.append(table)
                continue
            cols = dict(db.list_columns(table))
            for name, _ in TABLE_COLUMNS[table]:
                if name not in cols:
                    report.missing_objects.append(f"{table}.{name}")
            if PHOTO_COLUMN not in cols:
                report.missing_objects.append(f"{table}.{PHOTO_COLUMN}")
                continue
            declared = cols[PHOTO_COLUMN]
            resolved = db.domain_underlying(declared) or declared
            report.photo_columns.append((table, PHOTO_COLUMN, resolved))
        return report
    finally:
        if own:
            db.close()
