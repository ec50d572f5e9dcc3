"""Connection and deployment configuration.

A deployment is described by a ConnectionConfig (which database engine to
talk to and how to reach it) plus the storage strategy fixed at migration
time.  Config comes from a JSON file, environment variables, or both;
environment values override file values.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import ConfigError

ENV_PREFIX = "ROLLCALL_"

# Photo payload cap, enforced before any decode or write.
DEFAULT_MAX_PHOTO_BYTES = 16 * 1024 * 1024
# Large-object I/O chunk size.
LO_CHUNK_SIZE = 256 * 1024


class StorageStrategy(str, Enum):
    """How photo bytes are persisted: server-managed large objects behind
    the ``lo`` domain column, or inline byte-array columns."""

    LARGE_OBJECT = "large_object"
    INLINE_BYTES = "inline_bytes"


@dataclass
class ConnectionConfig:
    engine: str = "sqlite"          # "sqlite" or "postgres"
    path: str = "rollcall.db"       # sqlite database file
    host: str = "localhost"
    port: int = 5432
    database: str = "rollcall"
    user: str = "rollcall"
    password: str = ""
    tls: bool = False
    max_photo_bytes: int = DEFAULT_MAX_PHOTO_BYTES
    # static admin credential pair for the API login route
    admin_user: str = "admin"
    admin_password: str = "admin"

    @classmethod
    def from_file(cls, path: str | Path) -> "ConnectionConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    @classmethod
    def from_env(cls, base: "ConnectionConfig | None" = None) -> "ConnectionConfig":
        cfg = base or cls()
        for name, caster in [
            ("engine", str), ("path", str), ("host", str), ("port", int),
            ("database", str), ("user", str), ("password", str),
            ("tls", lambda v: v.lower() in ("1", "true", "yes")),
            ("max_photo_bytes", int),
            ("admin_user", str), ("admin_password", str),
        ]:
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                try:
                    setattr(cfg, name, caster(raw))
                except ValueError as exc:
                    raise ConfigError(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}") from exc
        return cfg

    @classmethod
    def load(cls, file: str | Path | None = None) -> "ConnectionConfig":
        """File (if given) layered under environment overrides."""
        base = cls.from_file(file) if file else cls()
        return cls.from_env(base)
