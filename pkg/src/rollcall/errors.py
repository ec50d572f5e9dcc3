"""Exception hierarchy shared by all modules.

Every error carries a stable machine ``code`` so the HTTP layer can map
exceptions to API error bodies without leaking internal text.
"""


class RollcallError(Exception):
    code = "internal_error"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(RollcallError):
    code = "config_error"


class ValidationError(RollcallError):
    """A record or payload failed validation; names the offending field."""

    code = "validation_failed"

    def __init__(self, field: str, detail: str):
        super().__init__(detail)
        self.field = field


class NotFoundError(RollcallError):
    code = "not_found"


class DuplicateError(RollcallError):
    code = "duplicate_id"


class UnsupportedImageError(RollcallError):
    code = "unsupported_format"


class CorruptImageError(RollcallError):
    code = "corrupt_stream"


class OversizeError(RollcallError):
    code = "payload_too_large"


class DanglingPhotoError(RollcallError):
    """A photo column points at a large object that no longer exists."""

    code = "dangling_photo"


class StrategyError(RollcallError):
    """Operation invoked under the wrong storage strategy."""

    code = "wrong_strategy"


class AdvisoryLockBusyError(RollcallError):
    code = "lock_busy"


class MigrationError(RollcallError):
    code = "migration_failed"


class VersionRegressionError(MigrationError):
    code = "version_regression"


class SchemaVerificationError(RollcallError):
    code = "schema_mismatch"


class BarcodeError(RollcallError):
    code = "barcode_invalid"


class LayoutError(RollcallError):
    code = "layout_invalid"


class BenchmarkError(RollcallError):
    code = "benchmark_failed"


class AuthError(RollcallError):
    code = "unauthorized"
