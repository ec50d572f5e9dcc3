"""Personnel records service with database-managed photo blobs, Code 39
ID cards, and a large-object vs inline-bytes storage benchmark."""

__version__ = "0.1.0"

from .config import ConnectionConfig, StorageStrategy

__all__ = ["ConnectionConfig", "StorageStrategy", "__version__"]
