from .adapter import DatabaseAdapter, connect

__all__ = ["DatabaseAdapter", "connect"]
