"""HTTP facade: network loading, async optimization jobs, NDJSON progress."""

from .app import create_app

__all__ = ["create_app"]
