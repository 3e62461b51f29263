"""HTTP service wrapping the computation runner."""

from .app import create_app

__all__ = ["create_app"]
