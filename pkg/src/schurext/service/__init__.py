"""HTTP service wrapping the handler layer; see app.create_app."""

from .app import create_app

__all__ = ["create_app"]
