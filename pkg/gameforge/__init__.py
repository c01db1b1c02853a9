from __future__ import annotations
from .main import cli_dispatch, create_cli

__all__ = ["create_cli", "cli_dispatch"]
