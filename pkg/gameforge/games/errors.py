# gameforge/games/errors.py
from __future__ import annotations
from typing import Optional


class GameForgeError(ValueError):
    code = "error"


class InvalidGameError(GameForgeError):
    code = "invalid_game"


class ProfileError(GameForgeError):
    code = "invalid_profile"


class BijectionError(GameForgeError):
    code = "invalid_bijection"


class MatchingError(GameForgeError):
    code = "invalid_matching"


class ConstructionError(GameForgeError):
    code = "construction_error"


class SearchLimitExceeded(GameForgeError):
    code = "limit_exceeded"


class ConfigError(GameForgeError):
    code = "config_error"


class DocumentError(GameForgeError):
    """Parse error, positioned (1-based line/column) when the source text is known."""
    code = "parse_error"

    def __init__(self, reason: str, line: Optional[int] = None, column: Optional[int] = None):
        self.reason = reason
        self.line = line
        self.column = column
        if line is None:
            super().__init__(reason)
        else:
            super().__init__(f"line {line}, column {column}: {reason}")


class UnknownNameError(DocumentError):
    code = "unknown_name"

    def __init__(self, reason: str, line: Optional[int] = None, column: Optional[int] = None,
                 suggestion: Optional[str] = None):
        self.suggestion = suggestion
        if suggestion:
            reason = f"{reason} (did you mean {suggestion!r}?)"
        super().__init__(reason, line, column)
