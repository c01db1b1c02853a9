from __future__ import annotations
# Re-export for convenience
from .core import Game, build_game
from .documents import load_game, parse_game, serialize_game
from .errors import GameForgeError
from .isomorphism import IsoMode, search_isomorphisms
from .symmetry import classify

__all__ = [
    "Game", "build_game", "load_game", "parse_game", "serialize_game",
    "GameForgeError", "IsoMode", "search_isomorphisms", "classify",
]
