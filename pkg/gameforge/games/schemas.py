# gameforge/games/schemas.py
"""Pydantic models for the JSON documents (.game, .bij, .mix, .gens) and CLI reports."""
from __future__ import annotations
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class GameDocument(_Document):
    """.game document; a missing payoffs key is reported with its position by the reader."""
    title: Optional[str] = None
    players: List[str]
    strategies: List[List[str]]
    payoffs: Optional[List[List[str]]] = None


class ShapeDocument(GameDocument):
    """A .game document whose payoffs may be left out (construction input)."""


class BijectionDocument(_Document):
    players: Dict[str, str]
    strategies: Dict[str, Dict[str, str]]


class MixedDocument(_Document):
    mixed: Dict[str, Dict[str, str]]


class GeneratorsDocument(_Document):
    generators: List[BijectionDocument]


class ReportDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ok: bool = True
    version: str
    command: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    result: Dict[str, Any]


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorDocument(BaseModel):
    ok: bool = False
    error: ErrorBody
