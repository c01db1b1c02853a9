# gameforge/games/labels.py
from __future__ import annotations
from typing import Optional, Sequence

from rapidfuzz import fuzz, process

from .errors import UnknownNameError

SUGGEST_CUTOFF = 60.0


def suggest(name: str, choices: Sequence[str]) -> Optional[str]:
    if not choices:
        return None
    hit = process.extractOne(name, list(choices), scorer=fuzz.WRatio, score_cutoff=SUGGEST_CUTOFF)
    return hit[0] if hit else None


def resolve_label(name: str, choices: Sequence[str], kind: str,
                  line: Optional[int] = None, column: Optional[int] = None) -> int:
    """Index of `name` in `choices` (exact match only, the fuzzy hit is just a hint)."""
    try:
        return list(choices).index(name)
    except ValueError:
        raise UnknownNameError(f"unknown {kind} {name!r}", line, column, suggest(name, choices)) from None
