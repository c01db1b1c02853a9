# gameforge/games/config.py
from __future__ import annotations
import os
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ConfigError, SearchLimitExceeded
from .patterns import LIMITS_ITEM_RE

LIMITS_ENV = "GAMEFORGE_LIMITS"


@dataclass(frozen=True)
class SearchLimits:
    players: int = 6
    strategies: int = 4

    def check(self, n: int, d: int, what: str) -> None:
        if n > self.players or d > self.strategies:
            raise SearchLimitExceeded(
                f"{what} is limited to {self.players} players and {self.strategies} strategies "
                f"(got {n} and {d}); raise {LIMITS_ENV}=players=<n>,strategies=<d>"
            )


def parse_limits(raw: str, base: Optional[SearchLimits] = None) -> SearchLimits:
    limits = base or SearchLimits()
    if not raw.strip():
        return limits
    seen = set()
    for item in raw.split(","):
        m = LIMITS_ITEM_RE.fullmatch(item)
        if not m:
            raise ConfigError(f"{LIMITS_ENV}: cannot read {item.strip()!r}, expected players=<n>,strategies=<d>")
        key, value = m.group(1), int(m.group(2))
        if key in seen:
            raise ConfigError(f"{LIMITS_ENV}: {key} given twice")
        seen.add(key)
        limits = replace(limits, **{key: value})
    return limits


def load_limits() -> SearchLimits:
    return parse_limits(os.getenv(LIMITS_ENV, ""))


def resolve_limits(limits: Optional[SearchLimits]) -> SearchLimits:
    return limits if limits is not None else load_limits()
