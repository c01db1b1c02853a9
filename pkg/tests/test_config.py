# tests/test_config.py
from __future__ import annotations

import pytest

from gameforge.games.config import LIMITS_ENV, SearchLimits, load_limits, parse_limits, resolve_limits
from gameforge.games.errors import ConfigError, SearchLimitExceeded


def test_defaults():
    assert SearchLimits() == SearchLimits(players=6, strategies=4)
    assert parse_limits("") == SearchLimits()


@pytest.mark.parametrize("raw, expected", [
    ("players=7", SearchLimits(7, 4)),
    ("strategies=5", SearchLimits(6, 5)),
    (" strategies = 5 , players=8 ", SearchLimits(8, 5)),
])
def test_parse_limits(raw, expected):
    assert parse_limits(raw) == expected


@pytest.mark.parametrize("raw", ["players", "players=0", "colours=3", "players=3,players=4", "players=-1"])
def test_parse_limits_rejects_bad_values(raw):
    with pytest.raises(ConfigError):
        parse_limits(raw)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv(LIMITS_ENV, "players=9")
    assert load_limits() == SearchLimits(9, 4)
    assert resolve_limits(None) == SearchLimits(9, 4)
    assert resolve_limits(SearchLimits(2, 2)) == SearchLimits(2, 2)


def test_check_raises_beyond_limits():
    SearchLimits(3, 2).check(3, 2, "search")
    with pytest.raises(SearchLimitExceeded, match=LIMITS_ENV):
        SearchLimits(3, 2).check(4, 2, "search")
