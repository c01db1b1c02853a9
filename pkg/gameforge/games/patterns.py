# gameforge/games/patterns.py
from __future__ import annotations
import re

FORMAT_VERSION = "v1.0.0"

# Rationals: "3", "-1", "11/5", "2.2" (decimals are converted exactly)
# NOTE: denominator starts with 1-9 so "1/0" and "1/05" are rejected
RATIONAL_RE = re.compile(r"-?[0-9]+(?:/[1-9][0-9]*)?")
DECIMAL_RE = re.compile(r"-?[0-9]+\.[0-9]+")

# GAMEFORGE_LIMITS: "players=7,strategies=5" (either key, any order)
LIMITS_ITEM_RE = re.compile(r"\s*(players|strategies)\s*=\s*([1-9][0-9]*)\s*")

# CLI lists: "a,b,c" / "1/2, 1/2"
LIST_SEP_RE = re.compile(r"\s*,\s*")
