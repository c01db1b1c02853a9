# gameforge/games/census.py
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple

from .core import Game, build_game
from .isomorphism import IsoMode, classes_by_equivalence

logger = logging.getLogger(__name__)

CENSUS_VALUES = (1, 2, 3, 4)
CENSUS_PLAYERS = ("row", "column")
CENSUS_STRATEGIES = (("r1", "r2"), ("c1", "c2"))


@dataclass(frozen=True)
class CensusResult:
    """
    Ordinal classes of the 2x2 games without payoff ties.

    class_count counts classes under role-preserving ordinal isomorphisms
    (rows and columns may be relabelled, the row player stays the row player).
    class_count_with_player_swap also lets the two players trade places.
    """
    class_count: int
    representatives: Tuple[Game, ...]
    class_sizes: Tuple[int, ...]
    total_games: int
    class_count_with_player_swap: int


def census_games() -> List[Game]:
    out = []
    for u1 in itertools.permutations(CENSUS_VALUES):
        for u2 in itertools.permutations(CENSUS_VALUES):
            out.append(build_game(CENSUS_PLAYERS, CENSUS_STRATEGIES, [u1, u2]))
    return out


def ordinal_census_2x2() -> CensusResult:
    games = census_games()
    classes = classes_by_equivalence(games, IsoMode.ORDINAL, fix_players=True)
    swapped = classes_by_equivalence(games, IsoMode.ORDINAL, fix_players=False)
    result = CensusResult(
        class_count=len(classes),
        representatives=tuple(games[c[0]] for c in classes),
        class_sizes=tuple(len(c) for c in classes),
        total_games=len(games),
        class_count_with_player_swap=len(swapped),
    )
    logger.info("2x2 ordinal census: %d games, %d classes (%d with player swap)",
                result.total_games, result.class_count, result.class_count_with_player_swap)
    return result
