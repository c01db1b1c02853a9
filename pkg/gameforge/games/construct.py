# gameforge/games/construct.py
"""
Orbit construction: build a game whose symmetry group contains a given group.

Every (player, profile) pair is moved by the generated group along
(i, s) -> (pi(i), g.s); all pairs of one orbit get the same payoff.
"""
from __future__ import annotations
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bijection import GameBijection, act_on_index
from .core import Game, zero_game
from .errors import BijectionError, ConstructionError
from .isomorphism import transport_game
from .rationals import as_rational
from .symmetry import SymmetryGroup, group_closure, is_player_transitive

logger = logging.getLogger(__name__)

SEED_BITS = 64
Pair = Tuple[int, int]  # (player index, profile index)


@dataclass(frozen=True)
class Construction:
    game: Game
    group: SymmetryGroup
    orbits: Tuple[Tuple[Pair, ...], ...]
    player_transitive: bool


def shape_of(players: Sequence[str], strategies: Sequence[Sequence[str]]) -> Game:
    return zero_game(players, strategies)


def generator_from_maps(shape: Game, player_map: Sequence[int],
                        strategy_maps: Sequence[Sequence[int]]) -> GameBijection:
    try:
        return GameBijection(shape, shape, tuple(player_map), tuple(tuple(t) for t in strategy_maps))
    except BijectionError as e:
        raise ConstructionError(f"generator is not a self-bijection of the shape: {e}") from e


def _same_shape(a: Game, b: Game) -> bool:
    return a.players == b.players and a.strategies == b.strategies


def orbits_of(group: SymmetryGroup) -> List[Tuple[Pair, ...]]:
    """Orbits of (player, profile) pairs, each sorted, ordered by their minimal pair."""
    g = group.game
    index_maps = [[act_on_index(h, k) for k in range(g.num_profiles)] for h in group.elements]
    seen: Dict[Pair, int] = {}
    orbits: List[Tuple[Pair, ...]] = []
    for i in range(g.n):
        for k in range(g.num_profiles):
            if (i, k) in seen:
                continue
            # closed group: one sweep gives the whole orbit
            orbit = sorted({(h.player_map[i], idx[k]) for h, idx in zip(group.elements, index_maps)})
            for pair in orbit:
                seen[pair] = len(orbits)
            orbits.append(tuple(orbit))
    return orbits


def seeded_values(seed: int, count: int) -> List[Fraction]:
    """`count` distinct positive rationals, reproducible from a 64-bit seed."""
    if not isinstance(seed, int) or not 0 <= seed < 2 ** SEED_BITS:
        raise ConstructionError(f"seed must be an integer in [0, 2**{SEED_BITS})")
    rng = random.Random(seed)
    out: List[Fraction] = []
    seen = set()
    while len(out) < count:
        v = Fraction(rng.randint(1, 10 * count + 10), rng.randint(1, 4))
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def construct_from_generators(shape: Game, generators: Sequence[GameBijection],
                              values: Optional[Sequence] = None, seed: Optional[int] = None,
                              title: Optional[str] = None) -> Construction:
    if (values is None) == (seed is None):
        raise ConstructionError("give either values or a seed")
    for gen in generators:
        if not (_same_shape(gen.source, shape) and _same_shape(gen.target, shape)):
            raise ConstructionError(f"generator {gen!r} does not act on the shape")
    base = shape_of(shape.players, shape.strategies)
    gens = [GameBijection(base, base, gen.player_map, gen.strategy_maps) for gen in generators]
    closure = group_closure(gens, base)
    orbits = orbits_of(closure)
    logger.debug("closure of %d generators: %d elements, %d orbits", len(gens), len(closure), len(orbits))

    if seed is not None:
        vals = seeded_values(seed, len(orbits))
    else:
        if len(values) < len(orbits):
            raise ConstructionError(f"{len(orbits)} orbits need {len(orbits)} values, got {len(values)}")
        if len(values) > len(orbits):
            logger.warning("%d values given, only the first %d are used", len(values), len(orbits))
        try:
            vals = [as_rational(v) for v in values[:len(orbits)]]
        except (TypeError, ValueError) as e:
            raise ConstructionError(f"bad value: {e}") from e

    rows = [[Fraction(0)] * base.num_profiles for _ in range(base.n)]
    for value, orbit in zip(vals, orbits):
        for i, k in orbit:
            rows[i][k] = value
    game = Game(base.players, base.strategies, tuple(tuple(r) for r in rows), title)
    group = SymmetryGroup(game, tuple(transport_game(h, game, game) for h in closure.elements))
    return Construction(game, group, tuple(orbits), is_player_transitive(group))
