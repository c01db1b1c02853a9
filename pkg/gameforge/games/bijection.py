# gameforge/games/bijection.py
"""
Game bijections (pi; tau_1..tau_n) between two games, and matchings.

Player permutations use one-line notation over player indices: pi[i] is the
target player of source player i. strategy_maps[i][x] is the index, among the
strategies of target player pi[i], of the image of strategy x of player i.
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Mapping, Sequence, Tuple

from .core import Game, MixedProfile, PureProfile, check_mixed, check_profile
from .errors import BijectionError, MatchingError
from .labels import resolve_label

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


# -- player permutations

def identity_permutation(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def compose_permutations(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """p o q (apply q first)."""
    return tuple(p[x] for x in q)


def invert_permutation(p: Sequence[int]) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def all_permutations(n: int) -> List[Permutation]:
    return list(itertools.permutations(range(n)))


def transpositions(n: int) -> List[Permutation]:
    out = []
    for i, j in itertools.combinations(range(n), 2):
        p = list(range(n))
        p[i], p[j] = j, i
        out.append(tuple(p))
    return out


def generated_permutations(gens: Sequence[Permutation], n: int) -> List[Permutation]:
    """Closure of a set of permutations of range(n), sorted."""
    seen = {identity_permutation(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = compose_permutations(q, p)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen)


# -- bijections

@dataclass(frozen=True)
class GameBijection:
    source: Game
    target: Game
    player_map: Permutation
    strategy_maps: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        src, dst = self.source, self.target
        if src.n != dst.n:
            raise BijectionError(f"player counts differ ({src.n} vs {dst.n})")
        if not is_permutation(self.player_map, src.n):
            raise BijectionError(f"player map {list(self.player_map)} is not a bijection")
        if len(self.strategy_maps) != src.n:
            raise BijectionError(f"expected {src.n} strategy maps, got {len(self.strategy_maps)}")
        for i, tau in enumerate(self.strategy_maps):
            j = self.player_map[i]
            if src.sizes[i] != dst.sizes[j]:
                raise BijectionError(
                    f"player {src.players[i]!r} has {src.sizes[i]} strategies but its image "
                    f"{dst.players[j]!r} has {dst.sizes[j]}"
                )
            if not is_permutation(tau, src.sizes[i]):
                raise BijectionError(f"strategy map of player {src.players[i]!r} is not a bijection")

    @property
    def key(self) -> Tuple[Permutation, Tuple[Tuple[int, ...], ...]]:
        return self.player_map, self.strategy_maps

    def is_identity(self) -> bool:
        return self.player_map == identity_permutation(self.source.n) and all(
            tau == identity_permutation(len(tau)) for tau in self.strategy_maps
        )

    def describe(self) -> dict:
        """Name-keyed view: {"players": {src: dst}, "strategies": {src: {x: y}}}."""
        src, dst = self.source, self.target
        return {
            "players": {src.players[i]: dst.players[j] for i, j in enumerate(self.player_map)},
            "strategies": {
                src.players[i]: {
                    src.strategies[i][x]: dst.strategies[self.player_map[i]][y] for x, y in enumerate(tau)
                }
                for i, tau in enumerate(self.strategy_maps)
            },
        }

    def __repr__(self) -> str:
        return f"GameBijection(pi={list(self.player_map)}, tau={[list(t) for t in self.strategy_maps]})"


def _same_game(a: Game, b: Game) -> bool:
    """Same players, strategy names and payoffs; the title is not part of a game's identity."""
    if a is b:
        return True
    return (a.players, a.strategies, a.payoffs) == (b.players, b.strategies, b.payoffs)


def identity_bijection(g: Game) -> GameBijection:
    return GameBijection(g, g, identity_permutation(g.n), tuple(identity_permutation(d) for d in g.sizes))


def compose(h: GameBijection, g: GameBijection) -> GameBijection:
    """h o g: (eta o pi; (phi_{pi(i)} o tau_i)_i)."""
    if not _same_game(h.source, g.target):
        raise BijectionError("cannot compose: the middle games differ")
    pi = g.player_map
    return GameBijection(
        g.source,
        h.target,
        compose_permutations(h.player_map, pi),
        tuple(tuple(h.strategy_maps[pi[i]][y] for y in tau) for i, tau in enumerate(g.strategy_maps)),
    )


def invert(g: GameBijection) -> GameBijection:
    inv_pi = invert_permutation(g.player_map)
    return GameBijection(
        g.target,
        g.source,
        inv_pi,
        tuple(invert_permutation(g.strategy_maps[inv_pi[j]]) for j in range(g.target.n)),
    )


def act_on_profile(g: GameBijection, s: Sequence[int]) -> PureProfile:
    s = check_profile(g.source, s)
    out = [0] * g.target.n
    for i, x in enumerate(s):
        out[g.player_map[i]] = g.strategy_maps[i][x]
    return tuple(out)


def act_on_index(g: GameBijection, k: int) -> int:
    """Tensor index of g.s for the profile s at tensor index k."""
    s = g.source.profile_at(k)
    t = [0] * g.target.n
    for i, x in enumerate(s):
        t[g.player_map[i]] = g.strategy_maps[i][x]
    return g.target.profile_index(t)


def act_on_mixed(g: GameBijection, sigma: Sequence[Sequence]) -> MixedProfile:
    sigma = check_mixed(g.source, sigma)
    out: List[List[Fraction]] = [[Fraction(0)] * d for d in g.target.sizes]
    for i, row in enumerate(sigma):
        j = g.player_map[i]
        for x, p in enumerate(row):
            out[j][g.strategy_maps[i][x]] = p
    return tuple(tuple(r) for r in out)


def bijection_from_names(source: Game, target: Game,
                         player_map: Mapping[str, str],
                         strategy_maps: Mapping[str, Mapping[str, str]]) -> GameBijection:
    pi = [None] * source.n
    for a, b in player_map.items():
        pi[resolve_label(a, source.players, "player")] = resolve_label(b, target.players, "player")
    if any(x is None for x in pi):
        raise BijectionError("player map does not cover every source player")
    taus = []
    for i, name in enumerate(source.players):
        if name not in strategy_maps:
            raise BijectionError(f"no strategy map for player {name!r}")
        tau = [None] * source.sizes[i]
        for x, y in strategy_maps[name].items():
            tau[resolve_label(x, source.strategies[i], f"strategy of {name!r}")] = resolve_label(
                y, target.strategies[pi[i]], f"strategy of {target.players[pi[i]]!r}")
        if any(t is None for t in tau):
            raise BijectionError(f"strategy map of player {name!r} is not total")
        taus.append(tuple(tau))
    return GameBijection(source, target, tuple(pi), tuple(taus))


# -- matchings

@dataclass(frozen=True)
class Matching:
    """d profiles covering each player's strategies exactly once; tuples[k][0] == k."""
    tuples: Tuple[PureProfile, ...]

    @cached_property
    def position(self) -> Tuple[Tuple[int, ...], ...]:
        n = len(self.tuples[0])
        pos = [[0] * len(self.tuples) for _ in range(n)]
        for k, t in enumerate(self.tuples):
            for i, x in enumerate(t):
                pos[i][x] = k
        return tuple(tuple(p) for p in pos)

    def pair_map(self, i: int, j: int) -> Tuple[int, ...]:
        """M_ij as an index map from A_i to A_j."""
        return tuple(self.tuples[k][j] for k in self.position[i])

    def names(self, g: Game) -> List[List[str]]:
        return [[g.strategies[i][x] for i, x in enumerate(t)] for t in self.tuples]


def validate_matching(g: Game, tuples: Sequence[Sequence[int]]) -> Matching:
    d = g.sizes[0]
    if any(x != d for x in g.sizes):
        raise MatchingError("a matching needs every player to have the same number of strategies")
    if len(tuples) != d:
        raise MatchingError(f"a matching of this game has {d} profiles, got {len(tuples)}")
    tuples = [check_profile(g, t) for t in tuples]
    for i in range(g.n):
        if sorted(t[i] for t in tuples) != list(range(d)):
            raise MatchingError(f"strategies of player {g.players[i]!r} are not covered exactly once")
    return Matching(tuple(sorted(tuples)))


def diagonal_matching(g: Game) -> Matching:
    if any(a != g.strategies[0] for a in g.strategies):
        raise MatchingError("the diagonal matching needs identical strategy lists")
    return validate_matching(g, [(x,) * g.n for x in range(g.sizes[0])])


def induced_bijection(m: Matching, pi: Sequence[int], g: Game) -> GameBijection:
    """M_pi = (pi; (M_{i,pi(i)})_i) as a self-bijection of g."""
    if len(m.tuples[0]) != g.n or len(m.tuples) != g.sizes[0]:
        raise MatchingError("matching does not fit this game")
    pi = tuple(pi)
    if not is_permutation(pi, g.n):
        raise BijectionError(f"{list(pi)} is not a permutation of the players")
    return GameBijection(g, g, pi, tuple(m.pair_map(i, pi[i]) for i in range(g.n)))


def _equal_utility(g: Game, s: Sequence[int]) -> bool:
    k = g.profile_index(s)
    first = g.payoffs[0][k]
    return all(row[k] == first for row in g.payoffs)


def iter_matchings(g: Game, equal_utility_filter: bool = False) -> Iterator[Matching]:
    """Matchings in lexicographic order of their tuple lists, built tuple by tuple."""
    d = g.sizes[0]
    if any(x != d for x in g.sizes):
        return
    n = g.n
    used = [set() for _ in range(n)]
    chosen: List[PureProfile] = []

    def extend(k: int) -> Iterator[Matching]:
        if k == d:
            yield Matching(tuple(chosen))
            return
        free = [[x for x in range(d) if x not in used[j]] for j in range(1, n)]
        for rest in itertools.product(*free):
            t = (k,) + rest
            if equal_utility_filter and not _equal_utility(g, t):
                continue
            for j, x in enumerate(rest, start=1):
                used[j].add(x)
            chosen.append(t)
            yield from extend(k + 1)
            chosen.pop()
            for j, x in enumerate(rest, start=1):
                used[j].discard(x)

    yield from extend(0)


def enumerate_matchings(g: Game, equal_utility_filter: bool = False) -> List[Matching]:
    found = list(iter_matchings(g, equal_utility_filter))
    logger.debug("%d matchings (filter=%s)", len(found), equal_utility_filter)
    return found
