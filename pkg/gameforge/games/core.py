# gameforge/games/core.py
"""
Finite normal-form games with exact payoffs.

A game stores one flat payoff tensor per player. The tensor index of a pure
profile (a_1..a_n) is sum_i a_i * prod_{j>i} d_j, i.e. the last player varies
fastest, which is also the order itertools.product enumerates profiles in.
"""
from __future__ import annotations
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidGameError, ProfileError
from .rationals import as_rational

logger = logging.getLogger(__name__)

PureProfile = Tuple[int, ...]
MixedProfile = Tuple[Tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Game:
    players: Tuple[str, ...]
    strategies: Tuple[Tuple[str, ...], ...]
    payoffs: Tuple[Tuple[Fraction, ...], ...]
    title: Optional[str] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.players)

    @cached_property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.strategies)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        out, acc = [], 1
        for d in reversed(self.sizes):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))

    @cached_property
    def num_profiles(self) -> int:
        return math.prod(self.sizes)

    def profile_index(self, s: Sequence[int]) -> int:
        return sum(x * k for x, k in zip(s, self.strides))

    def profile_at(self, k: int) -> PureProfile:
        out = []
        for stride in self.strides:
            x, k = divmod(k, stride)
            out.append(x)
        return tuple(out)

    def profiles(self) -> Iterator[PureProfile]:
        return itertools.product(*(range(d) for d in self.sizes))

    def shape_key(self) -> Tuple[int, ...]:
        return tuple(sorted(self.sizes))

    def __repr__(self) -> str:
        label = f"{self.title!r}, " if self.title else ""
        return f"Game({label}players={list(self.players)}, sizes={list(self.sizes)})"


def build_game(players: Sequence[str],
               strategies: Sequence[Sequence[str]],
               payoffs: Sequence[Sequence],
               title: Optional[str] = None) -> Game:
    players = tuple(str(p) for p in players)
    strategies = tuple(tuple(str(x) for x in a) for a in strategies)
    n = len(players)
    if n < 2:
        raise InvalidGameError(f"a game needs at least two players (got {n})")
    if len(set(players)) != n:
        raise InvalidGameError("player names must be unique")
    if len(strategies) != n:
        raise InvalidGameError(f"expected {n} strategy lists, got {len(strategies)}")
    for name, a in zip(players, strategies):
        if not a:
            raise InvalidGameError(f"player {name!r} has no strategies")
        if len(set(a)) != len(a):
            raise InvalidGameError(f"duplicate strategy names for player {name!r}")
    if len(payoffs) != n:
        raise InvalidGameError(f"expected {n} payoff tensors, got {len(payoffs)}")
    size = math.prod(len(a) for a in strategies)
    rows = []
    for name, row in zip(players, payoffs):
        if len(row) != size:
            raise InvalidGameError(f"payoff tensor of player {name!r} has {len(row)} entries, expected {size}")
        try:
            rows.append(tuple(as_rational(x) for x in row))
        except (TypeError, ValueError) as e:
            raise InvalidGameError(f"payoff of player {name!r}: {e}") from e
    return Game(players, strategies, tuple(rows), title)


def zero_game(players: Sequence[str], strategies: Sequence[Sequence[str]], title: Optional[str] = None) -> Game:
    """All-zero game with the given shape (placeholder for construction)."""
    size = math.prod(len(a) for a in strategies)
    return build_game(players, strategies, [[ZERO] * size for _ in players], title)


# -- validation helpers

def _check_player(g: Game, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < g.n:
        raise ProfileError(f"player index {i!r} out of range [0, {g.n})")


def _check_strategy(g: Game, i: int, x: int) -> None:
    if not isinstance(x, int) or not 0 <= x < g.sizes[i]:
        raise ProfileError(f"strategy index {x!r} out of range for player {g.players[i]!r}")


def check_profile(g: Game, s: Sequence[int]) -> PureProfile:
    s = tuple(s)
    if len(s) != g.n:
        raise ProfileError(f"profile has {len(s)} entries, expected {g.n}")
    for i, x in enumerate(s):
        _check_strategy(g, i, x)
    return s


def check_distribution(g: Game, i: int, sigma_i: Sequence) -> Tuple[Fraction, ...]:
    if len(sigma_i) != g.sizes[i]:
        raise ProfileError(f"distribution for player {g.players[i]!r} has {len(sigma_i)} entries, expected {g.sizes[i]}")
    try:
        row = tuple(as_rational(p) for p in sigma_i)
    except (TypeError, ValueError) as e:
        raise ProfileError(str(e)) from e
    if any(p < 0 or p > 1 for p in row):
        raise ProfileError(f"probabilities for player {g.players[i]!r} must lie in [0, 1]")
    if sum(row) != 1:
        raise ProfileError(f"probabilities for player {g.players[i]!r} sum to {sum(row)}, not 1")
    return row


def check_mixed(g: Game, sigma: Sequence[Sequence]) -> MixedProfile:
    if len(sigma) != g.n:
        raise ProfileError(f"mixed profile has {len(sigma)} entries, expected {g.n}")
    return tuple(check_distribution(g, i, row) for i, row in enumerate(sigma))


def _with(s_minus_i: Sequence[int], i: int, x: int) -> PureProfile:
    return tuple(s_minus_i[:i]) + (x,) + tuple(s_minus_i[i:])


def opponent_profiles(g: Game, i: int) -> Iterator[PureProfile]:
    return itertools.product(*(range(d) for j, d in enumerate(g.sizes) if j != i))


def _check_opponents(g: Game, i: int, s_minus_i: Sequence[int]) -> Tuple[int, ...]:
    s_minus_i = tuple(s_minus_i)
    if len(s_minus_i) != g.n - 1:
        raise ProfileError(f"opponent profile has {len(s_minus_i)} entries, expected {g.n - 1}")
    check_profile(g, _with(s_minus_i, i, 0))
    return s_minus_i


# -- payoffs

def utility(g: Game, i: int, s: Sequence[int]) -> Fraction:
    _check_player(g, i)
    s = check_profile(g, s)
    return g.payoffs[i][g.profile_index(s)]


def profile_probability(sigma: MixedProfile, s: Sequence[int]) -> Fraction:
    return math.prod((sigma[j][x] for j, x in enumerate(s)), start=ONE)


def expected_utility(g: Game, i: int, sigma: Sequence[Sequence]) -> Fraction:
    _check_player(g, i)
    sigma = check_mixed(g, sigma)
    row = g.payoffs[i]
    total = ZERO
    for k, s in enumerate(g.profiles()):
        p = profile_probability(sigma, s)
        if p:
            total += p * row[k]
    return total


def deviation_payoffs(g: Game, i: int, sigma: MixedProfile) -> List[Fraction]:
    """u~_i(s_i, sigma_-i) for every pure s_i of player i, in one pass."""
    out = [ZERO] * g.sizes[i]
    row = g.payoffs[i]
    for k, s in enumerate(g.profiles()):
        p = math.prod((sigma[j][x] for j, x in enumerate(s) if j != i), start=ONE)
        if p:
            out[s[i]] += p * row[k]
    return out


def point_mass(g: Game, s: Sequence[int]) -> MixedProfile:
    s = check_profile(g, s)
    return tuple(tuple(ONE if x == s[i] else ZERO for x in range(d)) for i, d in enumerate(g.sizes))


def mix_profiles(p, sigma: Sequence[Sequence], sigma2: Sequence[Sequence]) -> MixedProfile:
    """p.sigma + (1-p).sigma2, componentwise."""
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise ProfileError(f"mixing weight {p} outside [0, 1]")
    if len(sigma) != len(sigma2) or any(len(a) != len(b) for a, b in zip(sigma, sigma2)):
        raise ProfileError("mixed profiles have different dimensions")
    return tuple(
        tuple(p * as_rational(x) + (1 - p) * as_rational(y) for x, y in zip(a, b))
        for a, b in zip(sigma, sigma2)
    )


def preference_tiers(g: Game, i: int) -> List[List[int]]:
    """Indifference classes of player i over A, worst first, profile indices ascending."""
    _check_player(g, i)
    tiers = {}
    for k, v in enumerate(g.payoffs[i]):
        tiers.setdefault(v, []).append(k)
    return [tiers[v] for v in sorted(tiers)]


# -- dominance

def strictly_dominates_pure(g: Game, i: int, a: int, b: int) -> bool:
    _check_player(g, i)
    _check_strategy(g, i, a)
    _check_strategy(g, i, b)
    if a == b:
        raise ProfileError("a strategy cannot strictly dominate itself")
    row = g.payoffs[i]
    return all(
        row[g.profile_index(_with(t, i, a))] > row[g.profile_index(_with(t, i, b))]
        for t in opponent_profiles(g, i)
    )


def strictly_dominates_mixed(g: Game, i: int, sigma_i: Sequence, b: int) -> bool:
    # pure opponent profiles suffice (u~ is multilinear)
    _check_player(g, i)
    _check_strategy(g, i, b)
    sigma_i = check_distribution(g, i, sigma_i)
    row = g.payoffs[i]
    for t in opponent_profiles(g, i):
        mixed = sum((p * row[g.profile_index(_with(t, i, x))] for x, p in enumerate(sigma_i) if p), ZERO)
        if not mixed > row[g.profile_index(_with(t, i, b))]:
            return False
    return True


def dominated_pairs(g: Game, i: int) -> List[Tuple[int, int]]:
    _check_player(g, i)
    d = g.sizes[i]
    return [(a, b) for a in range(d) for b in range(d) if a != b and strictly_dominates_pure(g, i, a, b)]


# -- best responses and equilibria

def pure_best_responses(g: Game, i: int, s_minus_i: Sequence[int]) -> Tuple[int, ...]:
    _check_player(g, i)
    s_minus_i = _check_opponents(g, i, s_minus_i)
    row = g.payoffs[i]
    values = [row[g.profile_index(_with(s_minus_i, i, x))] for x in range(g.sizes[i])]
    best = max(values)
    return tuple(x for x, v in enumerate(values) if v == best)


def best_response_profiles(g: Game, s: Sequence[int]) -> List[PureProfile]:
    s = check_profile(g, s)
    per_player = [pure_best_responses(g, i, s[:i] + s[i + 1:]) for i in range(g.n)]
    return list(itertools.product(*per_player))


def is_pure_nash(g: Game, s: Sequence[int]) -> bool:
    s = check_profile(g, s)
    return all(s[i] in pure_best_responses(g, i, s[:i] + s[i + 1:]) for i in range(g.n))


def pure_nash_equilibria(g: Game) -> List[PureProfile]:
    found = [s for s in g.profiles() if is_pure_nash(g, s)]
    logger.debug("pure NE scan over %d profiles: %d found", g.num_profiles, len(found))
    return found


def is_mixed_best_response(g: Game, i: int, sigma: Sequence[Sequence]) -> bool:
    _check_player(g, i)
    sigma = check_mixed(g, sigma)
    dev = deviation_payoffs(g, i, sigma)
    value = sum((p * v for p, v in zip(sigma[i], dev)), ZERO)
    return value >= max(dev)


def is_mixed_nash(g: Game, sigma: Sequence[Sequence]) -> bool:
    sigma = check_mixed(g, sigma)
    return all(is_mixed_best_response(g, i, sigma) for i in range(g.n))
