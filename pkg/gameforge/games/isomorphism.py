# gameforge/games/isomorphism.py
"""
Strict, ordinal and cardinal game isomorphisms.

Ordinal and cardinal questions are reduced to strict ones: a bijection is an
ordinal isomorphism iff it is a strict isomorphism between the dense-rank
images of the two games, and a cardinal one iff it is strict between the
min/max affine normalisations (constant players normalise to all zeros).
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .bijection import GameBijection, act_on_index, identity_permutation
from .core import Game

logger = logging.getLogger(__name__)


class IsoMode(str, Enum):
    STRICT = "strict"
    ORDINAL = "ordinal"
    CARDINAL = "cardinal"


@dataclass(frozen=True)
class AffineWitness:
    """Per source player (beta_i, gamma_i) with v_{g.i}(g.s) = beta_i * u_i(s) + gamma_i."""
    coefficients: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if any(beta <= 0 for beta, _ in self.coefficients):
            raise ValueError("affine witness needs beta > 0 for every player")

    def apply(self, i: int, x: Fraction) -> Fraction:
        beta, gamma = self.coefficients[i]
        return beta * x + gamma


# -- canonical forms

def _ranks(row: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    levels = {v: Fraction(r) for r, v in enumerate(sorted(set(row)))}
    return tuple(levels[v] for v in row)


def _normalise(row: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    lo, hi = min(row), max(row)
    if lo == hi:
        return tuple(Fraction(0) for _ in row)
    span = hi - lo
    return tuple((v - lo) / span for v in row)


def rank_canonical(g: Game) -> Game:
    return Game(g.players, g.strategies, tuple(_ranks(r) for r in g.payoffs), g.title)


def affine_canonical(g: Game) -> Game:
    return Game(g.players, g.strategies, tuple(_normalise(r) for r in g.payoffs), g.title)


def canonical_form(g: Game, mode: IsoMode) -> Game:
    mode = IsoMode(mode)
    if mode is IsoMode.ORDINAL:
        return rank_canonical(g)
    if mode is IsoMode.CARDINAL:
        return affine_canonical(g)
    return g


# -- verification of a given bijection

def _index_map(g: GameBijection) -> List[int]:
    return [act_on_index(g, k) for k in range(g.source.num_profiles)]


def _rows_match(g: GameBijection, rows1, rows2) -> bool:
    idx = _index_map(g)
    for i, row in enumerate(rows1):
        other = rows2[g.player_map[i]]
        if any(row[k] != other[t] for k, t in enumerate(idx)):
            return False
    return True


def verify_strict(g: GameBijection) -> bool:
    return _rows_match(g, g.source.payoffs, g.target.payoffs)


def verify_ordinal(g: GameBijection) -> bool:
    return _rows_match(g, [_ranks(r) for r in g.source.payoffs], [_ranks(r) for r in g.target.payoffs])


def verify_cardinal(g: GameBijection) -> Tuple[bool, Optional[AffineWitness]]:
    idx = _index_map(g)
    coefficients = []
    for i, u in enumerate(g.source.payoffs):
        v = g.target.payoffs[g.player_map[i]]
        lo_u, hi_u, lo_v, hi_v = min(u), max(u), min(v), max(v)
        if lo_u == hi_u:
            if lo_v != hi_v:
                return False, None
            beta, gamma = Fraction(1), lo_v - lo_u
        else:
            if lo_v == hi_v:
                return False, None
            beta = (hi_v - lo_v) / (hi_u - lo_u)
            gamma = lo_v - beta * lo_u
        if any(beta * u[k] + gamma != v[t] for k, t in enumerate(idx)):
            return False, None
        coefficients.append((beta, gamma))
    return True, AffineWitness(tuple(coefficients))


def is_isomorphism(g: GameBijection, mode: IsoMode) -> bool:
    mode = IsoMode(mode)
    if mode is IsoMode.ORDINAL:
        return verify_ordinal(g)
    if mode is IsoMode.CARDINAL:
        return verify_cardinal(g)[0]
    return verify_strict(g)


# -- search

class _IsoSearch:
    """
    Backtracking over player assignments, then strategy assignments player by
    player. Candidates are tried in ascending order at every level, so results
    come out in lexicographic order of (player_map, strategy_maps).
    """

    def __init__(self, g1: Game, g2: Game, fix_players: bool = False):
        self.g1, self.g2 = g1, g2
        self.n = g1.n
        self.fix_players = fix_players
        self.multisets1 = [tuple(sorted(r)) for r in g1.payoffs]
        self.multisets2 = [tuple(sorted(r)) for r in g2.payoffs]
        self.slices1 = self._slices(g1)
        self.slices2 = self._slices(g2)
        self.branches = 0

    @staticmethod
    def _slices(g: Game) -> List[List[List[Tuple[Fraction, ...]]]]:
        # slices[i][x][p]: sorted payoffs of player p over profiles where player i plays x
        buckets = [[[[] for _ in range(g.n)] for _ in range(d)] for d in g.sizes]
        for k, s in enumerate(g.profiles()):
            for i, x in enumerate(s):
                for p in range(g.n):
                    buckets[i][x][p].append(g.payoffs[p][k])
        return [[[tuple(sorted(v)) for v in by_p] for by_p in by_x] for by_x in buckets]

    def compatible_players(self, i: int, j: int) -> bool:
        return (self.g1.sizes[i] == self.g2.sizes[j]
                and self.multisets1[i] == self.multisets2[j])

    def player_maps(self) -> Iterator[Tuple[int, ...]]:
        if self.g1.n != self.g2.n or self.g1.shape_key() != self.g2.shape_key():
            return
        if self.fix_players:
            pi = identity_permutation(self.n)
            if all(self.compatible_players(i, i) for i in range(self.n)):
                yield pi
            return
        pi: List[int] = []
        used = set()

        def extend(i: int) -> Iterator[Tuple[int, ...]]:
            if i == self.n:
                yield tuple(pi)
                return
            for j in range(self.n):
                if j in used or not self.compatible_players(i, j):
                    continue
                pi.append(j)
                used.add(j)
                yield from extend(i + 1)
                pi.pop()
                used.discard(j)

        yield from extend(0)

    def strategy_maps(self, pi: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        g1, g2, n = self.g1, self.g2, self.n
        order = [(i, x) for i in range(n) for x in range(g1.sizes[i])]
        taus: List[List[Optional[int]]] = [[None] * d for d in g1.sizes]
        used = [set() for _ in range(n)]
        last = n - 1
        prefixes = list(_prefix_profiles(g1, last))

        def signature_ok(i: int, x: int, y: int) -> bool:
            a = self.slices1[i][x]
            b = self.slices2[pi[i]][y]
            return all(a[p] == b[pi[p]] for p in range(n))

        def cells_ok(x: int) -> bool:
            # every profile with s_last = x is now fully mapped
            for prefix in prefixes:
                s = prefix + (x,)
                k = g1.profile_index(s)
                t = [0] * n
                for p, sp in enumerate(s):
                    t[pi[p]] = taus[p][sp]
                kt = g2.profile_index(t)
                if any(g1.payoffs[p][k] != g2.payoffs[pi[p]][kt] for p in range(n)):
                    return False
            return True

        def extend(pos: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
            if pos == len(order):
                yield tuple(tuple(t) for t in taus)
                return
            i, x = order[pos]
            for y in range(g2.sizes[pi[i]]):
                if y in used[i] or not signature_ok(i, x, y):
                    continue
                self.branches += 1
                taus[i][x] = y
                used[i].add(y)
                if i != last or cells_ok(x):
                    yield from extend(pos + 1)
                used[i].discard(y)
                taus[i][x] = None

        yield from extend(0)

    def run(self) -> Iterator[Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]]:
        for pi in self.player_maps():
            for taus in self.strategy_maps(pi):
                yield pi, taus


def _prefix_profiles(g: Game, last: int):
    return itertools.product(*(range(d) for d in g.sizes[:last]))


def search_isomorphisms(g1: Game, g2: Game, mode: IsoMode = IsoMode.STRICT,
                        limit: Optional[int] = None, fix_players: bool = False) -> List[GameBijection]:
    """
    Isomorphisms of the given mode from g1 to g2 in canonical order; complete
    when limit is None. With fix_players only role-preserving bijections
    (identity player map) are considered.
    """
    mode = IsoMode(mode)
    c1, c2 = canonical_form(g1, mode), canonical_form(g2, mode)
    search = _IsoSearch(c1, c2, fix_players=fix_players)
    found: List[GameBijection] = []
    if limit is not None and limit <= 0:
        return found
    for pi, taus in search.run():
        found.append(GameBijection(g1, g2, pi, taus))
        if limit is not None and len(found) >= limit:
            break
    logger.debug("%s search: %d isomorphisms, %d branches", mode.value, len(found), search.branches)
    return found


def cardinal_witnesses(found: Sequence[GameBijection]) -> List[AffineWitness]:
    """Affine witness of each cardinal isomorphism in `found`, in the same order."""
    out = []
    for h in found:
        ok, witness = verify_cardinal(h)
        if not ok:
            raise ValueError(f"not a cardinal isomorphism: {h!r}")
        out.append(witness)
    return out


def are_equivalent(g1: Game, g2: Game, mode: IsoMode = IsoMode.STRICT, fix_players: bool = False) -> bool:
    return bool(search_isomorphisms(g1, g2, mode, limit=1, fix_players=fix_players))


def equivalence_invariant(g: Game, mode: IsoMode, fix_players: bool = False) -> tuple:
    """Hashable value shared by all games equivalent to g (pre-filter only)."""
    c = canonical_form(g, mode)
    cells = [tuple(row[k] for row in c.payoffs) for k in range(c.num_profiles)]
    if fix_players:
        return tuple(c.sizes), tuple(sorted(cells))
    best = None
    for perm in itertools.permutations(range(c.n)):
        key = (tuple(c.sizes[p] for p in perm), tuple(sorted(tuple(v[p] for p in perm) for v in cells)))
        if best is None or key < best:
            best = key
    return best


def transport_game(g: GameBijection, source: Game, target: Game) -> GameBijection:
    """Same player/strategy maps, re-anchored on another pair of same-shaped games."""
    return GameBijection(source, target, g.player_map, g.strategy_maps)


def classes_by_equivalence(games: Sequence[Game], mode: IsoMode,
                           fix_players: bool = False) -> List[List[int]]:
    """Partition of `games` (as index lists) into equivalence classes, in first-seen order."""
    buckets: Dict[tuple, List[int]] = {}
    classes: List[List[int]] = []
    for k, g in enumerate(games):
        key = equivalence_invariant(g, mode, fix_players)
        reps = buckets.setdefault(key, [])
        for rep in reps:
            if are_equivalent(games[classes[rep][0]], g, mode, fix_players):
                classes[rep].append(k)
                break
        else:
            reps.append(len(classes))
            classes.append([k])
    logger.debug("%d games -> %d %s classes (fix_players=%s)", len(games), len(classes), IsoMode(mode).value, fix_players)
    return classes
