# gameforge/games/symmetry.py
"""
Automorphism groups, symmetry-group properties and the symmetric-game classes.

Standard symmetry is decided through matchings: for a matching m the set
H_m = {pi : M_pi is an automorphism} is a subgroup of S_N (pi -> M_pi is a
homomorphism), and the game is standard symmetric iff some m has a
transitive H_m.
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .bijection import (
    GameBijection, Matching, Permutation, all_permutations, compose, compose_permutations,
    diagonal_matching, generated_permutations, identity_bijection, identity_permutation,
    induced_bijection, invert, iter_matchings, transpositions,
)
from .config import SearchLimits, resolve_limits
from .core import Game
from .errors import MatchingError
from .isomorphism import IsoMode, search_isomorphisms, verify_strict

logger = logging.getLogger(__name__)

NOT_SYMMETRIC = "not symmetric"
NON_FULLY_NON_STANDARD = "non-fully non-standard symmetric"
FULLY_NON_STANDARD = "fully non-standard symmetric"
NON_FULLY_STANDARD = "non-fully standard symmetric"
FULLY_STANDARD = "fully standard symmetric"


@dataclass(frozen=True)
class SymmetryGroup:
    game: Game
    elements: Tuple[GameBijection, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GameBijection]:
        return iter(self.elements)

    def keys(self) -> set:
        return {g.key for g in self.elements}

    def __contains__(self, g: GameBijection) -> bool:
        return g.key in self.keys()

    def is_closed(self) -> bool:
        keys = self.keys()
        if identity_bijection(self.game).key not in keys:
            return False
        for a in self.elements:
            if invert(a).key not in keys:
                return False
            for b in self.elements:
                if compose(a, b).key not in keys:
                    return False
        return True


def group_closure(generators: Sequence[GameBijection], game: Game) -> SymmetryGroup:
    """Smallest set of self-bijections of `game` containing the generators, closed under compose."""
    e = identity_bijection(game)
    seen: Dict[tuple, GameBijection] = {e.key: e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for gen in generators:
                c = compose(gen, a)
                if c.key not in seen:
                    seen[c.key] = c
                    nxt.append(c)
        frontier = nxt
    return SymmetryGroup(game, tuple(seen[k] for k in sorted(seen)))


def automorphism_group(g: Game) -> SymmetryGroup:
    elements = search_isomorphisms(g, g, IsoMode.STRICT)
    logger.debug("Aut: %d elements", len(elements))
    return SymmetryGroup(g, tuple(elements))


# -- group properties

def player_projection(G: SymmetryGroup) -> List[Permutation]:
    return sorted({g.player_map for g in G.elements})


def _transitive(perms: Sequence[Permutation], n: int) -> bool:
    return {p[0] for p in perms} == set(range(n))


def is_player_transitive(G: SymmetryGroup) -> bool:
    return _transitive(player_projection(G), G.game.n)


def is_player_n_transitive(G: SymmetryGroup) -> bool:
    return len(player_projection(G)) == math.factorial(G.game.n)


def stabilizer(G: SymmetryGroup, i: int) -> SymmetryGroup:
    return SymmetryGroup(G.game, tuple(g for g in G.elements if g.player_map[i] == i))


def is_strategy_trivial(G: SymmetryGroup) -> bool:
    for i, d in enumerate(G.game.sizes):
        if any(g.strategy_maps[i] != identity_permutation(d) for g in stabilizer(G, i)):
            return False
    return True


# -- VNM and DM symmetry

def _same_strategy_lists(g: Game) -> bool:
    return all(a == g.strategies[0] for a in g.strategies)


def is_vnm_symmetric(g: Game) -> bool:
    # transpositions generate S_N and the passing permutations form a subgroup
    if not _same_strategy_lists(g):
        return False
    m = diagonal_matching(g)
    return all(verify_strict(induced_bijection(m, t, g)) for t in transpositions(g.n))


def is_dm_symmetric(g: Game) -> bool:
    """u_i(s_1..s_n) = u_{pi(i)}(s_pi(1)..s_pi(n)) for every pi, checked literally."""
    if not _same_strategy_lists(g):
        return False
    profiles = list(g.profiles())
    for pi in all_permutations(g.n):
        for k, s in enumerate(profiles):
            kt = g.profile_index([s[pi[j]] for j in range(g.n)])
            if any(g.payoffs[i][k] != g.payoffs[pi[i]][kt] for i in range(g.n)):
                return False
    return True


# -- standard symmetry through matchings

def _is_auto(g: Game, m: Matching, pi: Permutation) -> bool:
    return verify_strict(induced_bijection(m, pi, g))


def matching_subgroup(g: Game, m: Matching) -> List[Permutation]:
    """H_m, found with coset pruning: a failing pi rules out the whole coset pi.H."""
    n = g.n
    gens: List[Permutation] = []
    H = {identity_permutation(n)}
    excluded = set()
    for pi in all_permutations(n):
        if pi in H or pi in excluded:
            continue
        if _is_auto(g, m, pi):
            gens.append(pi)
            grown = set(generated_permutations(gens, n))
            # homomorphism: every product of passing permutations must pass too
            for p in grown - H:
                if p != pi and not _is_auto(g, m, p):
                    raise MatchingError(f"matching subgroup not closed: {list(p)} fails")
            H = grown
        else:
            excluded.update(compose_permutations(pi, h) for h in H)
    return sorted(H)


@dataclass(frozen=True)
class StandardWitness:
    found: bool
    matching: Optional[Matching] = None
    subgroup: Tuple[Permutation, ...] = ()


def _check_limits(g: Game, limits: Optional[SearchLimits]) -> None:
    resolve_limits(limits).check(g.n, max(g.sizes), "standard symmetry search")


def standard_symmetric_witness(g: Game, limits: Optional[SearchLimits] = None) -> StandardWitness:
    _check_limits(g, limits)
    tried = 0
    for m in iter_matchings(g, equal_utility_filter=True):
        tried += 1
        H = matching_subgroup(g, m)
        if _transitive(H, g.n):
            logger.debug("standard witness after %d matchings: |H| = %d", tried, len(H))
            return StandardWitness(True, m, tuple(H))
    logger.debug("no standard witness among %d matchings", tried)
    return StandardWitness(False)


def n_transitive_matching(g: Game, limits: Optional[SearchLimits] = None) -> Optional[Matching]:
    """A matching m with H_m = S_N, if any (transpositions are enough to test)."""
    _check_limits(g, limits)
    for m in iter_matchings(g, equal_utility_filter=True):
        if all(_is_auto(g, m, t) for t in transpositions(g.n)):
            return m
    return None


def has_n_transitive_strategy_trivial_group(g: Game, limits: Optional[SearchLimits] = None) -> bool:
    return n_transitive_matching(g, limits) is not None


def relabel_by_matching(g: Game, m: Matching) -> Game:
    """
    Renames strategies so every tuple of m carries player 1's label, and
    reorders each player's strategies to player 1's order. The result is
    strictly isomorphic to g and has identical strategy lists.
    """
    names = g.strategies[0]
    rows = [[None] * g.num_profiles for _ in range(g.n)]
    for k_new, t in enumerate(g.profiles()):
        old = [m.tuples[x][i] for i, x in enumerate(t)]
        k_old = g.profile_index(old)
        for i in range(g.n):
            rows[i][k_new] = g.payoffs[i][k_old]
    return Game(g.players, tuple(names for _ in g.players), tuple(tuple(r) for r in rows), g.title)


# -- classification

@dataclass(frozen=True)
class SymmetryReport:
    is_symmetric: bool
    is_fully_symmetric: bool
    is_standard_symmetric: bool
    is_vnm: bool
    is_dm: bool
    has_n_transitive_strategy_trivial_group: bool
    class_label: str
    automorphism_count: int
    player_projection: Tuple[Permutation, ...]
    standard_matching: Optional[Matching] = None
    standard_subgroup: Tuple[Permutation, ...] = ()
    vnm_matching: Optional[Matching] = None

    def to_payload(self, g: Game) -> dict:
        def perm(p):
            return [g.players[x] for x in p]
        return {
            "class_label": self.class_label,
            "is_symmetric": self.is_symmetric,
            "is_fully_symmetric": self.is_fully_symmetric,
            "is_standard_symmetric": self.is_standard_symmetric,
            "is_vnm": self.is_vnm,
            "is_dm": self.is_dm,
            "has_n_transitive_strategy_trivial_group": self.has_n_transitive_strategy_trivial_group,
            "automorphism_count": self.automorphism_count,
            "player_projection": [perm(p) for p in self.player_projection],
            "standard_matching": self.standard_matching.names(g) if self.standard_matching else None,
            "standard_subgroup": [perm(p) for p in self.standard_subgroup],
            "vnm_matching": self.vnm_matching.names(g) if self.vnm_matching else None,
        }


def class_label(symmetric: bool, fully: bool, standard: bool) -> str:
    if not symmetric:
        return NOT_SYMMETRIC
    if fully:
        return FULLY_STANDARD if standard else FULLY_NON_STANDARD
    return NON_FULLY_STANDARD if standard else NON_FULLY_NON_STANDARD


def classify(g: Game, limits: Optional[SearchLimits] = None) -> SymmetryReport:
    aut = automorphism_group(g)
    symmetric = is_player_transitive(aut)
    fully = is_player_n_transitive(aut)
    witness = standard_symmetric_witness(g, limits)
    vnm = is_vnm_symmetric(g)
    report = SymmetryReport(
        is_symmetric=symmetric,
        is_fully_symmetric=fully,
        is_standard_symmetric=witness.found,
        is_vnm=vnm,
        is_dm=is_dm_symmetric(g),
        has_n_transitive_strategy_trivial_group=has_n_transitive_strategy_trivial_group(g, limits),
        class_label=class_label(symmetric, fully, witness.found),
        automorphism_count=len(aut),
        player_projection=tuple(player_projection(aut)),
        standard_matching=witness.matching,
        standard_subgroup=witness.subgroup,
        vnm_matching=diagonal_matching(g) if vnm else None,
    )
    logger.info("classified %r as %s (|Aut| = %d)", g, report.class_label, report.automorphism_count)
    return report
