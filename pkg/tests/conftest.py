# tests/conftest.py
from __future__ import annotations
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from gameforge.games import documents  # noqa: E402
from gameforge.games.bijection import GameBijection  # noqa: E402
from gameforge.games.core import Game, build_game  # noqa: E402

LETTERS = "abcdefghijklmnop"


@pytest.fixture
def fixture_game():
    def load(name: str) -> Game:
        return documents.load_game(documents.fixture_path(name))
    return load


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def random_game(rng: random.Random, sizes, low: int = -5, high: int = 5, title=None) -> Game:
    players = [str(i + 1) for i in range(len(sizes))]
    strategies = [[f"{LETTERS[i]}{x}" for x in range(d)] for i, d in enumerate(sizes)]
    total = 1
    for d in sizes:
        total *= d
    payoffs = [[Fraction(rng.randint(low, high), rng.randint(1, 3)) for _ in range(total)] for _ in sizes]
    return build_game(players, strategies, payoffs, title)


def random_structure(rng: random.Random, sizes):
    """Random (pi, taus) between two games of equal sizes in every position."""
    n = len(sizes)
    pi = list(range(n))
    rng.shuffle(pi)
    taus = []
    for d in sizes:
        t = list(range(d))
        rng.shuffle(t)
        taus.append(tuple(t))
    return tuple(pi), tuple(taus)


def random_mixed(rng: random.Random, sizes):
    """Random exact mixed profile; some strategies get probability zero."""
    out = []
    for d in sizes:
        weights = [rng.randint(0, 4) for _ in range(d)]
        if not any(weights):
            weights[rng.randrange(d)] = 1
        total = sum(weights)
        out.append(tuple(Fraction(w, total) for w in weights))
    return tuple(out)


def image_game(g: Game, pi, taus, title=None) -> Game:
    """The game h.g with v_{pi(i)}(h.s) = u_i(s), so (pi; taus) is a strict isomorphism g -> h.g."""
    rows = [[None] * g.num_profiles for _ in range(g.n)]
    for k, s in enumerate(g.profiles()):
        t = [0] * g.n
        for i, x in enumerate(s):
            t[pi[i]] = taus[i][x]
        kt = g.profile_index(t)
        for i in range(g.n):
            rows[pi[i]][kt] = g.payoffs[i][k]
    return Game(g.players, g.strategies, tuple(tuple(r) for r in rows), title)


@pytest.fixture
def make_game():
    return random_game


@pytest.fixture
def make_mixed():
    return random_mixed


@pytest.fixture
def make_structure():
    return random_structure


@pytest.fixture
def make_image():
    def build(g: Game, pi, taus):
        target = image_game(g, pi, taus)
        return target, GameBijection(g, target, tuple(pi), tuple(taus))
    return build
