# tests/test_construct.py
from __future__ import annotations
from fractions import Fraction

import pytest

from gameforge.games import documents
from gameforge.games.bijection import (
    diagonal_matching, identity_bijection, induced_bijection, transpositions, validate_matching,
)
from gameforge.games.construct import (
    construct_from_generators, generator_from_maps, seeded_values, shape_of,
)
from gameforge.games.core import pure_nash_equilibria
from gameforge.games.errors import ConstructionError
from gameforge.games.isomorphism import verify_strict
from gameforge.games.symmetry import (
    is_vnm_symmetric, n_transitive_matching, relabel_by_matching, standard_symmetric_witness,
)

F = Fraction


@pytest.fixture
def general_2x2():
    shape = documents.load_shape(documents.fixture_path("general_2x2.shape.game"))
    gens = documents.load_generators(documents.fixture_path("general_2x2.gens"), shape)
    return shape, gens


def test_general_2x2_orbits(general_2x2):
    shape, gens = general_2x2
    built = construct_from_generators(shape, gens, values=["1", "2", "3", "4"])
    assert built.orbits == (
        ((0, 0), (1, 0)),
        ((0, 1), (1, 2)),
        ((0, 2), (1, 1)),
        ((0, 3), (1, 3)),
    )
    assert built.game.payoffs == (
        (F(1), F(2), F(3), F(4)),
        (F(1), F(3), F(2), F(4)),
    )
    assert len(built.group) == 2
    assert built.player_transitive


def test_every_group_element_is_an_automorphism(general_2x2):
    shape, gens = general_2x2
    built = construct_from_generators(shape, gens, seed=7)
    assert built.group.is_closed()
    assert all(verify_strict(h) for h in built.group)


def test_identity_generator_gives_singleton_orbits(general_2x2):
    shape, _ = general_2x2
    built = construct_from_generators(shape, [identity_bijection(shape)], seed=3)
    assert len(built.orbits) == 8
    assert all(len(orbit) == 1 for orbit in built.orbits)
    assert not built.player_transitive


def test_seeded_construction_is_reproducible(general_2x2):
    shape, gens = general_2x2
    first = construct_from_generators(shape, gens, seed=2**63)
    second = construct_from_generators(shape, gens, seed=2**63)
    assert first.game == second.game
    values = seeded_values(11, 20)
    assert len(set(values)) == 20
    assert all(v > 0 for v in values)


@pytest.mark.parametrize("kwargs", [
    {},
    {"values": ["1", "2", "3", "4"], "seed": 1},
    {"values": ["1", "2"]},
    {"values": ["1", "2", "x", "4"]},
    {"seed": -1},
    {"seed": 2**64},
])
def test_construction_errors(general_2x2, kwargs):
    shape, gens = general_2x2
    with pytest.raises(ConstructionError):
        construct_from_generators(shape, gens, **kwargs)


def test_extra_values_are_ignored(general_2x2, caplog):
    shape, gens = general_2x2
    built = construct_from_generators(shape, gens, values=["1", "2", "3", "4", "5"])
    assert built.game.payoffs[0] == (F(1), F(2), F(3), F(4))
    assert "only the first 4" in caplog.text


def test_generator_must_be_a_bijection(general_2x2):
    shape, _ = general_2x2
    with pytest.raises(ConstructionError):
        generator_from_maps(shape, (0, 0), ((0, 1), (0, 1)))
    with pytest.raises(ConstructionError):
        generator_from_maps(shape, (1, 0), ((0, 0), (0, 1)))


def test_generator_must_act_on_the_shape(general_2x2):
    shape, _ = general_2x2
    other = shape_of(["1", "2"], [["a", "b"], ["c", "e"]])
    with pytest.raises(ConstructionError):
        construct_from_generators(shape, [identity_bijection(other)], seed=1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetric_two_strategy_games_have_pure_equilibria(n):
    shape = shape_of([str(i + 1) for i in range(n)], [["x", "y"]] * n)
    m = diagonal_matching(shape)
    gens = [induced_bijection(m, t, shape) for t in transpositions(n)]
    for seed in range(100):
        built = construct_from_generators(shape, gens, seed=seed)
        assert is_vnm_symmetric(built.game)
        assert pure_nash_equilibria(built.game)


def test_constructed_standard_game_relabels_to_vnm():
    shape = shape_of(["1", "2", "3"], [["a", "b"], ["c", "d"], ["e", "f"]])
    m = validate_matching(shape, [(0, 0, 0), (1, 1, 1)])
    gens = [induced_bijection(m, t, shape) for t in transpositions(3)]
    built = construct_from_generators(shape, gens, seed=5)
    assert len(built.group) == 6
    assert standard_symmetric_witness(built.game).found
    found = n_transitive_matching(built.game)
    assert found == m
    assert is_vnm_symmetric(relabel_by_matching(built.game, found))
