# tests/test_documents.py
from __future__ import annotations
from fractions import Fraction

import pytest

from gameforge.games import documents
from gameforge.games.documents import (
    FIXTURES_DIR, dumps_canonical, parse_bijection, parse_game, parse_generators, parse_mixed,
    parse_shape, serialize_bijection, serialize_game, serialize_generators, serialize_mixed,
)
from gameforge.games.errors import DocumentError, InvalidGameError, UnknownNameError

GAME_FIXTURES = sorted(p.name for p in FIXTURES_DIR.glob("*.game") if not p.name.endswith(".shape.game"))

BIJECTIONS = [
    ("iso_left_right.bij", "iso_left.game", "iso_right.game"),
    ("pd_relabelled_1.bij", "pd.game", "pd_relabelled.game"),
    ("pd_relabelled_2.bij", "pd.game", "pd_relabelled.game"),
    ("pd_identity.bij", "pd.game", "pd.game"),
]

MIXED = [
    ("pd_intro_sigma.mix", "pd_intro.game"),
    ("mp_uniform.mix", "mp.game"),
]

EXAMPLE = """{
  "players": ["1", "2"],
  "strategies": [["a", "b"], ["c", "d"]],
  "payoffs": [["1", "2", "x", "4"], ["1", "2", "3", "4"]]
}
"""


def _text(name: str) -> str:
    return documents.read_document(documents.fixture_path(name))


def test_fixture_list_is_not_empty():
    assert "pd.game" in GAME_FIXTURES
    assert "general_2x2.shape.game" not in GAME_FIXTURES


@pytest.mark.parametrize("name", GAME_FIXTURES)
def test_game_documents_are_canonical(name):
    text = _text(name)
    assert serialize_game(parse_game(text)) == text


@pytest.mark.parametrize("name, source, target", BIJECTIONS)
def test_bijection_documents_are_canonical(fixture_game, name, source, target):
    text = _text(name)
    h = parse_bijection(text, fixture_game(source), fixture_game(target))
    assert serialize_bijection(h) == text


@pytest.mark.parametrize("name, game", MIXED)
def test_mixed_documents_are_canonical(fixture_game, name, game):
    g = fixture_game(game)
    text = _text(name)
    assert serialize_mixed(g, parse_mixed(text, g)) == text


def test_generators_document():
    shape = parse_shape(_text("general_2x2.shape.game"))
    assert all(v == 0 for row in shape.payoffs for v in row)
    text = _text("general_2x2.gens")
    gens = parse_generators(text, shape)
    assert [g.key for g in gens] == [((1, 0), ((0, 1), (0, 1)))]
    assert serialize_generators(gens) == text


def test_shape_is_not_a_game():
    with pytest.raises(DocumentError, match="missing payoffs") as info:
        parse_game(_text("general_2x2.shape.game"))
    assert (info.value.line, info.value.column) == (1, 1)


def test_padded_rational_literal_is_rejected():
    text = EXAMPLE.replace('"x"', '" 3"')
    with pytest.raises(DocumentError, match="malformed rational literal") as info:
        parse_game(text)
    assert info.value.line == 4


def test_decimals_are_read_exactly():
    text = EXAMPLE.replace('"x"', '"2.2"')
    g = parse_game(text)
    assert g.payoffs[0][2] == Fraction(11, 5)
    assert '"11/5"' in serialize_game(g)


def test_malformed_literal_is_positioned():
    with pytest.raises(DocumentError) as err:
        parse_game(EXAMPLE)
    assert (err.value.line, err.value.column) == (4, 26)
    assert str(err.value).startswith("line 4, column 26: malformed rational literal")


def test_schema_type_error_is_positioned():
    with pytest.raises(DocumentError) as err:
        parse_game(EXAMPLE.replace('"x"', "3"))
    assert (err.value.line, err.value.column) == (4, 15)
    assert "payoffs.0.2" in err.value.reason


def test_unexpected_field_is_rejected():
    with pytest.raises(DocumentError, match="colour"):
        parse_game(EXAMPLE.replace('"x"', '"3"').replace("{\n", '{\n  "colour": "red",\n', 1))


def test_duplicate_keys_are_rejected():
    text = '{"players": ["1", "2"], "players": ["1", "2"]}'
    with pytest.raises(DocumentError, match="duplicate key 'players'") as err:
        parse_game(text)
    assert (err.value.line, err.value.column) == (1, 1)


def test_json_syntax_error_is_positioned():
    with pytest.raises(DocumentError) as err:
        parse_game('{\n  "players": ["1", "2",]\n}')
    assert err.value.line == 2


def test_semantic_errors_point_at_the_node():
    text = EXAMPLE.replace('"x"', '"3"').replace('["c", "d"]', '["c", "c"]')
    with pytest.raises(DocumentError, match="duplicate strategy name 'c'") as err:
        parse_game(text)
    assert err.value.line == 3


def test_invalid_game_after_parsing():
    text = EXAMPLE.replace('"x"', '"3"').replace('"players": ["1", "2"]', '"players": ["1"]')
    with pytest.raises((DocumentError, InvalidGameError)):
        parse_game(text)


def test_unknown_name_suggests_a_close_label(fixture_game):
    left, right = fixture_game("iso_left.game"), fixture_game("iso_right.game")
    text = _text("iso_left_right.bij").replace('"a2": "d1"', '"a11": "d1"')
    with pytest.raises(UnknownNameError) as err:
        parse_bijection(text, left, right)
    assert err.value.suggestion == "a1"
    assert "did you mean 'a1'" in str(err.value)


def test_two_to_one_strategy_map_is_rejected(fixture_game):
    left, right = fixture_game("iso_left.game"), fixture_game("iso_right.game")
    text = _text("iso_left_right.bij").replace('"a2": "d1"', '"a2": "d2"')
    with pytest.raises(DocumentError, match="image of two strategies"):
        parse_bijection(text, left, right)


def test_identity_bijection_document(fixture_game):
    pd = fixture_game("pd.game")
    h = parse_bijection(_text("pd_identity.bij"), pd, pd)
    assert h.is_identity()


def test_mixed_profile_must_be_a_distribution(fixture_game):
    mp = fixture_game("mp.game")
    text = _text("mp_uniform.mix").replace('"T": "1/2"},\n    "2"', '"T": "1/3"},\n    "2"')
    with pytest.raises(DocumentError):
        parse_mixed(text, mp)


def test_canonical_writer_layout():
    assert dumps_canonical({"a": [1, 2], "b": {"c": "d"}}) == '{\n  "a": [1, 2],\n  "b": {"c": "d"}\n}\n'
    assert dumps_canonical([]) == "[]\n"


def test_non_utf8_input(tmp_path):
    path = tmp_path / "bad.game"
    path.write_bytes(b"\xff\xfe{}")
    with pytest.raises(DocumentError, match="not UTF-8"):
        documents.load_game(path)
