# gameforge/games/documents.py
"""
Reading and writing .game, .bij, .mix and .gens documents.

Documents are JSON with rationals as strings. The decoder keeps the source
offset of every string, list and object so schema and semantic errors can be
reported as "line L, column C: reason".
"""
from __future__ import annotations
import json
import logging
from json.decoder import JSONArray, JSONObject, scanstring
from json.scanner import py_make_scanner
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

from .bijection import GameBijection
from .core import Game, MixedProfile, build_game, check_distribution, zero_game
from .errors import DocumentError, ProfileError
from .labels import resolve_label
from .rationals import format_rational, parse_rational
from .schemas import BijectionDocument, GameDocument, GeneratorsDocument, MixedDocument, ShapeDocument

logger = logging.getLogger(__name__)

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

M = TypeVar("M", bound=BaseModel)


# -- located JSON tree

class LocatedStr(str):
    offset: int = 0


class LocatedList(list):
    offset: int = 0


class LocatedDict(dict):
    offset: int = 0


def _located(value, offset: int):
    value.offset = offset
    return value


class LocatingDecoder(json.JSONDecoder):
    """json.JSONDecoder that records offsets and rejects duplicate keys."""

    def __init__(self):
        super().__init__()
        self.parse_string = self._parse_string
        self.parse_array = self._parse_array
        self.parse_object = self._parse_object
        self.scan_once = py_make_scanner(self)

    @staticmethod
    def _parse_string(s: str, end: int, strict: bool = True):
        value, new_end = scanstring(s, end, strict)
        return _located(LocatedStr(value), end - 1), new_end

    @staticmethod
    def _parse_array(s_and_end, scan_once):
        values, new_end = JSONArray(s_and_end, scan_once)
        return _located(LocatedList(values), s_and_end[1] - 1), new_end

    @staticmethod
    def _parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None):
        s, end = s_and_end
        pairs, new_end = JSONObject(s_and_end, strict, scan_once, None, list, memo)
        out = _located(LocatedDict(), end - 1)
        for key, value in pairs:
            if key in out:
                line, column = position(s, end - 1)
                raise DocumentError(f"duplicate key {key!r}", line, column)
            out[key] = value
        return out, new_end


def position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def decode(text: str) -> Any:
    try:
        return LocatingDecoder().decode(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from None


def plain(tree: Any) -> Any:
    if isinstance(tree, dict):
        return {str(k): plain(v) for k, v in tree.items()}
    if isinstance(tree, list):
        return [plain(v) for v in tree]
    if isinstance(tree, str):
        return str(tree)
    return tree


def _error_at(text: str, node: Any, reason: str) -> DocumentError:
    offset = getattr(node, "offset", None)
    if offset is None:
        return DocumentError(reason)
    return DocumentError(reason, *position(text, offset))


def _walk(tree: Any, loc: Sequence) -> Any:
    """Deepest located node along a pydantic error location."""
    node, best = tree, tree
    for key in loc:
        if isinstance(node, dict) and key in node:
            node = node[key]
        elif isinstance(node, list) and isinstance(key, int) and 0 <= key < len(node):
            node = node[key]
        else:
            break
        if hasattr(node, "offset"):
            best = node
    return best


def _validate(model: Type[M], tree: Any, text: str) -> M:
    try:
        return model.model_validate(plain(tree))
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(p) for p in err["loc"]) or "document"
        raise _error_at(text, _walk(tree, err["loc"]), f"{where}: {err['msg']}") from None


# -- canonical writer

def _is_flat(value: Any) -> bool:
    items = value.values() if isinstance(value, dict) else value
    return not any(isinstance(v, (dict, list)) for v in items)


def _dump(value: Any, depth: int) -> str:
    if not isinstance(value, (dict, list)) or not value or _is_flat(value):
        return json.dumps(value, ensure_ascii=False)
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        body = ",\n".join(f"{inner}{json.dumps(k, ensure_ascii=False)}: {_dump(v, depth + 1)}" for k, v in value.items())
        return "{\n" + body + "\n" + pad + "}"
    body = ",\n".join(f"{inner}{_dump(v, depth + 1)}" for v in value)
    return "[\n" + body + "\n" + pad + "]"


def dumps_canonical(value: Any) -> str:
    """Two-space indentation, innermost lists and maps on one line, newline terminated."""
    return _dump(value, 0) + "\n"


# -- games

def _game_from_tree(tree: Any, text: str, doc, payoffs_required: bool) -> Game:
    players_node, strategies_node = tree["players"], tree["strategies"]
    n = len(doc.players)
    if n < 2:
        raise _error_at(text, players_node, f"a game needs at least two players (got {n})")
    for k, name in enumerate(doc.players):
        if name in doc.players[:k]:
            raise _error_at(text, players_node[k], f"duplicate player name {name!r}")
    if len(doc.strategies) != n:
        raise _error_at(text, strategies_node, f"expected {n} strategy lists, got {len(doc.strategies)}")
    size = 1
    for i, names in enumerate(doc.strategies):
        if not names:
            raise _error_at(text, strategies_node[i], f"player {doc.players[i]!r} has no strategies")
        for k, name in enumerate(names):
            if name in names[:k]:
                raise _error_at(text, strategies_node[i][k], f"duplicate strategy name {name!r}")
        size *= len(names)
    if doc.payoffs is None:
        if payoffs_required:
            raise _error_at(text, tree, "missing payoffs")
        return zero_game(doc.players, doc.strategies, doc.title)
    payoffs_node = tree["payoffs"]
    if len(doc.payoffs) != n:
        raise _error_at(text, payoffs_node, f"expected {n} payoff rows, got {len(doc.payoffs)}")
    rows = []
    for i, row in enumerate(doc.payoffs):
        if len(row) != size:
            raise _error_at(text, payoffs_node[i],
                            f"payoff row of player {doc.players[i]!r} has {len(row)} entries, expected {size}")
        values = []
        for k, literal in enumerate(row):
            v = parse_rational(literal)
            if v is None:
                raise _error_at(text, payoffs_node[i][k], f"malformed rational literal {literal!r}")
            values.append(v)
        rows.append(values)
    return build_game(doc.players, doc.strategies, rows, doc.title)


def parse_game(text: str) -> Game:
    tree = decode(text)
    doc = _validate(GameDocument, tree, text)
    return _game_from_tree(tree, text, doc, payoffs_required=True)


def parse_shape(text: str) -> Game:
    """A .game document with optional payoffs; only players and strategies matter."""
    tree = decode(text)
    doc = _validate(ShapeDocument, tree, text)
    return _game_from_tree(tree, text, doc, payoffs_required=False)


def game_to_dict(g: Game) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if g.title is not None:
        out["title"] = g.title
    out["players"] = list(g.players)
    out["strategies"] = [list(a) for a in g.strategies]
    out["payoffs"] = [[format_rational(v) for v in row] for row in g.payoffs]
    return out


def serialize_game(g: Game) -> str:
    return dumps_canonical(game_to_dict(g))


# -- bijections

def _bijection_from_tree(tree: Any, text: str, doc: BijectionDocument,
                         source: Game, target: Game) -> GameBijection:
    players_node, strategies_node = tree["players"], tree["strategies"]
    pi: List[Optional[int]] = [None] * source.n
    used = set()
    for a, b in doc.players.items():
        i = resolve_label(a, source.players, "source player", *position(text, players_node.offset))
        j = resolve_label(b, target.players, "target player", *position(text, players_node[a].offset))
        if j in used:
            raise _error_at(text, players_node[a], f"target player {b!r} is the image of two players")
        used.add(j)
        pi[i] = j
    missing = [source.players[i] for i, j in enumerate(pi) if j is None]
    if missing:
        raise _error_at(text, players_node, f"player map does not cover {missing}")
    for name in doc.strategies:
        resolve_label(name, source.players, "source player", *position(text, strategies_node.offset))
    taus = []
    for i, name in enumerate(source.players):
        if name not in doc.strategies:
            raise _error_at(text, strategies_node, f"no strategy map for player {name!r}")
        node, images = strategies_node[name], target.strategies[pi[i]]
        tau: List[Optional[int]] = [None] * source.sizes[i]
        hit = set()
        for x, y in doc.strategies[name].items():
            xi = resolve_label(x, source.strategies[i], f"strategy of {name!r}", *position(text, node.offset))
            yi = resolve_label(y, images, f"strategy of {target.players[pi[i]]!r}", *position(text, node[x].offset))
            if yi in hit:
                raise _error_at(text, node[x], f"strategy {y!r} is the image of two strategies of {name!r}")
            hit.add(yi)
            tau[xi] = yi
        if any(t is None for t in tau) or len(images) != len(tau):
            raise _error_at(text, node, f"strategy map of player {name!r} is not a bijection")
        taus.append(tuple(tau))
    return GameBijection(source, target, tuple(pi), tuple(taus))


def parse_bijection(text: str, source: Game, target: Game) -> GameBijection:
    tree = decode(text)
    doc = _validate(BijectionDocument, tree, text)
    return _bijection_from_tree(tree, text, doc, source, target)


def serialize_bijection(g: GameBijection) -> str:
    return dumps_canonical(g.describe())


def parse_generators(text: str, shape: Game) -> List[GameBijection]:
    tree = decode(text)
    doc = _validate(GeneratorsDocument, tree, text)
    return [
        _bijection_from_tree(node, text, gen, shape, shape)
        for node, gen in zip(tree["generators"], doc.generators)
    ]


def serialize_generators(gens: Sequence[GameBijection]) -> str:
    return dumps_canonical({"generators": [g.describe() for g in gens]})


# -- mixed profiles

def parse_mixed(text: str, g: Game) -> MixedProfile:
    tree = decode(text)
    doc = _validate(MixedDocument, tree, text)
    node = tree["mixed"]
    for name in doc.mixed:
        resolve_label(name, g.players, "player", *position(text, node.offset))
    sigma = []
    for i, name in enumerate(g.players):
        if name not in doc.mixed:
            raise _error_at(text, node, f"no distribution for player {name!r}")
        row_node, given = node[name], doc.mixed[name]
        row = [None] * g.sizes[i]
        for x, literal in given.items():
            xi = resolve_label(x, g.strategies[i], f"strategy of {name!r}", *position(text, row_node.offset))
            v = parse_rational(literal)
            if v is None:
                raise _error_at(text, row_node[x], f"malformed rational literal {literal!r}")
            row[xi] = v
        if any(p is None for p in row):
            raise _error_at(text, row_node, f"every strategy of {name!r} needs a probability")
        try:
            sigma.append(check_distribution(g, i, row))
        except ProfileError as e:
            raise _error_at(text, row_node, str(e)) from None
    return tuple(sigma)


def mixed_to_dict(g: Game, sigma: MixedProfile) -> Dict[str, Any]:
    return {
        name: {x: format_rational(p) for x, p in zip(g.strategies[i], sigma[i])}
        for i, name in enumerate(g.players)
    }


def serialize_mixed(g: Game, sigma: MixedProfile) -> str:
    return dumps_canonical({"mixed": mixed_to_dict(g, sigma)})


# -- files

def read_document(path) -> str:
    try:
        return Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError(f"{path}: not UTF-8 ({e.reason})") from None
    except OSError as e:
        raise DocumentError(f"{path}: {e.strerror}") from None


def load_game(path) -> Game:
    logger.debug("loading game %s", path)
    return parse_game(read_document(path))


def load_shape(path) -> Game:
    return parse_shape(read_document(path))


def load_bijection(path, source: Game, target: Game) -> GameBijection:
    return parse_bijection(read_document(path), source, target)


def load_mixed(path, g: Game) -> MixedProfile:
    return parse_mixed(read_document(path), g)


def load_generators(path, shape: Game) -> List[GameBijection]:
    return parse_generators(read_document(path), shape)


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / name
