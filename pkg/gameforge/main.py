# gameforge/main.py
from __future__ import annotations
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import click

from gameforge.games import documents, report
from gameforge.games.bijection import GameBijection
from gameforge.games.census import ordinal_census_2x2
from gameforge.games.construct import construct_from_generators
from gameforge.games.core import (
    Game, best_response_profiles, deviation_payoffs, dominated_pairs, expected_utility,
    is_mixed_best_response, is_mixed_nash, is_pure_nash, pure_best_responses,
    pure_nash_equilibria, strictly_dominates_mixed, strictly_dominates_pure, utility,
)
from gameforge.games.errors import DocumentError, GameForgeError, ProfileError
from gameforge.games.isomorphism import (
    IsoMode, cardinal_witnesses, is_isomorphism, search_isomorphisms, verify_cardinal,
)
from gameforge.games.labels import resolve_label
from gameforge.games.patterns import LIST_SEP_RE
from gameforge.games.rationals import format_rational, parse_rational
from gameforge.games.symmetry import automorphism_group, classify, player_projection

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

GAME_FILE = click.Path(dir_okay=False)


class GameForgeGroup(click.Group):
    """Maps library errors to exit code 3 with a diagnostic on stderr."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except GameForgeError as e:
            fmt = (ctx.obj or {}).get("format", "text")
            if fmt == "json":
                click.echo(report.build_error(e), err=True, nl=False)
            else:
                click.echo(f"error [{e.code}]: {e}", err=True)
            ctx.exit(EXIT_INPUT)


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s", force=True)


def _emit(command: str, inputs: Sequence[str], result: Dict[str, Any],
          lines: List[str], code: int = EXIT_OK) -> None:
    ctx = click.get_current_context()
    if ctx.obj["format"] == "json":
        click.echo(report.build_report(command, report.input_digests(inputs), result), nl=False)
    else:
        for line in lines:
            click.echo(line)
    ctx.exit(code)


# -- argument helpers

def _split(raw: str) -> List[str]:
    raw = raw.strip()
    return LIST_SEP_RE.split(raw) if raw else []


def _player(g: Game, name: str) -> int:
    return resolve_label(name, g.players, "player")


def _strategy(g: Game, i: int, name: str) -> int:
    return resolve_label(name, g.strategies[i], f"strategy of {g.players[i]!r}")


def _profile(g: Game, raw: str) -> tuple:
    names = _split(raw)
    if len(names) != g.n:
        raise ProfileError(f"profile needs {g.n} strategies, got {len(names)}")
    return tuple(_strategy(g, i, x) for i, x in enumerate(names))


def _rationals(raw: str) -> list:
    out = []
    for literal in _split(raw):
        v = parse_rational(literal)
        if v is None:
            raise DocumentError(f"malformed rational literal {literal!r}")
        out.append(v)
    return out


def _names(g: Game, s) -> List[str]:
    return report.profile_names(g, s)


def _bijection_text(h: GameBijection) -> str:
    d = h.describe()
    players = ", ".join(f"{a}->{b}" for a, b in d["players"].items())
    strategies = "; ".join(
        f"{p}: " + ", ".join(f"{x}->{y}" for x, y in m.items()) for p, m in d["strategies"].items()
    )
    return f"players {players} | {strategies}"


def _witness_text(witness: Dict[str, Dict[str, str]]) -> str:
    return "; ".join(f"{p}: scale {w['scale']}, shift {w['shift']}" for p, w in witness.items())


def create_cli() -> click.Group:

    @click.group(cls=GameForgeGroup)
    @click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                  help="Output format.")
    @click.option("-v", "--verbose", count=True, help="Log progress to stderr (-vv for debug).")
    @click.pass_context
    def cli(ctx: click.Context, fmt: str, verbose: int):
        """Exact-arithmetic finite games: equilibria, isomorphisms and symmetries."""
        ctx.ensure_object(dict)
        ctx.obj["format"] = fmt
        _setup_logging(verbose)

    @cli.command()
    @click.argument("game", type=GAME_FILE)
    def info(game):
        """Players, strategies and tensor size of a game."""
        g = documents.load_game(game)
        result = {
            "title": g.title,
            "players": list(g.players),
            "strategies": {p: list(a) for p, a in zip(g.players, g.strategies)},
            "profiles": g.num_profiles,
        }
        lines = [f"title: {g.title or '-'}", f"profiles: {g.num_profiles}"]
        lines += [f"{p}: {', '.join(a)}" for p, a in zip(g.players, g.strategies)]
        _emit("info", [game], result, lines)

    @cli.command()
    @click.argument("game", type=GAME_FILE)
    @click.option("--profile", "raw_profile", required=True, help="One strategy per player, comma separated.")
    @click.option("--player", default=None, help="Only this player's payoff.")
    def payoff(game, raw_profile, player):
        """Payoffs of a pure profile."""
        g = documents.load_game(game)
        s = _profile(g, raw_profile)
        players = [_player(g, player)] if player else range(g.n)
        values = {g.players[i]: format_rational(utility(g, i, s)) for i in players}
        result = {"profile": _names(g, s), "payoffs": values}
        _emit("payoff", [game], result, [f"{p}: {v}" for p, v in values.items()])

    @cli.command("pure-nash")
    @click.argument("game", type=GAME_FILE)
    def pure_nash(game):
        """All pure Nash equilibria."""
        g = documents.load_game(game)
        found = [_names(g, s) for s in pure_nash_equilibria(g)]
        lines = [f"({', '.join(s)})" for s in found] or ["no pure Nash equilibrium"]
        _emit("pure-nash", [game], {"count": len(found), "equilibria": found}, lines)

    @cli.command("best-response")
    @click.argument("game", type=GAME_FILE)
    @click.option("--profile", "raw_profile", required=True)
    @click.option("--player", default=None)
    def best_response(game, raw_profile, player):
        """Pure best responses of each player (or one) to the others' strategies in a profile."""
        g = documents.load_game(game)
        s = _profile(g, raw_profile)
        players = [_player(g, player)] if player else range(g.n)
        responses = {
            g.players[i]: [g.strategies[i][x] for x in pure_best_responses(g, i, s[:i] + s[i + 1:])]
            for i in players
        }
        result = {
            "profile": _names(g, s),
            "best_responses": responses,
            "best_response_profiles": [_names(g, t) for t in best_response_profiles(g, s)],
            "is_nash": is_pure_nash(g, s),
        }
        lines = [f"{p}: {', '.join(xs)}" for p, xs in responses.items()]
        lines.append(f"nash: {'yes' if result['is_nash'] else 'no'}")
        _emit("best-response", [game], result, lines)

    @cli.command()
    @click.argument("game", type=GAME_FILE)
    @click.option("--player", required=True)
    @click.option("--strategy", default=None, help="Dominating (pure) or dominated (mixed) strategy.")
    @click.option("--over", default=None, help="Strategy checked to be strictly dominated by --strategy.")
    @click.option("--mixed", "raw_mixed", default=None, help="Probabilities over the player's strategies.")
    def dominance(game, player, strategy, over, raw_mixed):
        """Strict dominance: list dominated pairs, or test one pure or mixed claim."""
        g = documents.load_game(game)
        i = _player(g, player)
        names = g.strategies[i]
        if strategy is None:
            if over or raw_mixed:
                raise click.UsageError("--over and --mixed need --strategy")
            pairs = [[names[a], names[b]] for a, b in dominated_pairs(g, i)]
            lines = [f"{a} > {b}" for a, b in pairs] or ["no strictly dominated strategy"]
            return _emit("dominance", [game], {"player": g.players[i], "dominates": pairs}, lines)
        if (over is None) == (raw_mixed is None):
            raise click.UsageError("give exactly one of --over and --mixed")
        x = _strategy(g, i, strategy)
        if over is not None:
            y = _strategy(g, i, over)
            holds = strictly_dominates_pure(g, i, x, y)
            result = {"player": g.players[i], "strategy": names[x], "over": names[y], "dominates": holds}
            line = f"{names[x]} {'strictly dominates' if holds else 'does not strictly dominate'} {names[y]}"
        else:
            sigma = _rationals(raw_mixed)
            holds = strictly_dominates_mixed(g, i, sigma, x)
            result = {"player": g.players[i], "mixed": report.rationals(sigma), "strategy": names[x],
                      "dominates": holds}
            line = f"mixed strategy {'strictly dominates' if holds else 'does not strictly dominate'} {names[x]}"
        _emit("dominance", [game], result, [line], EXIT_OK if holds else EXIT_FALSE)

    @cli.command("verify-ne")
    @click.argument("game", type=GAME_FILE)
    @click.argument("mix", type=GAME_FILE)
    def verify_ne(game, mix):
        """Check that a mixed profile is a Nash equilibrium."""
        g = documents.load_game(game)
        sigma = documents.load_mixed(mix, g)
        holds = is_mixed_nash(g, sigma)
        players = {}
        for i, p in enumerate(g.players):
            dev = deviation_payoffs(g, i, sigma)
            players[p] = {
                "expected_utility": format_rational(expected_utility(g, i, sigma)),
                "deviations": dict(zip(g.strategies[i], report.rationals(dev))),
                "best_responding": is_mixed_best_response(g, i, sigma),
            }
        result = {"is_nash": holds, "players": players}
        lines = [f"{p}: {v['expected_utility']}" + ("" if v["best_responding"] else " (can improve)")
                 for p, v in players.items()]
        lines.append(f"nash: {'yes' if holds else 'no'}")
        _emit("verify-ne", [game, mix], result, lines, EXIT_OK if holds else EXIT_FALSE)

    @cli.command()
    @click.argument("game1", type=GAME_FILE)
    @click.argument("game2", type=GAME_FILE)
    @click.option("--mode", type=click.Choice([m.value for m in IsoMode]), default=IsoMode.STRICT.value)
    @click.option("--all", "find_all", is_flag=True, help="List every isomorphism, not just the first.")
    @click.option("--bijection", type=GAME_FILE, default=None, help="Verify this bijection instead of searching.")
    def iso(game1, game2, mode, find_all, bijection):
        """Search for (or verify) isomorphisms between two games."""
        mode = IsoMode(mode)
        g1, g2 = documents.load_game(game1), documents.load_game(game2)
        if bijection:
            h = documents.load_bijection(bijection, g1, g2)
            result: Dict[str, Any] = {"mode": mode.value, "bijection": h.describe()}
            if mode is IsoMode.CARDINAL:
                holds, witness = verify_cardinal(h)
                result["witness"] = report.witness_payload(g1, witness) if witness else None
            else:
                holds = is_isomorphism(h, mode)
            result["is_isomorphism"] = holds
            line = f"{mode.value} isomorphism: {'yes' if holds else 'no'}"
            return _emit("iso", [game1, game2, bijection], result, [line], EXIT_OK if holds else EXIT_FALSE)
        found = search_isomorphisms(g1, g2, mode, limit=None if find_all else 1)
        entries = [h.describe() for h in found]
        lines = [f"{mode.value}: {'isomorphic' if found else 'not isomorphic'}"]
        texts = [_bijection_text(h) for h in found]
        if mode is IsoMode.CARDINAL:
            for k, w in enumerate(cardinal_witnesses(found)):
                entries[k]["witness"] = report.witness_payload(g1, w)
                texts[k] += " | " + _witness_text(entries[k]["witness"])
        result = {"mode": mode.value, "equivalent": bool(found), "isomorphisms": entries}
        if find_all:
            result["count"] = len(found)
        lines += texts
        _emit("iso", [game1, game2], result, lines, EXIT_OK if found else EXIT_FALSE)

    @cli.command()
    @click.argument("game", type=GAME_FILE)
    def aut(game):
        """The automorphism group."""
        g = documents.load_game(game)
        group = automorphism_group(g)
        result = {
            "order": len(group),
            "player_projection": [[g.players[x] for x in p] for p in player_projection(group)],
            "automorphisms": [h.describe() for h in group],
        }
        lines = [f"order: {len(group)}"] + [_bijection_text(h) for h in group]
        _emit("aut", [game], result, lines)

    @cli.command("classify")
    @click.argument("game", type=GAME_FILE)
    def classify_cmd(game):
        """Symmetry flags and the symmetric-game class."""
        g = documents.load_game(game)
        rep = classify(g)
        payload = rep.to_payload(g)
        lines = [rep.class_label]
        lines += [f"{k}: {'yes' if v else 'no'}" for k, v in payload.items() if isinstance(v, bool)]
        lines.append(f"automorphisms: {rep.automorphism_count}")
        _emit("classify", [game], payload, lines)

    @cli.command()
    @click.argument("shape", type=GAME_FILE)
    @click.option("--generators", type=GAME_FILE, required=True)
    @click.option("--seed", type=int, default=None)
    @click.option("--values", "raw_values", default=None, help="One value per orbit, comma separated.")
    @click.option("--title", default=None)
    @click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
                  help="Also write the .game document here.")
    def construct(shape, generators, seed, raw_values, title, output):
        """Build a game from symmetry generators, one payoff per orbit."""
        if (seed is None) == (raw_values is None):
            raise click.UsageError("give exactly one of --seed and --values")
        base = documents.load_shape(shape)
        gens = documents.load_generators(generators, base)
        values = _rationals(raw_values) if raw_values is not None else None
        built = construct_from_generators(base, gens, values=values, seed=seed, title=title or base.title)
        text = documents.serialize_game(built.game)
        if output:
            with open(output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            logger.info("wrote %s", output)
        result = {
            "game": documents.game_to_dict(built.game),
            "group_order": len(built.group),
            "orbits": [[[built.game.players[i], *_names(built.game, built.game.profile_at(k))]
                        for i, k in orbit] for orbit in built.orbits],
            "player_transitive": built.player_transitive,
        }
        _emit("construct", [shape, generators], result, text.rstrip("\n").split("\n"))

    @cli.command("census-2x2")
    def census_2x2():
        """Ordinal equivalence classes of the strict 2x2 games."""
        c = ordinal_census_2x2()
        result = {
            "class_count": c.class_count,
            "total_games": c.total_games,
            "class_sizes": list(c.class_sizes),
            "class_count_with_player_swap": c.class_count_with_player_swap,
        }
        lines = [f"games: {c.total_games}", f"classes: {c.class_count}",
                 f"classes with player swap: {c.class_count_with_player_swap}"]
        _emit("census-2x2", [], result, lines)

    return cli


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the CLI on argv and returns its exit code instead of exiting."""
    try:
        create_cli().main(args=list(argv) if argv is not None else None, prog_name="gameforge")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK if e.code is None else EXIT_USAGE
    return EXIT_OK
