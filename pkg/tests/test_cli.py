# tests/test_cli.py
from __future__ import annotations
import json
import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from gameforge.games.documents import FIXTURES_DIR, load_game
from gameforge.games.patterns import FORMAT_VERSION
from gameforge.main import EXIT_FALSE, EXIT_INPUT, EXIT_OK, EXIT_USAGE, cli_dispatch, create_cli

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"
GOLDEN = sorted(GOLDEN_DIR.glob("*.json"))


def fx(name: str) -> str:
    return str(FIXTURES_DIR / name)


@pytest.fixture
def run():
    runner = CliRunner()
    root = logging.getLogger()
    level = root.level

    def invoke(*args):
        return runner.invoke(create_cli(), list(args))
    yield invoke
    # drop the stderr handlers installed by -v / basicConfig
    for handler in [h for h in root.handlers if type(h) is logging.StreamHandler]:
        root.removeHandler(handler)
    root.setLevel(level)


def _contains(actual, expected) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _contains(actual[k], v) for k, v in expected.items())
    return actual == expected


@pytest.mark.parametrize("path", GOLDEN, ids=[p.stem for p in GOLDEN])
def test_golden_transcripts(run, path):
    golden = json.loads(path.read_text(encoding="utf-8"))
    argv = [a.replace("{fixtures}", str(FIXTURES_DIR)) for a in golden["argv"]]
    first, second = run(*argv), run(*argv)
    assert first.exit_code == golden["exit_code"], first.stderr
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert report["ok"] is True
    assert report["version"] == FORMAT_VERSION
    assert _contains(report["result"], golden["result"]), report["result"]


def test_report_records_input_digests(run):
    result = run("--format", "json", "info", fx("pd.game"))
    report = json.loads(result.stdout)
    assert report["command"] == "info"
    [(path, digest)] = report["inputs"].items()
    assert path == fx("pd.game")
    assert len(digest) == 64
    assert report["result"]["profiles"] == 4


def test_text_output(run):
    result = run("pure-nash", fx("pd.game"))
    assert result.exit_code == EXIT_OK
    assert result.stdout == "(c, c)\n"
    result = run("classify", fx("mp.game"))
    assert result.stdout.splitlines()[0] == "fully non-standard symmetric"


def test_cardinal_search_text_lists_witnesses(run):
    result = run("iso", fx("pd.game"), fx("pd_scaled.game"), "--mode", "cardinal")
    assert result.exit_code == EXIT_OK
    assert result.stdout.splitlines() == [
        "cardinal: isomorphic",
        "players 1->1, 2->2 | 1: d->d, c->c; 2: d->d, c->c | 1: scale 2, shift 1; 2: scale 3, shift -2",
    ]
    assert run("iso", fx("pd.game"), fx("pd_scaled.game")).exit_code == EXIT_FALSE


def test_construct_writes_a_game_document(run, tmp_path):
    out = tmp_path / "built.game"
    result = run("construct", fx("general_2x2.shape.game"), "--generators", fx("general_2x2.gens"),
                 "--seed", "42", "--output", str(out))
    assert result.exit_code == EXIT_OK
    assert out.read_text(encoding="utf-8") == result.stdout
    g = load_game(out)
    assert g.payoffs[0][0] == g.payoffs[1][0]


def test_mixed_dominance_claim(run, tmp_path):
    path = tmp_path / "tmb.game"
    path.write_text(json.dumps({
        "players": ["1", "2"],
        "strategies": [["T", "M", "B"], ["L", "R"]],
        "payoffs": [["3", "0", "0", "3", "1", "1"], ["0", "0", "0", "0", "0", "0"]],
    }), encoding="utf-8")
    ok = run("dominance", str(path), "--player", "1", "--strategy", "B", "--mixed", "1/2,1/2,0")
    assert ok.exit_code == EXIT_OK
    no = run("dominance", str(path), "--player", "1", "--strategy", "B", "--mixed", "1/4,3/4,0")
    assert no.exit_code == EXIT_FALSE


def test_best_response(run):
    result = run("--format", "json", "best-response", fx("pd.game"), "--profile", "d,d")
    report = json.loads(result.stdout)["result"]
    assert report["best_responses"] == {"1": ["c"], "2": ["c"]}
    assert report["is_nash"] is False


@pytest.mark.parametrize("args", [
    ["classify"],
    ["iso", fx("pd.game"), fx("mp.game"), "--mode", "affine"],
    ["payoff", fx("pd.game")],
    ["construct", fx("general_2x2.shape.game"), "--generators", fx("general_2x2.gens")],
    ["dominance", fx("pd.game"), "--player", "1", "--strategy", "c"],
    ["no-such-command"],
])
def test_usage_errors(run, args):
    assert run(*args).exit_code == EXIT_USAGE


def test_input_error_in_text_mode(run):
    result = run("payoff", fx("pd.game"), "--profile", "d,cc")
    assert result.exit_code == EXIT_INPUT
    assert result.stdout == ""
    assert result.stderr.startswith("error [unknown_name]:")
    assert "did you mean 'c'" in result.stderr


def test_input_error_envelope_in_json_mode(run, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text('{\n  "players": ["1", "2"],\n  "strategies": [["a"], ["b"]],\n  "payoffs": [["1"], ["z"]]\n}\n',
                   encoding="utf-8")
    result = run("--format", "json", "info", str(bad))
    assert result.exit_code == EXIT_INPUT
    assert result.stdout == ""
    envelope = json.loads(result.stderr)
    assert envelope["ok"] is False
    assert envelope["error"]["code"] == "parse_error"
    assert envelope["error"]["message"].startswith("line 4, column 23:")


def test_limits_from_the_environment(run, monkeypatch):
    monkeypatch.setenv("GAMEFORGE_LIMITS", "players=2")
    result = run("--format", "json", "classify", fx("vnm3.game"))
    assert result.exit_code == EXIT_INPUT
    assert json.loads(result.stderr)["error"]["code"] == "limit_exceeded"
    monkeypatch.setenv("GAMEFORGE_LIMITS", "players=two")
    result = run("classify", fx("vnm3.game"))
    assert result.exit_code == EXIT_INPUT
    assert "config_error" in result.stderr


def test_verbose_logging_stays_on_stderr(run):
    quiet = run("--format", "json", "classify", fx("pd.game"))
    loud = run("-vv", "--format", "json", "classify", fx("pd.game"))
    assert loud.stdout == quiet.stdout
    assert "DEBUG" in loud.stderr
    assert "INFO gameforge.games.symmetry" in loud.stderr


def test_cli_dispatch_returns_exit_codes(run):
    assert cli_dispatch(["pure-nash", fx("pd.game")]) == EXIT_OK
    assert cli_dispatch(["iso", fx("pd.game"), fx("mp.game")]) == EXIT_FALSE
    assert cli_dispatch(["iso"]) == EXIT_USAGE
    assert cli_dispatch(["payoff", fx("pd.game"), "--profile", "x,y"]) == EXIT_INPUT


def test_missing_file_is_an_input_error(run):
    result = run("classify", fx("missing.game"))
    assert result.exit_code == EXIT_INPUT
    assert "missing.game" in result.stderr
