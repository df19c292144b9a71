import io
import json
import subprocess
import sys

import pytest

from cli_cases import CASES, GOLDEN, cfg
from reduction_games.cli import main


def run(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, out=out, inp=io.StringIO(stdin))
    return code, out.getvalue()


@pytest.mark.parametrize("name,argv,stdin,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, stdin, code):
    got_code, got = run(argv, stdin or "")
    assert got_code == code
    assert f"exit {got_code}\n{got}" == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name,argv,stdin,code", [c for c in CASES if c[0].startswith(("suite", "play"))],
                         ids=[c[0] for c in CASES if c[0].startswith(("suite", "play"))])
def test_repeat_runs_are_identical(name, argv, stdin, code):
    assert run(argv, stdin or "") == run(argv, stdin or "")


def test_copy_board():
    code, out = run(["play", "W", "id", "--depth", "3", "--json"], "0\n0\n0\n")
    last = json.loads(out.strip().splitlines()[-1].split("> ", 1)[1])
    assert last["output"] == [0, 0, 0]
    assert code == 0


def test_violation_ends_session():
    code, out = run(["play", '{"kind":"kLip","k":2}', "id", "--depth", "10"], "0\n1\n2\n")
    assert code == 1
    assert out.rstrip().endswith("session over: violated: turn 0 must be a pass")
    assert "I[1]" not in out


def test_composite_demo_matches_pieces():
    from reduction_games import demos
    from reduction_games.games import make_base_game
    from reduction_games.streams import UPStream

    spec, W = demos.xi2_spec(), make_base_game("W")
    for text, x in [("0,1;2", UPStream((0, 1), (2,))), ("2;1,0", UPStream((2,), (1, 0)))]:
        code, out = run(["eval", cfg("gfxi_z.json"), cfg("xi2.json"), text])
        assert json.loads(out) == spec.evaluate(W, x).to_json()


def test_default_seed_is_printed():
    code, out = run(["suite", "glim"])
    assert out.splitlines()[0] == "seed: 0"
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["suite", "nope"],
    ["eval", "nosuchfile.json", "id", ";0"],
    ["eval", "L", "{bad json", ";0"],
    ["eval", '{"kind":"Q"}', "id", ";0"],
    ["swap", "W", "id", "--to", "Z"],
    ["frobnicate"],
])
def test_errors_exit_two(argv):
    assert run(argv)[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reduction_games.cli", "eval", "L", "id", ";1,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"prefix":[],"period":[1,2]}\n'
