"""Golden CLI cases shared by the tests and the regeneration script."""

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def cfg(name: str) -> str:
    return str(CONFIGS / name)


# (name, argv, stdin, expected exit code)
CASES = [
    ("eval_identity", ["eval", "L", "id", '{"prefix":[],"period":[1,2]}'], None, 0),
    ("eval_depth", ["eval", "L", "id", ";1,2", "--depth", "5"], None, 0),
    ("eval_xi2", ["eval", cfg("gfxi_z.json"), cfg("xi2.json"), "0,1;2"], None, 0),
    ("eval_xi3", ["eval", cfg("gfxi_inf0.json"), cfg("xi3.json"), "1;0,1"], None, 0),
    ("legal_xi2", ["legal", cfg("gfxi_z.json"), cfg("xi2.json"), "--json"], None, 0),
    ("legal_klip_copy", ["legal", '{"kind":"kLip","k":1}', "id", "--json"], None, 1),
    ("compile_xi2", ["compile", cfg("xi2.json"), "--game", cfg("gfxi_z.json")], None, 0),
    ("decompile_xi2", ["decompile", cfg("gfxi_z.json"), cfg("xi2.json"), "0,1;2", "1;2", ";0"], None, 0),
    ("swap_forward", ["swap", cfg("gfxi_z.json"), cfg("xi2.json"), "--to", "INF0", "--reduction", "z-into-inf0",
                      "--input", "0;1", "--input", "2;1", "--seed", "3"], None, 0),
    ("swap_refused", ["swap", cfg("gfxi_inf0.json"), cfg("xi3.json"), "--to", "Z", "--samples", "20"], None, 1),
    ("adjudicate_copy", ["adjudicate", "W", "id", '{"cylinder":[0]}', '{"cylinder":[0]}', "0;1", "--json"], None, 0),
    ("transfer_klip", ["transfer", '{"kind":"kLip","k":2}', '{"const":{"prefix":[1],"period":[0]}}',
                       "--against", '{"delay":2,"of":"id"}'], None, 0),
    ("member_sigma", ["member", cfg("sigma2.json"), ";0"], None, 0),
    ("member_inf0", ["member", "INF0", "0;1"], None, 1),
    ("suite_all_seed0", ["suite", "all", "--seed", "0", "--samples", "20"], None, 0),
    ("suite_all_seed7_json", ["suite", "all", "--seed", "7", "--samples", "10", "--json"], None, 0),
    ("suite_corrupt", ["suite", "thm43-roundtrip", "--corrupt", "--samples", "20"], None, 1),
    ("play_copy", ["play", "W", "id", "--depth", "3"], "0\n0\n0\n", 0),
    ("play_reprompt", ["play", "W", "id", "--depth", "3"], "0\nx\n\n1\n2\n", 0),
    ("play_violation", ["play", '{"kind":"kLip","k":1}', "id", "--depth", "4"], "0\n1\n", 1),
    ("play_composite_json", ["play", cfg("gfxi_z.json"), cfg("xi2.json"), "--depth", "6", "--json"],
     "1\n0\n2\n0\n0\n1\n", 0),
    ("play_short_input", ["play", "W", "id", "--depth", "5"], "4\n", 0),
]
