import json

import pytest

from reduction_games.composite import CompositeStrategy, z_schedule
from reduction_games.errors import InvalidParameter
from reduction_games.games import make_base_game
from reduction_games.generators import random_ups
from reduction_games.machines import MealyStrategy
from reduction_games.omega import cylinder
from reduction_games.serialization import (
    automaton_from_json,
    dumps,
    game_from_json,
    load,
    schedule_from_json,
    strategy_from_json,
    strategy_to_json,
    successor_from_json,
    upstream_from_json,
)
from reduction_games.streams import UPStream, zeros


def test_load_forms(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"kind": "W"}')
    assert load(str(p)) == {"kind": "W"}
    assert load("@" + str(p)) == {"kind": "W"}
    assert load('{"a": 1}') == {"a": 1}
    assert load("Z") == "Z"
    with pytest.raises(InvalidParameter):
        load("no/such/file.json")


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_upstream_shorthand():
    assert upstream_from_json("0,1;2") == UPStream((0, 1), (2,))
    assert upstream_from_json(";1,2") == UPStream((), (1, 2))
    assert upstream_from_json('{"prefix":[3],"period":[0]}') == UPStream((3,), (0,))


def test_set_expressions(rng):
    A = automaton_from_json({"complement": {"cylinder": [1]}})
    D = automaton_from_json({"digit_equals": [1, 2]})
    for x in random_ups(rng, 30):
        assert A.accepts(x) == (x.at(0) != 1)
        assert D.accepts(x) == (x.at(1) == 2)
    with pytest.raises(InvalidParameter):
        automaton_from_json("nope")


def test_games():
    assert game_from_json("W").kind == "W"
    assert game_from_json({"kind": "kLip", "k": 2}).params["k"] == 2
    assert game_from_json({"kind": "delay", "base": "L", "n": 1}).kind == "delay"
    assert game_from_json({"kind": "gfxi", "inner": "W", "controls": "Z"}).kind == "gfxi"
    assert game_from_json({"kind": "glipxi", "controls": "Z"}).kind == "glipxi"
    with pytest.raises(InvalidParameter):
        game_from_json({"kind": "nope"})


def test_strategy_round_trip(rng):
    tau = CompositeStrategy({0: strategy_from_json("id"), 1: strategy_from_json({"const": {"period": [1]}})},
                            z_schedule())
    data = json.loads(json.dumps(strategy_to_json(tau)))
    back = strategy_from_json(data)
    G = game_from_json({"kind": "gfxi", "inner": "W", "controls": "Z"})
    for x in random_ups(rng, 20):
        try:
            want = G.evaluate(tau, x, 8)
        except Exception as exc:
            with pytest.raises(type(exc)):
                G.evaluate(back, x, 8)
        else:
            assert G.evaluate(back, x, 8) == want


def test_mealy_json():
    tau = strategy_from_json({"delay": 1, "of": "id"})
    assert make_base_game("kLip", k=1).evaluate(tau, UPStream((4,), (2,))) == UPStream((4,), (2,))
    m = strategy_from_json({"const": {"prefix": [2], "period": [0]}})
    assert MealyStrategy.from_json(m.to_json()).transition(0, 5)[1].value == 2


def test_unknown_strategy():
    with pytest.raises(InvalidParameter):
        strategy_from_json("nope")
    with pytest.raises(InvalidParameter):
        strategy_from_json({"what": 1})


def test_schedules_and_successors():
    s = schedule_from_json({"explicit": ["Z", "INF0"], "tail": "cycle"})
    assert s[3].name == "INF0"
    S = successor_from_json({"base": {"cylinder": [0]}, "controls": "Z"})
    assert S.accepts(zeros())
