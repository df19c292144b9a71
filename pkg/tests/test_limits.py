import pytest

from reduction_games.errors import LimitUndetermined, NotDelayable
from reduction_games.games import make_base_game, run_to_depth
from reduction_games.generators import random_nonzero_up
from reduction_games.limits import LimitStrategy, alternating_family, make_glim, zero_test_family
from reduction_games.strategies import const_strategy, id_strategy
from reduction_games.streams import UPStream, constant, zeros

W = make_base_game("W")


def test_constant_tail_rows():
    G = make_glim([W])
    tau = LimitStrategy([const_strategy(constant(1)), const_strategy(constant(2))], const_strategy(zeros()))
    assert G.evaluate(tau, UPStream((5,), (4,))) == zeros()


def test_identity_tail(rng):
    G = make_glim([W])
    tau = LimitStrategy([], id_strategy())
    for _ in range(10):
        x = random_nonzero_up(rng)
        assert G.evaluate(tau, x) == x


def test_zero_test(rng):
    G = make_glim([W])
    tau = zero_test_family()
    assert G.evaluate(tau, zeros()) == zeros()
    for _ in range(50):
        assert G.evaluate(tau, random_nonzero_up(rng)) == constant(1)


def test_alternating_rows_have_no_limit():
    with pytest.raises(LimitUndetermined):
        make_glim([W]).evaluate(alternating_family(), zeros())


def test_inner_games_must_be_pass_closed():
    with pytest.raises(Exception):
        make_glim([make_base_game("L")])


def test_depth_mode_agreeing_rows():
    res = run_to_depth(make_glim([W]), zeros(), zero_test_family(), 30)
    assert res.status == "ok"
    assert "agreeing_rows" in res.extra["rows"]
