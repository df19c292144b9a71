import pytest

from reduction_games import demos
from reduction_games.composite import z_schedule
from reduction_games.games import run_to_depth
from reduction_games.generators import random_ups
from reduction_games.lipschitz import enum_index, enum_seq, glip_compile, glip_project, m_schedule, make_glipxi
from reduction_games.machines import identity_transducer
from reduction_games.omega import full_space
from reduction_games.streams import UPStream, unpair


def test_enum_examples():
    assert enum_seq(1, 7) == [7]
    assert enum_seq(2, 5) == [1, 1]
    assert unpair(5) == (1, 1)


def test_enum_round_trip():
    for k in range(1, 5):
        for m in range(1000):
            assert enum_index(enum_seq(k, m)) == m


def test_single_identity_piece(rng):
    tau = glip_compile([(full_space(), identity_transducer())], z_schedule())
    G = make_glipxi(z_schedule())
    for x in random_ups(rng, 30):
        assert G.evaluate(tau, x) == x


def test_two_shift_pieces(rng):
    tau = glip_compile(demos.glip_pieces(), z_schedule())
    G = make_glipxi(z_schedule())
    assert tau.schedule == [1, 2]
    for x in random_ups(rng, 100):
        assert G.evaluate(tau, x) == demos.glip_oracle(x)


def test_moves_re_encode(rng):
    tau = glip_compile(demos.glip_pieces(), z_schedule())
    x = random_ups(rng, 1)[0]
    for n, mv in enumerate(tau.play(x.take(33))):
        assert enum_index(enum_seq(2 * n + 2, mv.value)) == mv.value


def test_projection_round_trip():
    tau = glip_compile(demos.glip_pieces(), z_schedule())
    x = UPStream((1,), (0, 2))
    for j in range(4):
        assert glip_project(tau, j).play(x.take(12)) == tau.row(j).play(x.take(12))


def test_m_schedule_increases(rng):
    for _ in range(20):
        size = rng.randint(1, 6)
        ns = sorted(rng.sample(range(12), size))
        ms = m_schedule(ns, [rng.randrange(6) for _ in range(size)])
        assert all(a < b for a, b in zip(ms, ms[1:]))


def test_depth_run_is_legal():
    tau = glip_compile(demos.glip_pieces(), z_schedule())
    res = run_to_depth(make_glipxi(z_schedule()), UPStream((1,), (0, 2)), tau, 64)
    assert res.status == "ok"
