import pytest

from reduction_games import demos
from reduction_games.composite import (
    CompositeStrategy,
    ControlSchedule,
    Piece,
    PiecewiseSpec,
    control_swap,
    inf0_schedule,
    make_gfxi,
    make_tilde,
    piecewise_compile,
    piecewise_decompile,
    playerI_transfer,
    recompile,
    z_schedule,
)
from reduction_games.errors import InvalidParameter, NoActivationWithinBound, NotDelayable, WitnessFailure
from reduction_games.games import make_base_game, run_to_depth
from reduction_games.generators import random_lipschitz_mealy, random_ups
from reduction_games.omega import canonical_pi1, canonical_pi2, cylinder, full_space, reduce_safety_to_Z
from reduction_games.strategies import const_strategy, id_strategy, legality_check_exact, play_lasso_I
from reduction_games.streams import UPStream, constant, zeros

W, L = make_base_game("W"), make_base_game("L")


@pytest.fixture
def xs(rng):
    return random_ups(rng, 100)


def test_schedule_shapes():
    s = ControlSchedule.cycle(canonical_pi1(), canonical_pi2())
    assert [s[n].name for n in range(4)] == ["Z", "INF0", "Z", "INF0"]
    r = ControlSchedule((canonical_pi2(),), "repeat")
    assert r[5].name == "INF0"
    h = s.hatted()
    assert [h[n].name for n in range(4)] == ["Z", "Z", "INF0", "INF0"]
    assert ControlSchedule.from_json(s.to_json())[3].name == "INF0"


def test_identity_rows(xs):
    tau = CompositeStrategy({0: reduce_safety_to_Z(full_space()), 1: id_strategy()}, z_schedule())
    G = make_gfxi(W, z_schedule())
    for x in xs[:50]:
        assert G.evaluate(tau, x) == x


def test_no_activation_is_an_error():
    G = make_gfxi(W, z_schedule())
    with pytest.raises(NoActivationWithinBound):
        G.evaluate(CompositeStrategy({}, z_schedule()), zeros(), 16)


def test_inner_must_be_delayable():
    with pytest.raises(NotDelayable):
        make_gfxi(L, z_schedule())


def test_tilde_ignores_inactive_rows():
    tau = demos.tilde_only_strategy()
    assert legality_check_exact(make_gfxi(W, z_schedule()), tau).illegal
    assert legality_check_exact(make_tilde(W, z_schedule()), tau).legal


def test_rule_abiding_strategy_same_in_both():
    tau = CompositeStrategy({0: reduce_safety_to_Z(full_space()), 1: id_strategy()}, z_schedule())
    assert legality_check_exact(make_gfxi(W, z_schedule()), tau).legal
    assert legality_check_exact(make_tilde(W, z_schedule()), tau).legal


def test_cover_condition(xs):
    tau = CompositeStrategy({0: reduce_safety_to_Z(cylinder([0])), 1: id_strategy()}, z_schedule())
    G = make_gfxi(W, z_schedule())
    rep = legality_check_exact(G, tau)
    assert rep.illegal
    uncovered = [x for x in xs if not cylinder([0]).accepts(x)]
    assert uncovered
    for x in uncovered[:5]:
        with pytest.raises(NoActivationWithinBound):
            G.evaluate(tau, x, 16)


def test_depth_mode_row_verdicts():
    tau = CompositeStrategy({0: reduce_safety_to_Z(full_space()), 1: id_strategy()}, z_schedule())
    res = run_to_depth(make_gfxi(W, z_schedule()), UPStream((), (0, 1)), tau, 20)
    assert res.status == "ok"
    assert res.extra["rows"]["0"] == "unknown"
    assert res.extra["rows"]["1"] == "rejected"
    assert res.tentative == [0, 1, 0, 1, 0]


def test_single_piece_is_identity(xs):
    spec = PiecewiseSpec([Piece(id_strategy(), full_space())], z_schedule())
    tau = piecewise_compile(spec, W)
    G = make_gfxi(W, z_schedule())
    dec = piecewise_decompile(tau, W, z_schedule())
    for x in xs:
        assert G.evaluate(tau, x) == x
        assert dec.region(x) == 0


@pytest.mark.parametrize("make_spec", [demos.xi2_spec, demos.xi3_spec])
def test_piecewise_matches_case_split(xs, make_spec):
    spec = make_spec()
    tau = piecewise_compile(spec, W)
    G = make_gfxi(W, spec.controls)
    for x in xs:
        k = [i for i, p in enumerate(spec.pieces) if p.region.accepts(x)]
        assert len(k) == 1
        assert G.evaluate(tau, x) == W.evaluate(spec.pieces[k[0]].strategy, x)


@pytest.mark.parametrize("make_spec", [demos.xi2_spec, demos.xi3_spec])
def test_decompile_recovers_regions(xs, make_spec):
    spec = make_spec()
    tau = piecewise_compile(spec, W)
    dec = piecewise_decompile(tau, W, spec.controls)
    again = recompile(dec, range(4))
    G = make_gfxi(W, spec.controls)
    for x in xs:
        n = dec.region(x)
        assert dec.piece(n) is spec.pieces[spec.region_index(x)].strategy
        assert [dec.in_region(m, x) for m in range(n + 3)].count(True) == 1
        assert G.evaluate(again, x) == G.evaluate(tau, x)


def test_partition_check():
    spec = PiecewiseSpec([Piece(id_strategy(), full_space()), Piece(id_strategy(), cylinder([0]))], z_schedule())
    with pytest.raises(Exception):
        spec.check_partition([zeros()])


def test_identity_swap(xs):
    spec = demos.xi2_spec()
    tau = piecewise_compile(spec, W)
    same = control_swap(tau, z_schedule(), z_schedule(), lambda k: k, lambda k: id_strategy(), samples=xs)
    G = make_gfxi(W, z_schedule())
    for x in xs:
        assert G.evaluate(same, x) == G.evaluate(tau, x)


def test_swap_z_into_inf0(xs):
    spec = demos.xi2_spec()
    tau = piecewise_compile(spec, W)
    red = demos.z_into_inf0()
    moved = control_swap(tau, z_schedule(), inf0_schedule(), lambda k: k, lambda k: red, samples=xs)
    G = make_gfxi(W, inf0_schedule())
    for x in xs:
        assert G.evaluate(moved, x) == spec.evaluate(W, x)


def test_swap_bad_witness(xs):
    tau = piecewise_compile(demos.xi2_spec(), W)
    with pytest.raises(WitnessFailure):
        control_swap(tau, z_schedule(), z_schedule(), lambda k: k, lambda k: const_strategy(constant(1)),
                     samples=xs)


def test_swap_index_map_must_increase(xs):
    tau = piecewise_compile(demos.xi2_spec(), W)
    with pytest.raises(InvalidParameter):
        control_swap(tau, z_schedule(), z_schedule(), lambda k: 0, lambda k: id_strategy(), samples=xs)


def test_swap_back_needs_alternating_schedule(xs):
    tau = piecewise_compile(demos.xi2_on_inf0_spec(), W)
    alt = demos.alternating_schedule()
    back = control_swap(tau, inf0_schedule(), alt, lambda k: 2 * k + 1, lambda k: id_strategy(), samples=xs)
    G = make_gfxi(W, alt)
    spec = demos.xi2_spec()
    for x in xs:
        assert G.evaluate(back, x) == spec.evaluate(W, x)
    with pytest.raises(WitnessFailure):
        control_swap(tau, inf0_schedule(), z_schedule(), lambda k: k, lambda k: id_strategy(),
                     samples=xs + [UPStream((), (0, 1))])


@pytest.mark.parametrize("variant", [make_gfxi, make_tilde])
def test_player_one_transfer(rng, variant):
    for label, A, B, rho in demos.transfer_pairs():
        sigma = playerI_transfer(rho, zeros(), variant(W, z_schedule()))
        for _ in range(20):
            tau = random_lipschitz_mealy(rng)
            x = play_lasso_I(sigma, tau)
            assert A.accepts(x) != B.accepts(L.evaluate(tau, x)), label
