import pytest

from reduction_games.errors import InvalidParameter, RuleViolation
from reduction_games.games import (
    GameSpec,
    Interpreter,
    LassoRun,
    Winner,
    adjudicate_up,
    delay,
    erase_eval,
    make_base_game,
    p_close,
    run_to_depth,
)
from reduction_games.generators import random_klip_mealy, random_up, random_wadge_mealy
from reduction_games.moves import BT, ERASE, PASS, Nat
from reduction_games.omega import cylinder, empty_set, full_space
from reduction_games.strategies import const_strategy, delayed_copy, id_strategy, pass_strategy
from reduction_games.streams import UPStream, constant, zeros


def interpret(G: GameSpec, moves):
    it = Interpreter(G.interp)
    for m in moves:
        it.step(0, m)
    return it


def test_wadge_interpreter_drops_passes():
    it = interpret(make_base_game("W"), [PASS, Nat(5), PASS, Nat(7)])
    assert it.tentative() == [5, 7]
    assert it.committed_len() == 2


def test_eraser_interpreter():
    assert interpret(make_base_game("E"), [Nat(1), Nat(2), ERASE, Nat(3)]).tentative() == [1, 3]
    assert erase_eval([Nat(1), Nat(2), ERASE, Nat(3)]) == [1, 3]
    assert erase_eval([ERASE, ERASE, Nat(4)]) == [4]


def test_backtrack_interpreter():
    assert interpret(make_base_game("BT"), [Nat(1), Nat(2), BT, Nat(4)]).tentative() == [4]


def test_unknown_kind():
    with pytest.raises(InvalidParameter):
        make_base_game("Q")
    with pytest.raises(InvalidParameter):
        make_base_game("kLip")


def test_p_close_all_pass_is_illegal():
    G = p_close(make_base_game("L"))
    run = LassoRun(((0, PASS),), ((0, PASS),))
    ok, _ = G.up_verdict(run)
    assert not ok


def test_p_close_pass_free_play_unchanged():
    L, PL = make_base_game("L"), p_close(make_base_game("L"))
    run = LassoRun(((1, Nat(3)),), ((0, Nat(4)), (2, Nat(5))))
    assert PL.up_output(run) == L.up_output(run)


def test_p_close_matches_wadge(rng):
    PL, W = p_close(make_base_game("L")), make_base_game("W")
    for _ in range(50):
        tau, x = random_wadge_mealy(rng), random_up(rng)
        a, b = run_to_depth(PL, x, tau, 64), run_to_depth(W, x, tau, 64)
        assert (a.violated, a.tentative) == (b.violated, b.tentative)
        assert PL.evaluate(tau, x) == W.evaluate(tau, x)


def test_delay_zero_is_identity():
    G = make_base_game("W")
    assert delay(G, 0) is G


def test_delay_matches_klip(rng):
    L = make_base_game("L")
    for _ in range(50):
        k = rng.randrange(4)
        tau, x = random_klip_mealy(rng, k), random_up(rng)
        D, K = delay(L, k), make_base_game("kLip", k=k)
        a, b = run_to_depth(D, x, tau, 64), run_to_depth(K, x, tau, 64)
        assert (a.status == "ok", a.tentative) == (b.status == "ok", b.tentative)
        assert D.evaluate(tau, x) == K.evaluate(tau, x)


def test_delay_rejects_early_digit():
    res = run_to_depth(delay(make_base_game("W"), 2), zeros(), id_strategy(), 4)
    assert res.violated
    assert len(res.run) == 1


def test_run_to_depth_const():
    res = run_to_depth(make_base_game("W"), UPStream((3,), (1,)), const_strategy(zeros()), 8)
    assert res.tentative == [0] * 8
    assert res.status == "ok"


def test_run_to_depth_klip_copy():
    res = run_to_depth(make_base_game("kLip", k=2), UPStream((4, 7), (0,)), delayed_copy(2), 4)
    assert res.tentative == [4, 7]


def test_violation_is_absorbing():
    G = make_base_game("L")
    short = run_to_depth(G, zeros(), pass_strategy(), 1)
    for d in (1, 5, 20):
        res = run_to_depth(G, zeros(), pass_strategy(), d)
        assert (res.status, res.tentative, len(res.run)) == (short.status, short.tentative, len(short.run))


def test_depth_must_be_positive():
    with pytest.raises(InvalidParameter):
        run_to_depth(make_base_game("W"), zeros(), id_strategy(), 0)


def test_adjudication():
    W = make_base_game("W")
    x = UPStream((2,), (1,))
    assert adjudicate_up(W, x, id_strategy(), full_space(), full_space()).winner is Winner.II
    assert adjudicate_up(W, x, id_strategy(), full_space(), empty_set()).winner is Winner.I
    A = cylinder([0])
    for x in (zeros(), constant(1)):
        assert adjudicate_up(W, x, id_strategy(), A, A).winner is Winner.II


def test_adjudication_rule_violation_loses_for_ii():
    verdict = adjudicate_up(make_base_game("W"), zeros(), pass_strategy(), full_space(), full_space())
    assert verdict.winner is Winner.I
    assert verdict.reason.startswith("rule 2")


def test_adjudication_domain():
    W = make_base_game("W", domain=cylinder([0]))
    verdict = adjudicate_up(W, constant(1), pass_strategy(), full_space(), empty_set())
    assert verdict.winner is Winner.II


def test_eraser_lasso_output():
    E = make_base_game("E")
    run = LassoRun(((0, Nat(1)), (0, Nat(2))), ((0, Nat(3)), (0, ERASE), (0, Nat(4))))
    assert E.up_output(run) == UPStream((1, 2), (4,))
    with pytest.raises(RuleViolation):
        E.up_output(LassoRun((), ((0, Nat(1)), (0, ERASE))))


def test_multitape_needs_one_live_row():
    from reduction_games.moves import RowMove

    M = make_base_game("M")
    good = LassoRun(((0, RowMove(1, Nat(5))),), ((0, RowMove(0, Nat(2))),))
    assert M.up_output(good) == UPStream((), (2,))
    bad = LassoRun((), ((0, RowMove(0, Nat(2))), (0, RowMove(1, Nat(2)))))
    assert not M.up_verdict(bad)[0]
