import pytest

from reduction_games import demos
from reduction_games.errors import IncoherentSpec
from reduction_games.games import run_to_depth
from reduction_games.gamma import (
    C_BAIRE,
    C_EMPTY,
    DECODER,
    UniformFamily,
    constant_family,
    gamma_compile,
    gamma_decompile,
    identity_family,
    make_ggamma,
    playerI_transfer_gamma,
)
from reduction_games.games import make_base_game
from reduction_games.generators import random_lipschitz_mealy, random_ups
from reduction_games.omega import cylinder, full_space
from reduction_games.strategies import const_strategy, play_lasso_I
from reduction_games.streams import UPStream, zeros


def test_codes_round_trip(rng):
    for A in [cylinder([1]), full_space(), cylinder([0, 2])]:
        B = DECODER.decode(DECODER.encode(A))
        for x in random_ups(rng, 30):
            assert A.accepts(x) == B.accepts(x)


def test_fixed_codes(rng):
    baire, empty = DECODER.decode(C_BAIRE), DECODER.decode(C_EMPTY)
    for x in random_ups(rng, 20):
        assert baire.accepts(x)
        assert not empty.accepts(x)


def test_malformed_code_is_empty(rng):
    for bad in [UPStream((3, 9, 9, 9), (0,)), UPStream((), (7,)), UPStream((0,), (0,))]:
        A = DECODER.decode(bad)
        assert not any(A.accepts(x) for x in random_ups(rng, 10))


def test_incomplete_prefix():
    code = DECODER.encode(full_space())
    length = code.at(0) + 1
    assert DECODER.decode_prefix(code.take(length - 1)) is None
    assert DECODER.decode_prefix(code.take(length)) is not None


def test_full_space_rows_give_zero():
    tau = gamma_compile(constant_family(zeros()))
    G = make_ggamma()
    for x in [zeros(), UPStream((3,), (1, 2))]:
        assert G.evaluate(tau, x) == zeros()


def test_constant_function(rng):
    c = UPStream((2,), (0, 1))
    tau = gamma_compile(constant_family(c))
    G = make_ggamma()
    for x in random_ups(rng, 20):
        assert G.evaluate(tau, x) == c


def test_identity_via_cylinder_codes(rng):
    xs = random_ups(rng, 50, digits=4)
    tau = gamma_compile(identity_family(), xs)
    G = make_ggamma()
    for x in xs:
        assert G.evaluate(tau, x) == x


def test_decompile_membership(rng):
    xs = random_ups(rng, 20)
    dec = gamma_decompile(gamma_compile(identity_family(), xs))
    for x in xs:
        for n in range(5):
            for m in range(3):
                assert dec.member(n, m, x) == (x.at(n) == m)


def test_compile_rejects_incoherent_family(rng):
    overlapping = UniformFamily(lambda phase, m: full_space())
    with pytest.raises(IncoherentSpec):
        gamma_compile(overlapping, random_ups(rng, 3), rows=2, max_m=3)


def test_depth_mode_runs():
    tau = gamma_compile(constant_family(zeros()))
    res = run_to_depth(make_ggamma(), UPStream((1,), (2,)), tau, 40)
    assert res.status == "ok"


def test_transfer(rng):
    L = make_base_game("L")
    for label, A, B, rho in demos.transfer_pairs():
        sigma = playerI_transfer_gamma(rho)
        for _ in range(20):
            tau = random_lipschitz_mealy(rng)
            x = play_lasso_I(sigma, tau)
            assert A.accepts(x) != B.accepts(L.evaluate(tau, x)), label
        for y in random_ups(rng, 50):
            x = play_lasso_I(sigma, const_strategy(y))
            assert A.accepts(x) != B.accepts(y), label
