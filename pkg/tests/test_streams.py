import itertools

import pytest

from reduction_games.streams import (
    UPStream,
    constant,
    distance,
    lcp,
    pair,
    project,
    projection_spectrum,
    tensor_view,
    unpair,
    zeros,
)
from reduction_games.generators import random_up


@pytest.mark.parametrize("n,m,k", [(0, 0, 0), (1, 0, 1), (0, 1, 2)])
def test_pair_values(n, m, k):
    assert pair(n, m) == k


@pytest.mark.parametrize("k,nm", [(0, (0, 0)), (5, (1, 1)), (7, (3, 0))])
def test_unpair_values(k, nm):
    assert unpair(k) == nm


def test_unpair_matches_brute_force_search():
    table = {2**n * (2 * m + 1) - 1: (n, m) for n in range(9) for m in range(9)}
    for k, nm in table.items():
        assert unpair(k) == nm


def test_pairing_is_a_bijection_on_an_initial_segment():
    seen = {pair(n, m) for n in range(13) for m in range(2048) if pair(n, m) < 4096}
    assert seen == set(range(4096))


def test_unpair_rejects_negative():
    with pytest.raises(ValueError):
        unpair(-1)


def test_digit_access():
    assert UPStream((), (0,)).at(7) == 0
    x = UPStream((3,), (1, 2))
    assert x.at(0) == 3
    assert x.at(4) == 2
    assert x.take(8) == [3, 1, 2, 1, 2, 1, 2, 1]


def test_canonical_form_decides_equality():
    assert UPStream((), (0, 1)) == UPStream((0, 1), (0, 1))
    assert UPStream((0, 1, 0, 1), (0, 1, 0, 1)) == UPStream((), (0, 1))
    assert UPStream((1, 0), (0,)) != UPStream((1,), (0,)).prepend([0])
    assert hash(UPStream((2,), (2,))) == hash(constant(2))


def test_shift_and_prepend():
    x = UPStream((5, 6), (1, 2, 3))
    assert x.shift(3).take(6) == x.take(9)[3:]
    assert x.prepend([9]).take(5) == [9] + x.take(4)


def test_empty_period_rejected():
    with pytest.raises(ValueError):
        UPStream((1,), ())


def test_json_round_trip():
    x = UPStream((4,), (0, 2))
    assert UPStream.from_json(x.to_json()) == x
    assert x.to_json() == {"prefix": [4], "period": [0, 2]}


def test_distance():
    x = UPStream((), (0, 1))
    assert distance(x, x).is_zero
    assert distance(UPStream((1,), (0,)), UPStream((2,), (0,))).exponent == 0
    assert distance(x, UPStream((0, 1), (0, 1))).is_zero
    assert lcp(UPStream((0, 0, 1), (0,)), zeros()) == 2
    assert distance(x, UPStream((0, 1, 1), (0,))) < distance(x, UPStream((1,), (0,)))


def test_distance_scaling():
    d = distance(UPStream((0, 0, 1), (0,)), zeros())
    assert d.scaled(1).exponent == 1
    assert d <= d.scaled(1)


def test_project_constant_zero():
    for n in range(8):
        assert project(zeros(), n) == zeros()


def test_project_alternating_row_one():
    # positions 1, 5, 9, ... of 0101... are all 1
    assert project(UPStream((), (0, 1)), 1) == constant(1)
    assert [UPStream((), (0, 1)).at(pair(1, m)) for m in range(4)] == [1, 1, 1, 1]


def test_project_of_tensor_recovers_rows():
    a, b = UPStream((1,), (2, 3)), UPStream((), (4, 0, 0))
    coded = tensor_view(lambda n: a if n == 0 else b if n == 1 else zeros())
    assert [coded[pair(0, m)] for m in range(20)] == a.take(20)
    assert [coded[pair(1, m)] for m in range(20)] == b.take(20)


def test_tensor_row_zero_lands_on_even_positions():
    coded = tensor_view(lambda n: constant(1) if n == 0 else zeros())
    assert [i for i in range(16) if coded[i] == 1] == [0, 2, 4, 6, 8, 10, 12, 14]


def test_tensor_of_zero_rows_is_zero():
    assert tensor_view(lambda n: zeros()).take(50) == [0] * 50


def test_spectrum_constant_zero():
    spec = projection_spectrum(zeros())
    assert spec.distinct == [zeros()]


def test_spectrum_matches_direct_projection():
    for x in [UPStream((), (0, 1)), UPStream((9,), (0,)), UPStream((1, 2, 3), (4, 5, 6, 7, 8))]:
        spec = projection_spectrum(x)
        for n in range(13):
            assert spec.stream(n) == project(x, n)


def test_spectrum_prefix_then_zero():
    spec = projection_spectrum(UPStream((9,), (0,)))
    assert spec.stream(0) == UPStream((9,), (0,))
    for n in range(1, 13):
        assert spec.stream(n) == zeros()


def test_random_projection_digits(rng):
    for _ in range(30):
        x = random_up(rng, digits=5, max_prefix=20, max_period=9)
        for n, m in itertools.product(range(6), range(40)):
            assert project(x, n).at(m) == x.at(pair(n, m))
