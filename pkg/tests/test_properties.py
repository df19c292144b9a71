from hypothesis import given, settings
from hypothesis import strategies as st

from reduction_games.games import erase_eval
from reduction_games.moves import ERASE, PASS, Nat
from reduction_games.streams import UPStream, pair, project, unpair

digit_lists = st.lists(st.integers(0, 3), max_size=12)
periods = st.lists(st.integers(0, 3), min_size=1, max_size=6)


def naive(moves):
    out = []
    for mv in moves:
        if mv is ERASE:
            out = out[:-1]
        elif mv is not PASS:
            out.append(mv.value)
    return out


@given(st.integers(0, 40), st.integers(0, 10**6))
def test_pair_unpair(n, m):
    assert unpair(pair(n, m)) == (n, m)
    assert pair(n, m) == 2**n * (2 * m + 1) - 1


@given(digit_lists, periods, st.integers(1, 4))
def test_canonical_equality(pre, per, reps):
    a = UPStream(pre, per)
    b = UPStream(pre + per, per * reps)
    assert a == b and hash(a) == hash(b)
    assert a.take(40) == b.take(40)


@given(digit_lists, periods, st.integers(0, 6))
@settings(max_examples=60)
def test_projection_is_indexing(pre, per, n):
    x = UPStream(pre, per)
    assert project(x, n).take(30) == [x.at(pair(n, m)) for m in range(30)]


@given(st.lists(st.sampled_from([ERASE, PASS, Nat(0), Nat(1), Nat(2)]), max_size=50))
def test_stack_semantics(moves):
    assert erase_eval(moves) == naive(moves)
