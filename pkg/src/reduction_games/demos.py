"""Worked instances of the constructions, shared by the suites, the CLI and
the tests."""

from __future__ import annotations

from .composite import (
    CompositeStrategy,
    ControlSchedule,
    Piece,
    PiecewiseSpec,
    inf0_schedule,
    z_schedule,
)
from .degrees import SuccessorSet
from .games import make_base_game
from .machines import Machine, MachineI, shift_transducer
from .moves import Nat
from .omega import (
    as_buchi,
    canonical_pi1,
    canonical_pi2,
    complement,
    cylinder,
    digit_equals,
    empty_set,
    full_space,
    inf_zeros_set,
    prepend,
    reduce_buchi_to_INF0,
    reduce_safety_to_Z,
    zero_stream_set,
)
from .strategies import const_I, const_strategy, id_strategy, pass_strategy
from .streams import UPStream

ZERO = UPStream((), (0,))
ONE = UPStream((), (1,))


# ---------------------------------------------------------------- piecewise


def xi2_spec() -> PiecewiseSpec:
    """Constant 0 on N<0>, identity elsewhere; controls Z."""
    n0 = cylinder([0])
    return PiecewiseSpec([Piece(const_strategy(ZERO), n0, label="N<0>"),
                          Piece(id_strategy(), complement(n0), label="not N<0>")], z_schedule())


def xi3_spec() -> PiecewiseSpec:
    """Constant 0 on 'infinitely many zeros', constant 1 elsewhere; controls INF0."""
    inf0 = inf_zeros_set()
    return PiecewiseSpec([Piece(const_strategy(ZERO), inf0, label="INF0"),
                          Piece(const_strategy(ONE), complement(inf0), label="not INF0")], inf0_schedule())


def xi2_on_inf0_spec() -> PiecewiseSpec:
    spec = xi2_spec()
    return PiecewiseSpec(spec.pieces, inf0_schedule())


def z_into_inf0():
    return reduce_buchi_to_INF0(as_buchi(zero_stream_set()))


def alternating_schedule() -> ControlSchedule:
    return ControlSchedule.cycle(canonical_pi1(), canonical_pi2())


def tilde_only_strategy() -> CompositeStrategy:
    """Row 3 never passes a digit, but its control row never activates."""
    return CompositeStrategy({0: reduce_safety_to_Z(full_space()), 1: id_strategy(),
                              2: const_strategy(ONE), 3: pass_strategy()}, z_schedule(), name="tilde-only")


# ---------------------------------------------------------------- transfers


def transfer_pairs():
    """(label, A, B, rho): rho wins the composite game whatever II does."""
    return [
        ("empty-vs-full", empty_set(), full_space(), const_I(ZERO)),
        ("N<0>-vs-empty", cylinder([0]), empty_set(), const_I(ZERO)),
    ]


# ---------------------------------------------------------------- Lipschitz composite


def glip_pieces():
    n0 = cylinder([0])
    return [(n0, shift_transducer(1)), (complement(n0), shift_transducer(2))]


def glip_oracle(x: UPStream) -> UPStream:
    return x.shift(1) if x.at(0) == 0 else x.shift(2)


# ---------------------------------------------------------------- successors


def _switch(on_zero: UPStream, otherwise: UPStream) -> Machine:
    """Enumerate one of two streams, chosen by I's first digit."""
    streams = (on_zero, otherwise)

    def step(state, digit):
        which, i = state
        if which is None:
            which = 0 if digit == 0 else 1
        y = streams[which]
        nxt = i + 1 if i + 1 < len(y.prefix) + len(y.period) else len(y.prefix)
        return (which, nxt), Nat(y.at(i))

    return Machine((None, 0), step, [0], name="switch")


ROW0_ZERO_ROW1_ONE = UPStream((), (0, 1, 0, 0))  # row 0 is 0^w, row 1 is 1^w, rows >= 2 are 0^w


def successor_demo():
    """A = B = N<0>, controls Z: II strategies for Sigma(B) and Pi(B)."""
    n0 = cylinder([0])
    S = SuccessorSet(n0, z_schedule(), "sigma")
    return n0, S, _switch(ZERO, ONE), _switch(ZERO, ROW0_ZERO_ROW1_ONE)


def successor_empty_demo():
    n0 = cylinder([0])
    S = SuccessorSet(n0, z_schedule(), "sigma")
    return empty_set(), S, const_strategy(ONE), const_strategy(ROW0_ZERO_ROW1_ONE)


# ---------------------------------------------------------------- k-Lipschitz transfers


def klip_B():
    return cylinder([1])


def klip_A(k: int):
    """{x : x(k + 1) = 1}: II must commit before seeing the decisive digit."""
    return digit_equals(k + 1, 1)


def klip_sigma_I(k: int) -> MachineI:
    """I's winning strategy in G_L(A_k, 0^k B): zeros, then at turn ``k + 1``
    the digit that makes x in A_k iff II's output is not in 0^k B."""

    def output(state):
        t, ok, y_k = state
        if t == k + 1:
            return 0 if ok and y_k == 1 else 1
        return 0

    def transition(state, move):
        t, ok, y_k = state
        if t > k:
            return (k + 2, ok, y_k)
        v = move.value if isinstance(move, Nat) else None
        if t < k:
            ok = ok and v == 0
        else:
            y_k = v
        return (t + 1, ok, y_k)

    return MachineI((0, True, None), output, transition, reacts=lambda s: s[0] <= k, name=f"klip-I[{k}]")


def klip_tau_II(k: int) -> Machine:
    """II's winning strategy in G_L(N<1>, 0^k N<1>): k zeros, then copy x late."""

    def step(state, digit):
        t, buf = state
        buf = buf + (digit,)
        if t < k:
            return (t + 1, buf), Nat(0)
        return (t, buf[1:]), Nat(buf[0])

    return Machine((0, ()), step, [], name=f"klip-II[{k}]")


def klip_games(k: int):
    return make_base_game("L"), make_base_game("kLip", k=k)


def padded(B, k: int):
    return prepend([0] * k, B)


__all__ = [
    "ZERO",
    "ONE",
    "xi2_spec",
    "xi3_spec",
    "xi2_on_inf0_spec",
    "z_into_inf0",
    "alternating_schedule",
    "tilde_only_strategy",
    "transfer_pairs",
    "glip_pieces",
    "glip_oracle",
    "successor_demo",
    "successor_empty_demo",
    "klip_A",
    "klip_B",
    "klip_sigma_I",
    "klip_tau_II",
    "klip_games",
    "padded",
]
