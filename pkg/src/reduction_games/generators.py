"""Seeded random fixtures: UP streams, legal Mealy strategies, transducers."""

from __future__ import annotations

import random

from .machines import ECHO, DelayTransducer, MealyStrategy
from .moves import PASS, Nat
from .streams import UPStream


def random_up(rng: random.Random, digits: int = 3, max_prefix: int = 6, max_period: int = 4) -> UPStream:
    pre = [rng.randrange(digits) for _ in range(rng.randrange(max_prefix + 1))]
    per = [rng.randrange(digits) for _ in range(rng.randint(1, max_period))]
    return UPStream(pre, per)


def random_ups(rng: random.Random, n: int, **kw) -> list[UPStream]:
    return [random_up(rng, **kw) for _ in range(n)]


def random_nonzero_up(rng: random.Random, **kw) -> UPStream:
    while True:
        x = random_up(rng, **kw)
        if x != UPStream((), (0,)):
            return x


def _out(rng: random.Random, digits: int):
    return ECHO if rng.random() < 0.4 else Nat(rng.randrange(digits))


def random_lipschitz_mealy(rng: random.Random, states: int = 3, digits: int = 3) -> MealyStrategy:
    """Letter-to-letter strategy: legal in G_L."""
    table = {}
    for s in range(states):
        for d in range(digits):
            if rng.random() < 0.7:
                table[(s, d)] = (rng.randrange(states), _out(rng, digits))
    default = {s: (rng.randrange(states), _out(rng, digits)) for s in range(states)}
    return MealyStrategy(states, 0, table, default, name="random-L")


def random_klip_mealy(rng: random.Random, k: int, states: int = 3, digits: int = 3) -> MealyStrategy:
    """``k`` opening passes, then a random letter-to-letter core."""
    core = random_lipschitz_mealy(rng, states, digits)
    table = {(s + k, d): (t + k, o) for (s, d), (t, o) in core.table.items()}
    default = {s: (s + 1, PASS) for s in range(k)}
    default.update({s + k: (t + k, o) for s, (t, o) in core.default.items()})
    return MealyStrategy(states + k, 0, table, default, name=f"random-{k}-Lip")


def random_wadge_mealy(rng: random.Random, states: int = 3, digits: int = 3) -> MealyStrategy:
    """Passes allowed, but every state reaches a digit on every input: state
    ``s`` may only pass into a larger state, and the last state never passes."""
    table, default = {}, {}
    for s in range(states):
        def edge():
            if s < states - 1 and rng.random() < 0.3:
                return (rng.randrange(s + 1, states), PASS)
            return (rng.randrange(states), _out(rng, digits))
        for d in range(digits):
            if rng.random() < 0.6:
                table[(s, d)] = edge()
        default[s] = edge()
    return MealyStrategy(states, 0, table, default, name="random-W")


def random_transducer(rng: random.Random, budget: int, states: int = 2, digits: int = 3) -> DelayTransducer:
    """States are (core state, lag); lag stays within ``[0, budget]``."""
    index = {(q, lag): q * (budget + 1) + lag for q in range(states) for lag in range(budget + 1)}

    def edge(q, lag):
        lo, hi = max(0, lag + 1 - budget), min(2, lag + 1)
        o = rng.randint(lo, hi)
        outs = tuple(ECHO if rng.random() < 0.5 else rng.randrange(digits) for _ in range(o))
        return index[(rng.randrange(states), lag + 1 - o)], outs

    table, default = {}, {}
    for (q, lag), s in index.items():
        for d in range(digits):
            if rng.random() < 0.5:
                table[(s, d)] = edge(q, lag)
        default[s] = edge(q, lag)
    return DelayTransducer(len(index), 0, table, default, budget=budget, name=f"random-b{budget}")


__all__ = [
    "random_up",
    "random_ups",
    "random_nonzero_up",
    "random_lipschitz_mealy",
    "random_klip_mealy",
    "random_wadge_mealy",
    "random_transducer",
]
