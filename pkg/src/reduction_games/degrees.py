"""Successor operators on sets and the strategy merge for successors."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil, lcm
from typing import Sequence

from .composite import CompositeGame, CompositeStrategy, ControlSchedule, make_gfxi
from .errors import InvalidParameter, WitnessFailure
from .games import GameSpec, make_base_game
from .machines import Runner, Strategy
from .moves import PASS, Nat
from .omega import ParityAutomaton
from .streams import UPStream, pair, project, projection_spectrum

KINDS = ("sigma", "pi", "R")


@dataclass(frozen=True)
class SuccessorSet:
    """``sigma``: the least activated even row's odd neighbour lies in ``base``;
    ``R``: no even row activates; ``pi``: either."""

    base: ParityAutomaton
    controls: ControlSchedule
    kind: str = "sigma"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"kind must be one of {KINDS}")

    def accepts(self, x: UPStream) -> bool:
        return successor_member(self, x)

    __contains__ = accepts

    def with_kind(self, kind: str) -> "SuccessorSet":
        return SuccessorSet(self.base, self.controls, kind)

    def to_json(self) -> dict:
        return {"kind": self.kind, "base": self.base.to_json(), "controls": self.controls.to_json()}

    @classmethod
    def from_json(cls, data) -> "SuccessorSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(ParityAutomaton.from_json(data["base"]), ControlSchedule.from_json(data["controls"]),
                   data.get("kind", "sigma"))


def least_activation(controls: ControlSchedule, x: UPStream) -> int | None:
    """Least ``n`` with ``project(x, 2n)`` in ``controls[n]``, decided exactly.

    Both the even projections and the schedule repeat from some index on,
    so one joint period past that index settles the quantifier.
    """
    spec = projection_spectrum(x)
    s0, sp = controls.recurrence()
    start = max(ceil(spec.start / 2), s0)
    for n in range(start + lcm(len(spec.cycle), sp)):
        if controls.control(n).automaton.accepts(spec.stream(2 * n)):
            return n
    return None


def successor_member(S: SuccessorSet, x: UPStream) -> bool:
    n = least_activation(S.controls, x)
    if S.kind == "R":
        return n is None
    hit = n is not None and S.base.accepts(project(x, 2 * n + 1))
    return hit if S.kind == "sigma" else hit or n is None


# ---------------------------------------------------------------- merge


class OutputRow(Strategy):
    """Wadge strategy for ``project(f_sigma(x), n)``: run ``sigma`` and hand
    on the digits of its row ``n`` as they appear."""

    def __init__(self, sigma: Strategy, n: int, game: GameSpec | None = None):
        self.sigma = sigma
        self.n = n
        self.game = game or make_base_game("W")
        self.name = f"row{n}({getattr(sigma, 'name', 'sigma')})"

    def runner(self) -> Runner:
        return _OutputRowRunner(self)

    def exact_output(self, game: GameSpec, x: UPStream) -> UPStream:
        return project(self.game.evaluate(self.sigma, x), self.n)


class _OutputRowRunner(Runner):
    def __init__(self, s: OutputRow):
        self.n = s.n
        self.inner = s.sigma.runner()
        self.out: list[int] = []
        self.j = 0

    def feed(self, digit):
        mv = self.inner.feed(digit)
        if isinstance(mv, Nat):
            self.out.append(mv.value)
        k = pair(self.n, self.j)
        if k < len(self.out):
            self.j += 1
            return Nat(self.out[k])
        return PASS


def _check_merge(sigma0, sigma1, A, B: SuccessorSet, samples, W):
    sigma_B, pi_B, R = B.with_kind("sigma"), B.with_kind("pi"), B.with_kind("R")
    for x in samples:
        in_a = A.accepts(x)
        y0, y1 = W.evaluate(sigma0, x), W.evaluate(sigma1, x)
        if successor_member(R, y0) and in_a:
            raise WitnessFailure("first strategy lands in R on a point of A", x)
        if not in_a and successor_member(R, y1):
            raise WitnessFailure("second strategy lands in R outside A", x)
        if in_a != successor_member(sigma_B, y0):
            raise WitnessFailure("first strategy loses its game", x)
        if in_a != successor_member(pi_B, y1):
            raise WitnessFailure("second strategy loses its game", x)


def successor_merge(sigma0: Strategy, sigma1: Strategy, A: ParityAutomaton, B: SuccessorSet,
                    samples: Sequence[UPStream] = ()) -> CompositeStrategy:
    """Interleave the rows of ``f_sigma0`` and ``f_sigma1`` for the hatted
    composite game: rows ``4k, 4k+1`` from the first, ``4k+2, 4k+3`` from
    the second."""
    W = make_base_game("W")
    _check_merge(sigma0, sigma1, A, B, samples, W)
    cache: dict[int, Strategy] = {}

    def row_fn(r: int) -> Strategy:
        if r not in cache:
            k, rem = divmod(r, 4)
            src = sigma0 if rem < 2 else sigma1
            cache[r] = OutputRow(src, 2 * k + rem % 2, W)
        return cache[r]

    return CompositeStrategy({}, B.controls.hatted(), row_fn=row_fn, name="merged")


def hatted_game(inner: GameSpec, controls: ControlSchedule) -> CompositeGame:
    return make_gfxi(inner, controls.hatted())


__all__ = [
    "SuccessorSet",
    "OutputRow",
    "least_activation",
    "successor_member",
    "successor_merge",
    "hatted_game",
]
