"""G^Lip_xi: II fills finitely many new cells of its table per turn.

Her digit ``y(n)`` indexes a tuple of length ``2n + 2`` via ``enum_seq``;
entry ``j`` is the next digit of row ``j``.  Row ``j`` starts at turn
``j // 2``, so it is a play of the ``(j // 2)``-Lipschitz game.
"""

from __future__ import annotations

from typing import Sequence

from .composite import CompositeGame, CompositeStrategy, ControlSchedule, _auto_witness, _fits
from .errors import InvalidParameter, RuleViolation, UnsupportedRegionShape
from .games import GameSpec, make_base_game
from .machines import DelayTransducer, HistoryStrategy, Runner, Strategy
from .moves import PASS, Move, Nat
from .omega import ParityAutomaton
from .strategies import const_strategy, delay_strategy, lipschitz_compile
from .streams import pair, unpair


def enum_seq(k: int, m: int) -> list[int]:
    """The ``m``-th sequence of length ``k``."""
    if k < 1:
        raise InvalidParameter("sequence length must be >= 1")
    out = []
    for _ in range(k - 1):
        a, m = unpair(m)
        out.append(a)
    return out + [m]


def enum_index(seq: Sequence[int]) -> int:
    if not seq:
        raise InvalidParameter("sequence length must be >= 1")
    m = seq[-1]
    for a in reversed(seq[:-1]):
        m = pair(a, m)
    return m


class GLipGame(CompositeGame):
    variant = "glipxi"

    def __init__(self, controls: ControlSchedule):
        super().__init__("G^Lip_xi", "glipxi", make_base_game("L"), controls)
        self._games: dict[int, GameSpec] = {}

    def row_game(self, n: int) -> GameSpec:
        k = n // 2
        if k not in self._games:
            self._games[k] = make_base_game("kLip", k=k)
        return self._games[k]

    def route(self, turn: int, move: Move) -> list[tuple[int, Move]]:
        if not isinstance(move, Nat):
            return [(0, move)]  # row 0 rejects anything but a digit
        out: list[tuple[int, Move]] = []
        for j, d in enumerate(enum_seq(2 * turn + 2, move.value)):
            if j // 2 == turn:
                out += [(j, PASS)] * turn
            out.append((j, Nat(d)))
        return out

    def to_json(self) -> dict:
        return {"kind": "glipxi", "controls": self.controls.to_json()}


def make_glipxi(controls: ControlSchedule) -> GLipGame:
    return GLipGame(controls)


class GLipStrategy(CompositeStrategy):
    """``tensor'``: row ``j`` is a strategy for the ``(j // 2)``-Lipschitz game;
    defaults are constants after the row's opening passes."""

    def __init__(self, rows, controls: ControlSchedule, row_fn=None, name: str = "glip"):
        super().__init__(rows, controls, row_fn=row_fn, default_fn=self._default, name=name)

    def _default(self, n: int) -> Strategy:
        y = self.controls.control(n // 2).outside
        return delay_strategy(const_strategy(y), n // 2)

    def runner(self) -> Runner:
        return _GLipRunner(self)

    def respond(self, prefix):
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv


class _GLipRunner(Runner):
    def __init__(self, tau: GLipStrategy):
        self.tau = tau
        self.seen: list[int] = []
        self.rows: list[Runner] = []

    def feed(self, digit):
        n = len(self.seen)
        for j in (2 * n, 2 * n + 1):
            run = self.tau.row(j).runner()
            for d in self.seen:  # the row's opening passes
                if run.feed(d) is not PASS:
                    raise RuleViolation(f"row {j} must pass on its first {n} turns")
            self.rows.append(run)
        self.seen.append(digit)
        digits = []
        for j, run in enumerate(self.rows):
            mv = run.feed(digit)
            if not isinstance(mv, Nat):
                raise RuleViolation(f"row {j} played {mv!r} after its opening passes")
            digits.append(mv.value)
        return Nat(enum_index(digits))


def glip_project(tau: Strategy, j: int) -> Strategy:
    """``pi'_j``: PASS for ``j // 2`` turns, then entry ``j`` of II's decoded move."""
    k = j // 2

    def respond(prefix):
        n = len(prefix) - 1
        if n < k:
            return PASS
        mv = tau.respond(prefix)
        if not isinstance(mv, Nat):
            raise RuleViolation(f"II played {mv!r}")
        return Nat(enum_seq(2 * n + 2, mv.value)[j])

    return HistoryStrategy(respond, name=f"pi'_{j}")


def m_schedule(ns: Sequence[int], budgets: Sequence[int]) -> list[int]:
    """``m_0 = max(n_0, i_0)``, ``m_{k+1} = max(n_{k+1}, i_{k+1}, m_k + 1)``."""
    out: list[int] = []
    for n, i in zip(ns, budgets):
        out.append(max(n, i, out[-1] + 1) if out else max(n, i))
    return out


def glip_compile(pieces: Sequence[tuple[ParityAutomaton | Strategy, DelayTransducer]],
                 controls: ControlSchedule) -> GLipStrategy:
    """Each piece is (region or Lipschitz reduction, transducer with its budget).

    Regions are placed at control indices ``m_k``; reductions given by hand
    must already target ``controls.control(m_k)``.
    """
    ns, budgets = [], []
    for region, T in pieces:
        if not T.check_budget():
            raise InvalidParameter(f"transducer {T.name!r} exceeds its budget")
        budgets.append(T.budget)
        start = ns[-1] + 1 if ns else 0
        if isinstance(region, ParityAutomaton):
            for i in range(start, start + 2 * len(controls.explicit) + 2):
                if _fits(region, controls.control(i)):
                    ns.append(i)
                    break
            else:
                raise UnsupportedRegionShape(f"region {region!r} fits no control set")
        else:
            ns.append(start)
    ms = m_schedule(ns, budgets)
    rows: dict[int, Strategy] = {}
    for (region, T), m in zip(pieces, ms):
        sigma = _auto_witness(region, controls.control(m)) if isinstance(region, ParityAutomaton) else region
        rows[2 * m] = delay_strategy(sigma, m)
        rows[2 * m + 1] = lipschitz_compile(T, k=m)
    tau = GLipStrategy(rows, controls, name="glip-compiled")
    tau.schedule = ms
    return tau


__all__ = [
    "enum_seq",
    "enum_index",
    "GLipGame",
    "GLipStrategy",
    "make_glipxi",
    "glip_project",
    "glip_compile",
    "m_schedule",
]
