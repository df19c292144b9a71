"""Strategy carriers: finite-state (Mealy) machines for player II, Moore
machines for player I, delay transducers, and history-based fallbacks.

II's strategies only see I's digits, matching the usual ``tau(s)`` signature;
II's own past is recomputable from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .moves import Move, Nat, RowMove, move_from_json, move_to_json
from .streams import UPStream

OTHER = "_"


@dataclass(frozen=True)
class Echo:
    """Output template: play the digit just read (optionally on a row)."""

    row: int | None = None

    def emit(self, digit: int) -> Move:
        if self.row is None:
            return Nat(digit)
        return RowMove(self.row, Nat(digit))


ECHO = Echo()


def _render(out, digit: int):
    return out.emit(digit) if isinstance(out, Echo) else out


def _out_to_json(out):
    if isinstance(out, Echo):
        return {"echo": True} if out.row is None else {"echo": True, "row": out.row}
    return move_to_json(out)


def _out_from_json(data):
    if isinstance(data, dict) and data.get("echo"):
        return Echo(data.get("row"))
    return move_from_json(data)


# ---------------------------------------------------------------- player II


class Strategy:
    """A strategy for player II: a move for every nonempty prefix of I's real."""

    def runner(self) -> "Runner":
        raise NotImplementedError

    def respond(self, prefix: Sequence[int]) -> Move:
        if not prefix:
            raise ValueError("II answers nonempty prefixes only")
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv

    def play(self, digits: Iterable[int]) -> list[Move]:
        run = self.runner()
        return [run.feed(d) for d in digits]

    @property
    def finite(self) -> bool:
        return isinstance(self, FiniteStrategy)

    def digits(self) -> set[int]:
        """Digits the strategy distinguishes explicitly."""
        return set()


class Runner:
    def feed(self, digit: int) -> Move:
        raise NotImplementedError


class FiniteStrategy(Strategy):
    """Finite-state II strategy: ``transition(state, digit) -> (state, move)``.

    Subclasses provide ``initial`` and ``transition``; states are hashable.
    """

    initial: Hashable

    def transition(self, state, digit: int) -> tuple[Hashable, Move]:
        raise NotImplementedError

    def runner(self) -> Runner:
        return _StateRunner(self)


class _StateRunner(Runner):
    def __init__(self, machine: FiniteStrategy):
        self.machine = machine
        self.state = machine.initial

    def feed(self, digit: int) -> Move:
        self.state, mv = self.machine.transition(self.state, digit)
        return mv


class Machine(FiniteStrategy):
    """A finite strategy given by a transition function (used by combinators)."""

    def __init__(self, initial, transition: Callable, digits: Iterable[int] = (), name: str = "machine"):
        self.initial = initial
        self._transition = transition
        self._digits = set(digits)
        self.name = name

    def transition(self, state, digit):
        return self._transition(state, digit)

    def digits(self) -> set[int]:
        return set(self._digits)

    def __repr__(self) -> str:
        return f"<Machine {self.name}>"


class MealyStrategy(FiniteStrategy):
    """Table-driven Mealy machine with an ``otherwise`` edge in every state.

    ``table[(state, digit)] = (next_state, output)`` and
    ``default[state] = (next_state, output)``; an output is a :class:`Move`
    or an :class:`Echo` template.
    """

    def __init__(self, n_states: int, initial: int, table: Mapping, default: Mapping, name: str = ""):
        self.n_states = n_states
        self.initial = initial
        self.table = dict(table)
        self.default = dict(default)
        self.name = name
        missing = [s for s in range(n_states) if s not in self.default]
        if missing:
            raise ValueError(f"states {missing} lack an otherwise-edge")
        if not 0 <= initial < n_states:
            raise ValueError("initial state out of range")

    def transition(self, state, digit):
        nxt, out = self.table.get((state, digit)) or self.default[state]
        return nxt, _render(out, digit)

    def digits(self) -> set[int]:
        return {d for (_, d) in self.table}

    def to_json(self) -> dict:
        steps = [[s, d, t, _out_to_json(o)] for (s, d), (t, o) in sorted(self.table.items())]
        steps += [[s, OTHER, t, _out_to_json(o)] for s, (t, o) in sorted(self.default.items())]
        return {"states": self.n_states, "initial": self.initial, "step": steps}

    @classmethod
    def from_json(cls, data) -> "MealyStrategy":
        if isinstance(data, str):
            data = json.loads(data)
        table, default = {}, {}
        for s, d, t, o in data["step"]:
            if d == OTHER:
                default[int(s)] = (int(t), _out_from_json(o))
            else:
                table[(int(s), int(d))] = (int(t), _out_from_json(o))
        return cls(int(data["states"]), int(data.get("initial", 0)), table, default)

    def __repr__(self) -> str:
        return f"<MealyStrategy {self.name or ''} states={self.n_states}>"


class HistoryStrategy(Strategy):
    """II strategy given by a function of I's whole prefix (depth mode only)."""

    def __init__(self, respond: Callable[[tuple[int, ...]], Move], name: str = "history"):
        self._respond = respond
        self.name = name

    def runner(self) -> Runner:
        return _HistoryRunner(self._respond)

    def respond(self, prefix):
        return self._respond(tuple(prefix))


class _HistoryRunner(Runner):
    def __init__(self, fn):
        self.fn = fn
        self.seen: list[int] = []

    def feed(self, digit):
        self.seen.append(digit)
        return self.fn(tuple(self.seen))


class TableStrategy(HistoryStrategy):
    """Finite lookup table keyed by I's prefix; defined up to a fixed depth."""

    def __init__(self, table: Mapping[tuple[int, ...], Move]):
        self.table = dict(table)
        self.depth = max((len(k) for k in self.table), default=0)
        super().__init__(self._lookup, name="table")

    def _lookup(self, prefix):
        try:
            return self.table[prefix]
        except KeyError:
            raise KeyError(f"table strategy undefined at {list(prefix)} (depth {self.depth})") from None


# ---------------------------------------------------------------- player I


class StrategyI:
    """A strategy for player I: a digit for every finite sequence of II-moves."""

    def runner(self) -> "RunnerI":
        raise NotImplementedError

    def respond(self, moves: Sequence[Move]) -> int:
        run = self.runner()
        d = run.first()
        for mv in moves:
            d = run.next(mv)
        return d


class RunnerI:
    def first(self) -> int:
        raise NotImplementedError

    def next(self, move: Move) -> int:
        raise NotImplementedError

    def determined_future(self) -> UPStream | None:
        """If every future digit is already fixed, those digits (from the next turn on)."""
        return None


class MooreStrategyI(StrategyI):
    """Finite-state I strategy: ``output(state)`` is I's next digit and
    ``transition(state, move)`` consumes II's answer."""

    initial: Hashable

    def output(self, state) -> int:
        raise NotImplementedError

    def transition(self, state, move: Move):
        raise NotImplementedError

    def reacts(self, state) -> bool:
        """Whether ``transition`` from ``state`` depends on the move."""
        return True

    def runner(self) -> RunnerI:
        return _MooreRunner(self)


class _MooreRunner(RunnerI):
    def __init__(self, machine: MooreStrategyI):
        self.m = machine
        self.state = machine.initial

    def first(self):
        return self.m.output(self.state)

    def next(self, move):
        self.state = self.m.transition(self.state, move)
        return self.m.output(self.state)

    def determined_future(self):
        seen: dict = {}
        digits: list[int] = []
        s = self.state
        while s not in seen:
            if self.m.reacts(s):
                return None
            seen[s] = len(digits)
            s = self.m.transition(s, None)
            digits.append(self.m.output(s))
        k = seen[s]
        return UPStream(digits[:k], digits[k:])


class TableStrategyI(MooreStrategyI):
    """Moore machine: ``outputs[s]`` is the digit played in state ``s``;
    ``table[(s, move)]`` and ``default[s]`` give successors."""

    def __init__(self, n_states: int, initial: int, outputs: Sequence[int], table: Mapping, default: Mapping, name: str = ""):
        self.n_states = n_states
        self.initial = initial
        self.outputs = list(outputs)
        self.table = dict(table)
        self.default = dict(default)
        self.name = name
        if len(self.outputs) != n_states or any(s not in self.default for s in range(n_states)):
            raise ValueError("every state needs an output digit and an otherwise-edge")

    def output(self, state):
        return self.outputs[state]

    def transition(self, state, move):
        if move is not None and (state, move) in self.table:
            return self.table[(state, move)]
        return self.default[state]

    def reacts(self, state):
        return any(s == state for (s, _) in self.table)

    def to_json(self) -> dict:
        steps = [[s, move_to_json(m), t] for (s, m), t in self.table.items()]
        steps += [[s, OTHER, t] for s, t in sorted(self.default.items())]
        return {"states": self.n_states, "initial": self.initial, "output": self.outputs, "step": steps}

    @classmethod
    def from_json(cls, data) -> "TableStrategyI":
        table, default = {}, {}
        for s, m, t in data["step"]:
            if m == OTHER:
                default[int(s)] = int(t)
            else:
                table[(int(s), move_from_json(m))] = int(t)
        return cls(int(data["states"]), int(data.get("initial", 0)), data["output"], table, default)

    def __repr__(self) -> str:
        return f"<TableStrategyI {self.name}>"


class MachineI(MooreStrategyI):
    def __init__(self, initial, output: Callable, transition: Callable, reacts: Callable | None = None, name: str = "machineI"):
        self.initial = initial
        self._output = output
        self._transition = transition
        self._reacts = reacts
        self.name = name

    def output(self, state):
        return self._output(state)

    def transition(self, state, move):
        return self._transition(state, move)

    def reacts(self, state):
        return True if self._reacts is None else self._reacts(state)


class HistoryStrategyI(StrategyI):
    def __init__(self, fn: Callable[[tuple], int], name: str = "historyI"):
        self.fn = fn
        self.name = name

    def runner(self):
        return _HistoryRunnerI(self.fn)


class _HistoryRunnerI(RunnerI):
    def __init__(self, fn):
        self.fn = fn
        self.moves: list = []

    def first(self):
        return self.fn(())

    def next(self, move):
        self.moves.append(move)
        return self.fn(tuple(self.moves))


def const_strategy_I(x: UPStream) -> MooreStrategyI:
    """I enumerates ``x`` whatever II does."""
    n = len(x.prefix) + len(x.period)

    def nxt(i):
        return i + 1 if i + 1 < n else len(x.prefix)

    return MachineI(0, lambda i: x.at(i), lambda i, mv: nxt(i), reacts=lambda i: False, name=f"const {x!r}")


# ---------------------------------------------------------------- transducers


class DelayTransducer:
    """Finite-state machine emitting a (possibly empty) tuple of digits per
    input digit; ``budget`` bounds how far output may lag behind input."""

    def __init__(self, n_states: int, initial: int, table: Mapping, default: Mapping, budget: int, name: str = ""):
        self.n_states = n_states
        self.initial = initial
        self.table = dict(table)
        self.default = dict(default)
        self.budget = budget
        self.name = name

    def step(self, state, digit) -> tuple[int, tuple[int, ...]]:
        nxt, outs = self.table.get((state, digit)) or self.default[state]
        return nxt, tuple(digit if isinstance(o, Echo) else o for o in outs)

    def digits(self) -> set[int]:
        return {d for (_, d) in self.table}

    def run(self, x: Sequence[int]) -> list[int]:
        s, out = self.initial, []
        for d in x:
            s, o = self.step(s, d)
            out.extend(o)
        return out

    def run_up(self, x: UPStream) -> UPStream:
        """Exact output on an ultimately periodic input (lasso on lap boundaries)."""
        s = self.initial
        head: list[int] = []
        for d in x.prefix:
            s, o = self.step(s, d)
            head.extend(o)
        laps: list[list[int]] = []
        seen: dict = {}
        while s not in seen:
            seen[s] = len(laps)
            lap: list[int] = []
            for d in x.period:
                s, o = self.step(s, d)
                lap.extend(o)
            laps.append(lap)
        k = seen[s]
        cycle = [d for lap in laps[k:] for d in lap]
        if not cycle:
            raise ValueError(f"transducer {self.name!r} emits finitely many digits on {x!r}")
        return UPStream(head + [d for lap in laps[:k] for d in lap], cycle)

    def check_budget(self) -> bool:
        """Static check: every path of ``n + budget`` inputs emits at least ``n``.

        Edge weight is ``outputs - 1``; the running sum must stay ``>= -budget``
        from the initial state, so no reachable cycle may be negative.
        """
        from ._graph import explore

        fresh = max(self.digits(), default=-1) + 1
        alphabet = sorted(self.digits()) + [fresh]
        g = explore(self.initial, lambda s: [((d,), self.step(s, d)[0]) for d in alphabet])
        weights = {}
        for u, (d,), v in g.edges:
            w = len(self.step(u, d)[1]) - 1
            weights[(u, v)] = min(w, weights.get((u, v), w))
        dist = {self.initial: 0}
        for _ in range(len(g.nodes)):
            changed = False
            for (u, v), w in weights.items():
                if u in dist and dist[u] + w < dist.get(v, 1 << 60):
                    dist[v] = dist[u] + w
                    changed = True
            if not changed:
                break
        else:
            return False
        return min(dist.values()) >= -self.budget

    def to_json(self) -> dict:
        def outs(o):
            return [{"echo": True} if isinstance(v, Echo) else v for v in o]

        steps = [[s, d, t, outs(o)] for (s, d), (t, o) in sorted(self.table.items())]
        steps += [[s, OTHER, t, outs(o)] for s, (t, o) in sorted(self.default.items())]
        return {"states": self.n_states, "initial": self.initial, "budget": self.budget, "step": steps}

    @classmethod
    def from_json(cls, data) -> "DelayTransducer":
        table, default = {}, {}
        for s, d, t, o in data["step"]:
            o = tuple(ECHO if isinstance(v, dict) else int(v) for v in o)
            if d == OTHER:
                default[int(s)] = (int(t), o)
            else:
                table[(int(s), int(d))] = (int(t), o)
        return cls(int(data["states"]), int(data.get("initial", 0)), table, default, int(data["budget"]))


def shift_transducer(k: int) -> DelayTransducer:
    """Output digit ``i`` is input digit ``i + k``; budget ``k``."""
    default = {i: (i + 1, ()) for i in range(k)}
    default[k] = (k, (ECHO,))
    return DelayTransducer(k + 1, 0, {}, default, budget=k, name=f"shift{k}")


def identity_transducer() -> DelayTransducer:
    return shift_transducer(0)


def constant_transducer(y: UPStream, delay: int = 0) -> DelayTransducer:
    """Constant output ``y``, emitted one digit per input after ``delay`` silent steps."""
    n = len(y.prefix) + len(y.period)
    default = {i: (i + 1, ()) for i in range(delay)}
    for j in range(n):
        nxt = j + 1 if j + 1 < n else len(y.prefix)
        default[delay + j] = (delay + nxt, (y.at(j),))
    return DelayTransducer(delay + n, 0, {}, default, budget=delay, name="const")
