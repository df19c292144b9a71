"""Reduction games (X, M, R, iota): move alphabets, rule monitors,
interpreters, the run engine and the six base games.

A base game keeps its rules as a finite automaton over II's moves plus a
list of liveness obligations.  That is enough to decide, on a lasso, whether
a complete play is legal, and to search a product graph for illegal plays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .errors import DomainViolation, InvalidParameter, RuleViolation
from .machines import FiniteStrategy, Strategy, StrategyI
from .moves import BT, ERASE, PASS, Move, Nat, RowMove, Sym, kind, transcript_to_json
from .omega import ParityAutomaton, PrefixVerdict, full_space
from .streams import StreamView, UPStream


@dataclass(frozen=True)
class Violated:
    reason: str


def is_violated(state) -> bool:
    return isinstance(state, Violated)


# ---------------------------------------------------------------- obligations


@dataclass(frozen=True)
class Obligation:
    """A liveness condition on the moves repeated forever.

    ``inf``: ``pred`` holds infinitely often; ``fin``: only finitely often;
    ``drift``: the summed ``weight`` diverges; ``one_row``: exactly one row
    receives infinitely many digits.
    """

    kind: str
    tag: str
    pred: Callable[[Move], bool] | None = None
    weight: Callable[[Move], int] | None = None

    def holds(self, cycle: Sequence[Move]) -> bool:
        if self.kind == "inf":
            return any(self.pred(m) for m in cycle)
        if self.kind == "fin":
            return not any(self.pred(m) for m in cycle)
        if self.kind == "drift":
            return sum(self.weight(m) for m in cycle) > 0
        if self.kind == "one_row":
            return len(_nat_rows(cycle)) == 1
        raise InvalidParameter(f"unknown obligation {self.kind}")

    def without_pass(self) -> "Obligation":
        """The same obligation read on the PASS-filtered play."""
        if self.kind == "drift":
            w = self.weight
            return Obligation("drift", self.tag, weight=lambda m: 0 if m is PASS else w(m))
        if self.pred is not None:
            p = self.pred
            return Obligation(self.kind, self.tag, pred=lambda m: m is not PASS and p(m))
        return self


def _nat_rows(moves: Sequence[Move]) -> set[int]:
    return {m.row for m in moves if isinstance(m, RowMove) and isinstance(m.inner, Nat)}


def _not_pass(m) -> bool:
    return m is not PASS


def _is_nat(m) -> bool:
    return isinstance(m, Nat)


# ---------------------------------------------------------------- rules


class Rules:
    """Safety part of the rules as a deterministic automaton over II's moves."""

    initial: Hashable = 0
    obligations: tuple[Obligation, ...] = ()

    def step(self, state, move: Move):
        raise NotImplementedError


class AlphabetRules(Rules):
    def __init__(self, kinds: frozenset[str], obligations: tuple[Obligation, ...] = ()):
        self.kinds = kinds
        self.obligations = obligations
        self.initial = 0

    def step(self, state, move):
        if is_violated(state):
            return state
        if kind(move) not in self.kinds:
            return Violated(f"move {move!r} not in the alphabet {sorted(self.kinds)}")
        return state


class KLipRules(Rules):
    def __init__(self, k: int):
        self.k = k
        self.initial = 0
        self.obligations = ()

    def step(self, state, move):
        if is_violated(state):
            return state
        if state < self.k:
            if move is not PASS:
                return Violated(f"turn {state} must be a pass")
            return state + 1
        if not isinstance(move, Nat):
            return Violated(f"turn >= {self.k} must be a digit, got {move!r}")
        return state


class PClosedRules(Rules):
    def __init__(self, inner: Rules):
        self.inner = inner
        self.initial = inner.initial
        self.obligations = tuple(o.without_pass() for o in inner.obligations) + (
            Obligation("inf", "infinitely many non-pass moves", pred=_not_pass),
        )

    def step(self, state, move):
        if move is PASS or is_violated(state):
            return state
        return self.inner.step(state, move)


class DelayRules(Rules):
    def __init__(self, inner: Rules, n: int):
        self.inner = inner
        self.n = n
        self.initial = (0, inner.initial)
        self.obligations = inner.obligations

    def step(self, state, move):
        if is_violated(state):
            return state
        count, s = state
        if count < self.n:
            if move is not PASS:
                return Violated(f"turn {count} of the delay must be a pass")
            return (count + 1, s)
        t = self.inner.step(s, move)
        return t if is_violated(t) else (count, t)


# ---------------------------------------------------------------- interpreters


class Interp:
    """Pure interpreter: state after each move, tentative/committed output,
    and the exact output of a legal lassoed play."""

    initial: Hashable = ()

    def step(self, state, move):
        raise NotImplementedError

    def tentative(self, state) -> list[int]:
        raise NotImplementedError

    def committed(self, state) -> int:
        return 0

    def lasso_output(self, prefix: Sequence[Move], cycle: Sequence[Move]) -> UPStream:
        raise NotImplementedError


class DigitsInterp(Interp):
    """Output = II's digits in order, everything else dropped."""

    initial = ()

    def step(self, state, move):
        return state + (move.value,) if isinstance(move, Nat) else state

    def tentative(self, state):
        return list(state)

    def committed(self, state):
        return len(state)

    def lasso_output(self, prefix, cycle):
        per = [m.value for m in cycle if isinstance(m, Nat)]
        if not per:
            raise RuleViolation("finitely many digits")
        return UPStream([m.value for m in prefix if isinstance(m, Nat)], per)


def erase_eval(moves: Sequence[Move], stack: Sequence[int] = ()) -> list[int]:
    """Stack semantics of digits and erasures (erasing the empty board is a no-op)."""
    out = list(stack)
    for m in moves:
        if isinstance(m, Nat):
            out.append(m.value)
        elif m is ERASE and out:
            out.pop()
    return out


class EraserInterp(Interp):
    initial = ()

    def step(self, state, move):
        if isinstance(move, Nat):
            return state + (move.value,)
        if move is ERASE:
            return state[:-1]
        return state

    def tentative(self, state):
        return list(state)

    def lasso_output(self, prefix, cycle):
        pops, pushed = 0, []
        for m in cycle:
            if isinstance(m, Nat):
                pushed.append(m.value)
            elif m is ERASE:
                if pushed:
                    pushed.pop()
                else:
                    pops += 1
        if len(pushed) <= pops:
            raise RuleViolation("output length does not diverge")
        base = erase_eval(list(cycle), erase_eval(prefix))
        return UPStream(base[: len(base) - pops], pushed[: len(pushed) - pops])


class BacktrackInterp(Interp):
    initial = ()

    def step(self, state, move):
        if isinstance(move, Nat):
            return state + (move.value,)
        if move is BT:
            return ()
        return state

    def tentative(self, state):
        return list(state)

    def lasso_output(self, prefix, cycle):
        if any(m is BT for m in cycle):
            raise RuleViolation("infinitely many backtracks")
        per = [m.value for m in cycle if isinstance(m, Nat)]
        if not per:
            raise RuleViolation("finitely many digits after the last backtrack")
        last = max((i for i, m in enumerate(prefix) if m is BT), default=-1)
        return UPStream([m.value for m in prefix[last + 1:] if isinstance(m, Nat)], per)


class MultitapeInterp(Interp):
    """State: per-row digit tuples and the row of the latest digit."""

    initial = ((), None)

    def step(self, state, move):
        rows, last = state
        if isinstance(move, RowMove) and isinstance(move.inner, Nat):
            table = dict(rows)
            table[move.row] = table.get(move.row, ()) + (move.inner.value,)
            return tuple(sorted(table.items())), move.row
        return state

    def tentative(self, state):
        rows, last = state
        return list(dict(rows).get(last, ())) if last is not None else []

    def lasso_output(self, prefix, cycle):
        live = _nat_rows(cycle)
        if len(live) != 1:
            raise RuleViolation(f"{len(live)} rows receive infinitely many digits")
        (r,) = live

        def digits(ms):
            return [m.inner.value for m in ms if isinstance(m, RowMove) and m.row == r and isinstance(m.inner, Nat)]

        return UPStream(digits(prefix), digits(cycle))


class FilteredInterp(Interp):
    """Inner interpreter fed only the moves that pass ``keep``."""

    def __init__(self, inner: Interp, skip: int = 0, drop_pass: bool = False):
        self.inner = inner
        self.skip = skip
        self.drop_pass = drop_pass
        self.initial = (0, inner.initial)

    def step(self, state, move):
        count, s = state
        if count < self.skip:
            return (count + 1, s)
        if self.drop_pass and move is PASS:
            return state
        return (count, self.inner.step(s, move))

    def tentative(self, state):
        return self.inner.tentative(state[1])

    def committed(self, state):
        return self.inner.committed(state[1])

    def lasso_output(self, prefix, cycle):
        prefix, cycle = list(prefix), list(cycle)
        while len(prefix) < self.skip:
            prefix += cycle
        prefix = prefix[self.skip:]
        if self.drop_pass:
            prefix = [m for m in prefix if m is not PASS]
            cycle = [m for m in cycle if m is not PASS]
            if not cycle:
                raise RuleViolation("only passes from some point on")
        return self.inner.lasso_output(prefix, cycle)


# ---------------------------------------------------------------- runtime objects


class RuleMonitor:
    """Single-run rule monitor; Violated is absorbing."""

    def __init__(self, rules: Rules):
        self.rules = rules
        self.state = rules.initial

    def step(self, i_digit: int, move: Move):
        self.state = self.rules.step(self.state, move)
        return self.status

    @property
    def status(self) -> str:
        return f"violated: {self.state.reason}" if is_violated(self.state) else "ok"

    @property
    def violated(self) -> bool:
        return is_violated(self.state)

    def pending_obligations(self) -> list[str]:
        return [o.tag for o in self.rules.obligations]


class Interpreter:
    def __init__(self, interp: Interp):
        self.interp = interp
        self.state = interp.initial

    def step(self, i_digit: int, move: Move):
        self.state = self.interp.step(self.state, move)
        return self.tentative()

    def tentative(self) -> list[int]:
        return self.interp.tentative(self.state)

    def committed_len(self) -> int:
        return self.interp.committed(self.state)


# ---------------------------------------------------------------- games


@dataclass(frozen=True)
class LassoRun:
    """An infinite run ``prefix + period + period + ...`` of (I digit, II move) pairs."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise InvalidParameter("a lasso needs a nonempty period")

    @property
    def x(self) -> UPStream:
        return UPStream([d for d, _ in self.prefix], [d for d, _ in self.period])

    def moves(self) -> tuple[list[Move], list[Move]]:
        return [m for _, m in self.prefix], [m for _, m in self.period]

    def to_json(self) -> dict:
        return {"prefix": transcript_to_json(self.prefix), "period": transcript_to_json(self.period)}


@dataclass(eq=False)
class GameSpec:
    name: str
    kind: str
    rules: Rules
    interp: Interp
    domain: ParityAutomaton = field(default_factory=full_space)
    p_closed: bool = False
    delayable: bool = False
    params: dict = field(default_factory=dict)
    base: "GameSpec | None" = None

    # runtime pieces
    def monitor(self) -> RuleMonitor:
        return RuleMonitor(self.rules)

    def interpreter(self) -> Interpreter:
        return Interpreter(self.interp)

    @property
    def alphabet(self) -> frozenset[str]:
        r, kinds = self.rules, set()
        while not isinstance(r, AlphabetRules):
            if isinstance(r, (PClosedRules, DelayRules, KLipRules)):
                kinds.add("pass")
            if isinstance(r, KLipRules):
                return frozenset(kinds | {"nat"})
            r = getattr(r, "inner", None)
            if r is None:
                return frozenset(kinds | {"nat", "pass"})
        return frozenset(kinds | set(r.kinds))

    def up_verdict(self, run: LassoRun) -> tuple[bool, str]:
        """Exact legality of a lassoed play: (ok, reason)."""
        prefix, period = run.moves()
        s = self.rules.initial
        for m in prefix:
            s = self.rules.step(s, m)
        seen: dict = {}
        laps: list[list[Move]] = []
        while s not in seen:
            if is_violated(s):
                return False, s.reason
            seen[s] = len(laps)
            for m in period:
                s = self.rules.step(s, m)
            laps.append(list(period))
        if is_violated(s):
            return False, s.reason
        cycle = [m for lap in laps[seen[s]:] for m in lap]
        for ob in self.rules.obligations:
            if not ob.holds(cycle):
                return False, f"obligation failed: {ob.tag}"
        return True, "legal"

    def up_output(self, run: LassoRun) -> UPStream:
        ok, reason = self.up_verdict(run)
        if not ok:
            raise RuleViolation(reason, witness=run)
        prefix, period = run.moves()
        return self.interp.lasso_output(prefix, period)

    def evaluate(self, tau: Strategy, x: UPStream, max_rows: int | None = None) -> UPStream:
        """Exact ``f_tau(x)``; base games go through the move lasso."""
        hook = getattr(tau, "exact_output", None)
        if hook is not None:
            out = hook(self, x)
            if out is not None:
                return out
        return self.up_output(strategy_lasso(tau, x))

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params}

    def __repr__(self) -> str:
        return f"<GameSpec {self.name}>"


def strategy_lasso(tau: Strategy, x: UPStream) -> LassoRun:
    """Play a finite-state II strategy on ``x`` until (state, period position) repeats."""
    if not isinstance(tau, FiniteStrategy):
        from .errors import NotFiniteState

        raise NotFiniteState(f"{tau!r} has no finite state space; use depth mode")
    s = tau.initial
    pairs: list[tuple[int, Move]] = []
    for d in x.prefix:
        s, mv = tau.transition(s, d)
        pairs.append((d, mv))
    seen: dict = {}
    L = len(x.period)
    pos = 0
    while (s, pos) not in seen:
        seen[(s, pos)] = len(pairs)
        d = x.period[pos]
        s, mv = tau.transition(s, d)
        pairs.append((d, mv))
        pos = (pos + 1) % L
    k = seen[(s, pos)]
    return LassoRun(tuple(pairs[:k]), tuple(pairs[k:]))


_KINDS = {
    "L": frozenset({"nat"}),
    "W": frozenset({"nat", "pass"}),
    "E": frozenset({"nat", "erase"}),
    "BT": frozenset({"nat", "pass", "bt"}),
    "M": frozenset({"row"}),
}


def make_base_game(kind: str, k: int | None = None, domain: ParityAutomaton | None = None) -> GameSpec:
    """One of the base games L, W, kLip, E, BT, M."""
    dom = domain if domain is not None else full_space()
    if kind == "L":
        return GameSpec("G_L", "L", AlphabetRules(_KINDS["L"]), DigitsInterp(), dom)
    if kind == "W":
        rules = AlphabetRules(_KINDS["W"], (Obligation("inf", "infinitely many non-pass moves", pred=_not_pass),))
        return GameSpec("G_W", "W", rules, DigitsInterp(), dom, p_closed=True, delayable=True)
    if kind == "kLip":
        if k is None or k < 0:
            raise InvalidParameter("kLip needs k >= 0")
        return GameSpec(f"G_{k}-Lip", "kLip", KLipRules(k), DigitsInterp(), dom, params={"k": k})
    if kind == "E":
        weight = lambda m: 1 if isinstance(m, Nat) else (-1 if m is ERASE else 0)  # noqa: E731
        rules = AlphabetRules(_KINDS["E"], (Obligation("drift", "output length diverges", weight=weight),))
        return GameSpec("G_E", "E", rules, EraserInterp(), dom, p_closed=True, delayable=True)
    if kind == "BT":
        rules = AlphabetRules(_KINDS["BT"], (
            Obligation("fin", "finitely many backtracks", pred=lambda m: m is BT),
            Obligation("inf", "infinitely many digits", pred=_is_nat),
        ))
        return GameSpec("G_bt", "BT", rules, BacktrackInterp(), dom, p_closed=True, delayable=True)
    if kind == "M":
        rules = AlphabetRules(_KINDS["M"], (
            Obligation("inf", "some row receives infinitely many digits",
                       pred=lambda m: isinstance(m, RowMove) and isinstance(m.inner, Nat)),
            Obligation("one_row", "at most one row receives infinitely many digits"),
        ))
        return GameSpec("G_M", "M", rules, MultitapeInterp(), dom, p_closed=True, delayable=True)
    raise InvalidParameter(f"unknown base game {kind!r}")


def p_close(G: GameSpec) -> GameSpec:
    """Add a fresh pass move: rules and output read the pass-filtered play."""
    if "pass" in G.alphabet and G.p_closed:
        return G
    return GameSpec(f"{G.name}^p", "p_close", PClosedRules(G.rules), FilteredInterp(G.interp, drop_pass=True),
                    G.domain, p_closed=True, delayable=True, base=G)


def delay(G: GameSpec, n: int) -> GameSpec:
    """II must pass exactly on its first ``n`` turns; the rest is played in ``G``."""
    if n < 0:
        raise InvalidParameter("delay must be >= 0")
    if n == 0:
        return G
    return GameSpec(f"{G.name}^{n}", "delay", DelayRules(G.rules, n), FilteredInterp(G.interp, skip=n),
                    G.domain, p_closed=G.p_closed, delayable=G.delayable, params={"n": n}, base=G)


# ---------------------------------------------------------------- running


@dataclass
class RunResult:
    run: list[tuple[int, Move]]
    status: str
    tentative: list[int]
    committed: int
    domain: PrefixVerdict
    extra: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.status != "ok"

    def to_json(self) -> dict:
        return {
            "run": transcript_to_json(self.run),
            "status": self.status,
            "tentative": self.tentative,
            "committed": self.committed,
            "domain": self.domain.value,
            **self.extra,
        }


def run_to_depth(G: GameSpec, source, tau: Strategy, depth: int) -> RunResult:
    """Play ``depth`` turns; ``source`` is I's real or a strategy for I."""
    if depth < 1:
        raise InvalidParameter("depth must be >= 1")
    mon, interp = G.monitor(), G.interpreter()
    runner = tau.runner()
    i_runner = source.runner() if isinstance(source, StrategyI) else None
    view = None if i_runner else StreamView.of(source)
    run: list[tuple[int, Move]] = []
    digits: list[int] = []
    status = "ok"
    d = i_runner.first() if i_runner else view[0]
    for t in range(depth):
        digits.append(d)
        mv = runner.feed(d)
        run.append((d, mv))
        if not isinstance(mv, (Nat, Sym, RowMove)):
            status = f"violated: {mv!r} is not a move"
            break
        status = mon.step(d, mv)
        if status.startswith("violated"):
            break
        interp.step(d, mv)
        if status != "ok":
            break
        if t + 1 < depth:
            d = i_runner.next(mv) if i_runner else view[t + 1]
    extra = {}
    if hasattr(mon, "row_verdicts"):
        extra["rows"] = mon.row_verdicts()
    return RunResult(run, status, interp.tentative(), interp.committed_len(), G.domain.verdict(digits), extra)


class Winner(enum.Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class Adjudication:
    winner: Winner
    reason: str

    def to_json(self) -> dict:
        return {"winner": self.winner.value, "reason": self.reason}


def adjudicate_up(G: GameSpec, x: UPStream, tau: Strategy, A: ParityAutomaton, B: ParityAutomaton,
                  max_rows: int | None = None) -> Adjudication:
    """Exact winner of the play ``x`` against ``tau`` in ``G(A, B)``."""
    if not G.domain.accepts(x):
        return Adjudication(Winner.II, "rule 1: I's real is outside the domain")
    try:
        y = G.evaluate(tau, x, max_rows)
    except RuleViolation as exc:
        return Adjudication(Winner.I, f"rule 2: {exc.reason}")
    a, b = A.accepts(x), B.accepts(y)
    if a == b:
        return Adjudication(Winner.II, f"payoff: x in A is {a}, output in B is {b}")
    return Adjudication(Winner.I, f"payoff: x in A is {a}, output in B is {b}")


def eval_play(G: GameSpec, x: UPStream, y: UPStream) -> UPStream:
    """Output of the run where II's digits are the fixed stream ``y`` (any digit game)."""
    run = LassoRun(*_zip_lasso(x, y))
    return G.up_output(run)


def _zip_lasso(x: UPStream, y: UPStream):
    from math import lcm

    p = max(len(x.prefix), len(y.prefix))
    L = lcm(len(x.period), len(y.period))
    pairs = [(x.at(i), Nat(y.at(i))) for i in range(p + L)]
    return tuple(pairs[:p]), tuple(pairs[p:])


def check_domain(G: GameSpec, x: UPStream) -> None:
    if not G.domain.accepts(x):
        raise DomainViolation(f"{x!r} is outside the domain of {G.name}")
