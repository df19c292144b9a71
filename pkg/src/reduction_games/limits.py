"""The limit game G_lim: row ``n`` replays inner game ``n`` and the output is
the pointwise limit of the row outputs."""

from __future__ import annotations

from typing import Mapping, Sequence

from ._graph import explore
from .composite import _NoInterp, _NoRules, _Rows
from .errors import InvalidParameter, LimitUndetermined, UnsupportedGame
from .games import GameSpec, Interpreter, RuleMonitor, make_base_game
from .machines import Machine, Strategy
from .moves import PASS
from .omega import ParityAutomaton, full_space
from .strategies import LegalityReport, TensorStrategy, const_strategy, legality_check_exact
from .streams import UPStream, unpair


class GLimGame(GameSpec):
    def __init__(self, inners: Sequence[GameSpec], tail: GameSpec | None = None, domain=None):
        inners = list(inners)
        if tail is None:
            if not inners:
                raise InvalidParameter("G_lim needs at least one inner game")
            tail = inners[-1]
        for g in inners + [tail]:
            if not g.p_closed:
                raise InvalidParameter(f"{g.name} is not p-closed")
        super().__init__("G_lim", "glim", _NoRules(), _NoInterp(), domain or full_space(), p_closed=True)
        self.inners = inners
        self.tail = tail

    def row_game(self, n: int) -> GameSpec:
        return self.inners[n] if n < len(self.inners) else self.tail

    def route(self, turn, move):
        return [(unpair(turn)[0], move)]

    def evaluate(self, tau: Strategy, x: UPStream, max_rows: int | None = None) -> UPStream:
        pattern = getattr(tau, "row_pattern", None)
        if pattern is None:
            raise UnsupportedGame("exact limits need rows that repeat from some index on")
        start, period = pattern(x)
        if start < len(self.inners):
            start = len(self.inners)  # the tail game must be in force
        outs = [self.row_game(n).evaluate(tau.row(n), x) for n in range(start + period)]
        tail = set(outs[start:])
        if len(tail) != 1:
            raise LimitUndetermined(f"rows from {start} on cycle through {len(tail)} distinct outputs")
        return outs[start]

    def monitor(self):
        return GLimMonitor(self)

    def interpreter(self):
        return GLimInterpreter(self)

    def legality_exact(self, tau: Strategy) -> LegalityReport:
        check = getattr(tau, "limit_legality", None)
        if check is None:
            raise UnsupportedGame("exact limit legality needs a row-schema strategy")
        return check(self)

    def to_json(self) -> dict:
        return {"kind": "glim", "inners": [g.to_json() for g in self.inners], "tail": self.tail.to_json()}


def make_glim(inners: Sequence[GameSpec], tail: GameSpec | None = None) -> GLimGame:
    return GLimGame(inners, tail)


def _stabilization(rows: _Rows) -> list[int]:
    """For each output digit: how many of the latest rows agree on it."""
    outs = [rows.itp[n].tentative() for n in sorted(rows.itp)]
    stable = []
    for j in range(max((len(o) for o in outs), default=0)):
        have = [o[j] for o in outs if len(o) > j]
        run = 1
        while run < len(have) and have[-run - 1] == have[-1]:
            run += 1
        stable.append(run)
    return stable


class GLimMonitor(RuleMonitor):
    def __init__(self, game: GLimGame):
        self.game = game
        self.rows = _Rows(game)
        self._status = "ok"

    def step(self, digit, move):
        if self._status == "ok":
            self.rows.step(digit, move)
            for n, m in sorted(self.rows.mon.items()):
                if m.violated:
                    self._status = f"violated: row {n}: {m.status[len('violated: '):]}"
                    break
        return self._status

    @property
    def status(self):
        return self._status

    @property
    def violated(self):
        return self._status != "ok"

    def pending_obligations(self):
        return ["every row follows its rules", "the row outputs converge"]

    def row_verdicts(self) -> dict:
        return {"agreeing_rows": _stabilization(self.rows)}


class GLimInterpreter(Interpreter):
    """The latest row with output; nothing is committed at finite depth."""

    def __init__(self, game: GLimGame):
        self.rows = _Rows(game)

    def step(self, digit, move):
        self.rows.step(digit, move)
        return self.tentative()

    def tentative(self):
        for n in sorted(self.rows.itp, reverse=True):
            out = self.rows.itp[n].tentative()
            if out:
                return out
        return []

    def committed_len(self):
        return 0


# ---------------------------------------------------------------- strategies


class LimitStrategy(TensorStrategy):
    """Explicit rows below ``len(rows)``, then one shared tail strategy."""

    def __init__(self, rows: Sequence[Strategy], tail: Strategy, name: str = "limit"):
        self.explicit = list(rows)
        self.tail_strategy = tail
        super().__init__(lambda n: self.explicit[n] if n < len(self.explicit) else tail, name=name)

    def row_pattern(self, x: UPStream) -> tuple[int, int]:
        return len(self.explicit), 1

    def limit_legality(self, game: GLimGame) -> LegalityReport:
        for n in range(len(self.explicit) + 1):
            rep = legality_check_exact(game.row_game(n), self.row(n))
            if not rep.legal:
                return LegalityReport("illegal", rep.witness, f"row {n}: {rep.reason}")
        return LegalityReport("legal", reason="rows legal; constant tail gives the limit")


class SwitchFamily(TensorStrategy):
    """Row ``n`` passes while reading ``x | n`` through ``pre``, then plays
    ``posts[state]`` on the rest of ``x``.  Rows live in the Wadge game."""

    def __init__(self, pre: ParityAutomaton, posts: Mapping[int, Strategy], name: str = "switch"):
        missing = set(range(pre.n_states)) - set(posts)
        if missing:
            raise InvalidParameter(f"no post strategy for states {sorted(missing)}")
        self.pre = pre
        self.posts = dict(posts)
        super().__init__(self._make_row, name=name)

    def _make_row(self, n: int) -> Strategy:
        pre, posts = self.pre, self.posts

        def step(state, digit):
            count, q, s = state
            if count < n:
                q = pre.step(q, digit)
                return (count + 1, q, s), PASS
            post = posts[q]
            if s is None:
                s = post.initial
            s, mv = post.transition(s, digit)
            return (count, q, s), mv

        return Machine((0, pre.initial, None), step, set(pre.alphabet), name=f"{self.name}[{n}]")

    def row_pattern(self, x: UPStream) -> tuple[int, int]:
        """Row ``n``'s output depends on (state after ``x | n``, ``n`` mod period)."""
        p, L = len(x.prefix), len(x.period)
        q = self.pre.run(x.prefix)
        seen: dict = {}
        n = p
        while (q, (n - p) % L) not in seen:
            seen[(q, (n - p) % L)] = n
            q = self.pre.step(q, x.at(n))
            n += 1
        first = seen[(q, (n - p) % L)]
        return first, n - first

    def limit_legality(self, game: GLimGame) -> LegalityReport:
        W = make_base_game("W")
        for q, post in sorted(self.posts.items()):
            rep = legality_check_exact(W, post)
            if not rep.legal:
                return LegalityReport("illegal", rep.witness, f"post strategy {q}: {rep.reason}")
        # the pre-state must settle on every input: only self-loops may repeat
        g = explore(self.pre.initial, lambda q: [(d, self.pre.step(q, d)) for d in self.pre.alphabet])
        from ._graph import _sccs

        for comp in _sccs(set(g.nodes), g.edges):
            if len(comp) > 1:
                raise UnsupportedGame("pre-states may cycle; limits are checked per input")
        return LegalityReport("legal", reason="post strategies legal; pre-states settle")


def zero_test_family() -> SwitchFamily:
    """Row ``n``: constant 0 if ``x | n`` is all zeros, else constant 1."""
    pre = ParityAutomaton(2, 0, {(0, 0): 0}, [1, 1], [0, 0], name="all-zero-so-far")
    zero, one = UPStream((), (0,)), UPStream((), (1,))
    return SwitchFamily(pre, {0: const_strategy(zero), 1: const_strategy(one)}, name="zero-test")


def alternating_family() -> SwitchFamily:
    pre = ParityAutomaton(2, 0, {}, [1, 0], [0, 0], name="parity-of-n")
    return SwitchFamily(pre, {0: const_strategy(UPStream((), (0,))), 1: const_strategy(UPStream((), (1,)))},
                        name="alternating")


__all__ = [
    "GLimGame",
    "LimitStrategy",
    "SwitchFamily",
    "make_glim",
    "zero_test_family",
    "alternating_family",
]
