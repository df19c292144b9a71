"""Composite games with infinitely many rows for II: the piecewise game
G^F_xi, its tilde variant, and the strategy transformations that go with
them (piecewise compile/decompile, control swaps, player-I transfers).

II's move at turn ``pair(n, m)`` is its ``m``-th move on row ``n``.  Even
rows ``2i`` are Wadge rows whose output is tested against the control set
``P_i``; odd rows ``2i + 1`` replay the inner game.  The output is the odd
row right below the least activated control row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Mapping, Sequence

from ._graph import explore, find_cycle
from .errors import (
    BadAnchor,
    InvalidParameter,
    NoActivationWithinBound,
    NotDelayable,
    RuleViolation,
    UnsupportedGame,
    UnsupportedRegionShape,
    WitnessFailure,
)
from .games import (
    GameSpec,
    Interp,
    Interpreter,
    LassoRun,
    Rules,
    RuleMonitor,
    make_base_game,
)
from .machines import FiniteStrategy, MooreStrategyI, MealyStrategy, Runner, RunnerI, Strategy, StrategyI
from .moves import Move, Nat
from .omega import (
    ControlSet,
    ParityAutomaton,
    PrefixVerdict,
    as_buchi,
    canonical_pi1,
    canonical_pi2,
    co_buchi_slice,
    normalize,
    reduce_buchi_to_INF0,
    reduce_safety_to_Z,
)
from .strategies import (
    LegalityReport,
    TensorStrategy,
    compose,
    const_strategy,
    id_strategy,
    legality_check_exact,
)
from .streams import UPStream, pair, unpair

DEFAULT_MAX_ROWS = 64


# ---------------------------------------------------------------- schedules


@dataclass(frozen=True)
class ControlSchedule:
    """``explicit`` control sets, continued by repeating the last one or cycling."""

    explicit: tuple[ControlSet, ...]
    tail: str = "repeat"

    def __post_init__(self):
        if not self.explicit:
            raise InvalidParameter("a schedule needs at least one control set")
        if self.tail not in ("repeat", "cycle"):
            raise InvalidParameter("tail must be 'repeat' or 'cycle'")
        object.__setattr__(self, "explicit", tuple(self.explicit))

    @classmethod
    def repeat(cls, *controls: ControlSet) -> "ControlSchedule":
        return cls(tuple(controls), "repeat")

    @classmethod
    def cycle(cls, *controls: ControlSet) -> "ControlSchedule":
        return cls(tuple(controls), "cycle")

    def control(self, n: int) -> ControlSet:
        k = len(self.explicit)
        if n < k:
            return self.explicit[n]
        return self.explicit[-1] if self.tail == "repeat" else self.explicit[n % k]

    __getitem__ = control

    def recurrence(self) -> tuple[int, int]:
        """``(start, period)``: ``control(n + period) == control(n)`` for ``n >= start``."""
        if self.tail == "repeat":
            return len(self.explicit) - 1, 1
        return 0, len(self.explicit)

    def hatted(self) -> "ControlSchedule":
        """``P'_{2n} = P'_{2n+1} = P_n``."""
        doubled = tuple(c for c in self.explicit for _ in (0, 1))
        return ControlSchedule(doubled, self.tail)

    def to_json(self) -> dict:
        return {"explicit": [c.to_json() for c in self.explicit], "tail": self.tail}

    @classmethod
    def from_json(cls, data) -> "ControlSchedule":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(ControlSet.from_json(c) for c in data["explicit"]), data.get("tail", "repeat"))


def z_schedule() -> ControlSchedule:
    return ControlSchedule.repeat(canonical_pi1())


def inf0_schedule() -> ControlSchedule:
    return ControlSchedule.repeat(canonical_pi2())


# ---------------------------------------------------------------- composite strategies


class CompositeStrategy(TensorStrategy):
    """Row-indexed bundle: explicit rows, an optional rule for further rows,
    and defaults (a constant outside ``P_i`` on control rows, identity on
    inner rows)."""

    def __init__(self, rows: Mapping[int, Strategy], controls: ControlSchedule | None = None,
                 row_fn: Callable[[int], Strategy | None] | None = None,
                 default_fn: Callable[[int], Strategy] | None = None, name: str = "composite"):
        self.rows = dict(rows)
        self.controls = controls
        self.row_fn = row_fn
        self.default_fn = default_fn
        super().__init__(self._row, name=name)

    def _row(self, n: int) -> Strategy:
        if n in self.rows:
            return self.rows[n]
        if self.row_fn is not None:
            s = self.row_fn(n)
            if s is not None:
                return s
        return self.default(n)

    def default(self, n: int) -> Strategy:
        if self.default_fn is not None:
            return self.default_fn(n)
        if n % 2:
            return id_strategy()
        if self.controls is None:
            raise InvalidParameter("default control rows need a schedule")
        return const_strategy(self.controls.control(n // 2).outside)

    @property
    def bound(self) -> int:
        return max(self.rows, default=-1) + 1

    @property
    def finite(self) -> bool:
        return self.row_fn is None

    def to_json(self) -> dict:
        if self.row_fn is not None:
            raise InvalidParameter("strategies with a row rule are not serializable")
        rows = {}
        for n, s in sorted(self.rows.items()):
            if not hasattr(s, "to_json"):
                raise InvalidParameter(f"row {n} is not serializable")
            rows[str(n)] = s.to_json()
        out: dict = {"rows": rows}
        if self.controls is not None:
            out["controls"] = self.controls.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "CompositeStrategy":
        if isinstance(data, str):
            data = json.loads(data)
        controls = ControlSchedule.from_json(data["controls"]) if "controls" in data else None
        rows = {int(n): MealyStrategy.from_json(s) for n, s in data["rows"].items()}
        return cls(rows, controls)

    def __repr__(self) -> str:
        return f"<CompositeStrategy {self.name} rows={sorted(self.rows)}{' +rule' if self.row_fn else ''}>"


# ---------------------------------------------------------------- the games


@dataclass(frozen=True)
class ActivationProfile:
    verdicts: tuple[bool, ...]
    least: int | None
    bound: int

    def to_json(self) -> dict:
        return {"verdicts": list(self.verdicts), "least": self.least, "bound": self.bound}


class _NoRules(Rules):
    initial = 0
    obligations = ()

    def step(self, state, move):
        return state


class _NoInterp(Interp):
    initial = ()

    def step(self, state, move):
        return state

    def tentative(self, state):
        return []


class CompositeGame(GameSpec):
    """Shared machinery: rows routed by the pairing function, row games,
    an activation test per control row."""

    variant = "gfxi"

    def __init__(self, name: str, kind: str, inner: GameSpec, controls: ControlSchedule,
                 domain: ParityAutomaton | None = None):
        super().__init__(name, kind, _NoRules(), _NoInterp(), domain if domain is not None else inner.domain,
                         p_closed=True, delayable=True, params={})
        self.inner = inner
        self.controls = controls
        self.W = make_base_game("W")

    # rows -------------------------------------------------------------
    def row_game(self, n: int) -> GameSpec:
        return self.W if n % 2 == 0 else self.inner

    def activates(self, i: int, c: UPStream, x: UPStream) -> bool:
        return self.controls.control(i).automaton.accepts(c)

    def control_verdict(self, i: int, prefix: Sequence[int], x_prefix: Sequence[int]) -> PrefixVerdict:
        return self.controls.control(i).automaton.verdict(prefix)

    def route(self, turn: int, move: Move) -> list[tuple[int, Move]]:
        n, _ = unpair(turn)
        return [(n, move)]

    def checks_inner(self, activated: bool) -> bool:
        return True

    # exact evaluation -------------------------------------------------
    def activation_profile(self, tau: Strategy, x: UPStream, max_rows: int | None = None) -> ActivationProfile:
        bound = max_rows or DEFAULT_MAX_ROWS
        verdicts = []
        for i in range(bound):
            c = self.row_game(2 * i).evaluate(_row(tau, 2 * i), x)
            hit = self.activates(i, c, x)
            verdicts.append(hit)
            if hit:
                return ActivationProfile(tuple(verdicts), i, bound)
        return ActivationProfile(tuple(verdicts), None, bound)

    def evaluate(self, tau: Strategy, x: UPStream, max_rows: int | None = None) -> UPStream:
        prof = self.activation_profile(tau, x, max_rows)
        if prof.least is None:
            raise NoActivationWithinBound(prof.bound)
        i = prof.least
        out = self.row_game(2 * i + 1).evaluate(_row(tau, 2 * i + 1), x)
        # every explicit row must follow its rules (the tilde variant only
        # checks inner rows below activated controls)
        bound = getattr(tau, "bound", 0)
        for n in range(min(bound, 2 * prof.bound)):
            if n in (2 * i, 2 * i + 1) or (n % 2 == 0 and n // 2 <= i):
                continue
            if n % 2 == 1 and not self.checks_inner(self._activated(tau, n // 2, x, prof)):
                continue
            self.row_game(n).evaluate(_row(tau, n), x)
        return out

    def _activated(self, tau, i, x, prof) -> bool:
        if i < len(prof.verdicts):
            return prof.verdicts[i]
        c = self.row_game(2 * i).evaluate(_row(tau, 2 * i), x)
        return self.activates(i, c, x)

    # depth mode -------------------------------------------------------
    def monitor(self):
        return CompositeMonitor(self)

    def interpreter(self):
        return CompositeInterpreter(self)

    def up_verdict(self, run: LassoRun):
        raise UnsupportedGame("composite plays are adjudicated row-wise; use evaluate")

    # legality ---------------------------------------------------------
    def legality_exact(self, tau: Strategy) -> LegalityReport:
        if not isinstance(tau, CompositeStrategy):
            raise UnsupportedGame("exact composite legality needs a row-schema strategy")
        if not tau.finite:
            raise UnsupportedGame("rows given by a rule: only sampled checks")
        bound = tau.bound
        for n in range(bound):
            rep = legality_check_exact(self.row_game(n), tau.row(n))
            if rep.legal:
                continue
            if n % 2 == 0 or not self.checks_inner(True):
                return LegalityReport("illegal", rep.witness, f"row {n}: {rep.reason}")
            if self.checks_inner(False):
                return LegalityReport("illegal", rep.witness, f"row {n}: {rep.reason}")
            if self.can_activate(tau, n // 2):
                raise UnsupportedGame(f"row {n} breaks the inner rules and its control row can activate")
        for n in (bound, bound + 1):  # defaults
            rep = legality_check_exact(self.row_game(n), tau.row(n))
            if not rep.legal:
                return LegalityReport("illegal", rep.witness, f"default row {n}: {rep.reason}")
        miss = self.uncovered(tau, range(max(1, (bound + 1) // 2)))
        if miss is not None:
            return LegalityReport("illegal", miss.take(len(miss.prefix) + len(miss.period)),
                                  f"no control row activates on {miss!r}")
        return LegalityReport("legal", reason=f"{bound} explicit rows checked, cover verified")

    def _control_product(self, tau: CompositeStrategy, indices: Sequence[int]):
        rows = [(tau.row(2 * i), self.controls.control(i).automaton) for i in indices]
        for s, _ in rows:
            if not isinstance(s, FiniteStrategy):
                raise UnsupportedGame("control rows must be finite-state for the exact cover check")
        dom = self.domain
        explicit = set(dom.alphabet)
        for s, _ in rows:
            explicit |= set(s.digits())
        alphabet = sorted(explicit) + [max(explicit) + 1]
        neutral = 1 << 20

        def succ(node):
            q, parts = node
            out = []
            for d in alphabet:
                new = []
                for (s, p, _), (strat, P) in zip(parts, rows):
                    s2, mv = strat.transition(s, d)
                    if isinstance(mv, Nat):
                        p2 = P.step(p, mv.value)
                        new.append((s2, p2, P.priority[p2]))
                    else:
                        new.append((s2, p, neutral))
                out.append((d, (dom.step(q, d), tuple(new))))
            return out

        init = (dom.initial, tuple((s.initial, P.initial, neutral) for s, P in rows))
        return explore(init, succ), rows

    def uncovered(self, tau: CompositeStrategy, indices: Sequence[int]) -> UPStream | None:
        """An input in the domain on which none of the given control rows activates."""
        g, rows = self._control_product(tau, list(indices))
        parity = [(lambda v: self.domain.priority[v[0]], True)]
        parity += [(lambda v, j=j: v[1][j][2], False) for j in range(len(rows))]
        lasso = find_cycle(g, parity)
        return None if lasso is None else UPStream(lasso.prefix, lasso.cycle)

    def can_activate(self, tau: CompositeStrategy, i: int) -> bool:
        g, _ = self._control_product(tau, [i])
        parity = [(lambda v: self.domain.priority[v[0]], True), (lambda v: v[1][0][2], True)]
        return find_cycle(g, parity) is not None

    def to_json(self) -> dict:
        return {"kind": self.kind, "inner": self.inner.to_json(), "controls": self.controls.to_json()}


def _row(tau: Strategy, n: int) -> Strategy:
    row = getattr(tau, "row", None)
    if row is None:
        raise UnsupportedGame("exact composite evaluation needs a row-schema strategy")
    return row(n)


class GFXiGame(CompositeGame):
    variant = "gfxi"


class TildeGame(CompositeGame):
    variant = "tilde"

    def checks_inner(self, activated: bool) -> bool:
        return activated


def make_gfxi(inner: GameSpec, controls: ControlSchedule) -> GFXiGame:
    if not inner.delayable:
        raise NotDelayable(f"{inner.name} is not delayable")
    return GFXiGame(f"G^{inner.name.removeprefix('G_')}_xi", "gfxi", inner, controls)


def make_tilde(inner: GameSpec, controls: ControlSchedule) -> TildeGame:
    if not inner.delayable:
        raise NotDelayable(f"{inner.name} is not delayable")
    return TildeGame(f"~G^{inner.name.removeprefix('G_')}_xi", "tilde", inner, controls)


# ---------------------------------------------------------------- depth-mode runtime


class _Rows:
    """Per-row monitors and interpreters driven by a composite game's routing."""

    def __init__(self, game: CompositeGame):
        self.game = game
        self.mon: dict[int, RuleMonitor] = {}
        self.itp: dict[int, Interpreter] = {}
        self.turn = 0
        self.x: list[int] = []

    def step(self, digit: int, move: Move):
        self.x.append(digit)
        for n, mv in self.game.route(self.turn, move):
            if n not in self.mon:
                g = self.game.row_game(n)
                self.mon[n], self.itp[n] = g.monitor(), g.interpreter()
            self.mon[n].step(digit, mv)
            self.itp[n].step(digit, mv)
        self.turn += 1

    def verdict(self, i: int) -> PrefixVerdict:
        if 2 * i not in self.itp:
            return PrefixVerdict.UNKNOWN
        return self.game.control_verdict(i, self.itp[2 * i].tentative(), self.x)

    def controls_started(self) -> list[int]:
        return sorted(n // 2 for n in self.itp if n % 2 == 0)


class CompositeMonitor(RuleMonitor):
    def __init__(self, game: CompositeGame):
        self.game = game
        self.rows = _Rows(game)
        self.state = 0
        self._status = "ok"

    def step(self, digit, move):
        if self._status != "ok":
            return self._status
        self.rows.step(digit, move)
        for n, m in sorted(self.rows.mon.items()):
            if not m.violated:
                continue
            if n % 2 == 1 and not self.game.checks_inner(True):
                continue
            if n % 2 == 1 and not self.game.checks_inner(False) and \
                    self.rows.verdict(n // 2) is not PrefixVerdict.ACCEPTED:
                continue
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
        return ["some control row activates", "every row follows its rules"]

    def row_verdicts(self) -> dict:
        return {str(i): self.rows.verdict(i).value for i in self.rows.controls_started()}


class CompositeInterpreter(Interpreter):
    def __init__(self, game: CompositeGame):
        self.game = game
        self.rows = _Rows(game)

    def step(self, digit, move):
        self.rows.step(digit, move)
        return self.tentative()

    def _candidate(self) -> tuple[int | None, bool]:
        sure = True
        for i in self.rows.controls_started():
            v = self.rows.verdict(i)
            if v is PrefixVerdict.REJECTED:
                continue
            return i, sure and v is PrefixVerdict.ACCEPTED
        return None, False

    def tentative(self):
        i, _ = self._candidate()
        if i is None or 2 * i + 1 not in self.rows.itp:
            return []
        return self.rows.itp[2 * i + 1].tentative()

    def committed_len(self):
        i, sure = self._candidate()
        if not sure or 2 * i + 1 not in self.rows.itp:
            return 0
        return self.rows.itp[2 * i + 1].committed_len()


# ---------------------------------------------------------------- piecewise specs


@dataclass
class Piece:
    strategy: Strategy
    region: ParityAutomaton | None = None
    witness: Strategy | None = None
    label: str = ""


@dataclass
class PiecewiseSpec:
    pieces: list[Piece]
    controls: ControlSchedule

    def region_index(self, x: UPStream) -> int | None:
        hits = [k for k, p in enumerate(self.pieces) if p.region is not None and p.region.accepts(x)]
        return hits[0] if hits else None

    def check_partition(self, samples: Sequence[UPStream]) -> None:
        for x in samples:
            hits = [k for k, p in enumerate(self.pieces) if p.region is not None and p.region.accepts(x)]
            if len(hits) > 1:
                raise InvalidParameter(f"regions {hits} overlap on {x!r}")

    def evaluate(self, inner: GameSpec, x: UPStream) -> UPStream:
        """Direct case split: the oracle for compiled strategies."""
        k = self.region_index(x)
        if k is None:
            raise InvalidParameter(f"{x!r} lies in no region")
        return inner.evaluate(self.pieces[k].strategy, x)


def _fits(region: ParityAutomaton, control: ControlSet) -> str | None:
    """How a region reduces to a gallery control set: 'safety', 'buchi' or None."""
    name = control.name
    if name == "Z":
        return "safety" if region.is_safety() else None
    if name == "INF0":
        return "buchi" if as_buchi(region) is not None else None
    return None


def _auto_witness(region: ParityAutomaton, control: ControlSet) -> Strategy:
    how = _fits(region, control)
    if how == "safety":
        return reduce_safety_to_Z(region)
    if how == "buchi":
        return reduce_buchi_to_INF0(as_buchi(region))
    raise UnsupportedRegionShape(f"no automatic reduction of {region!r} into {control.name}")


def _is_co_buchi(region: ParityAutomaton) -> bool:
    return normalize(region).priority_set <= {1, 2}


def piecewise_compile(spec: PiecewiseSpec, inner: GameSpec) -> CompositeStrategy:
    """Place each piece's reduction and strategy on a control/inner row pair.

    Pieces whose region reduces to a later control set take the next
    fitting index.  Co-Buchi regions that fit nowhere are cut into closed
    slices, each placed on its own row pair.
    """
    ctl = spec.controls
    rows: dict[int, Strategy] = {}
    used = -1
    sliced: list[Piece] = []
    for p in spec.pieces:
        if p.witness is not None:
            used += 1
            rows[2 * used], rows[2 * used + 1] = p.witness, p.strategy
            continue
        if p.region is None:
            raise UnsupportedRegionShape("a piece needs a region or a reduction witness")
        for i in range(used + 1, used + 1 + 2 * len(ctl.explicit) + 2):
            if _fits(p.region, ctl.control(i)):
                used = i
                rows[2 * i], rows[2 * i + 1] = _auto_witness(p.region, ctl.control(i)), p.strategy
                break
        else:
            if _is_co_buchi(p.region) and not p.region.is_safety():
                sliced.append(p)
                continue
            raise UnsupportedRegionShape(f"region {p.region!r} fits no control set of the schedule")
    if not sliced:
        return CompositeStrategy(rows, ctl, name="piecewise")

    base = used + 1
    slots: dict[int, tuple[Piece, int]] = {}
    cursor = [base]
    made = [0]  # slices placed so far, round robin over the sliced pieces

    def fill_to(i: int):
        while cursor[0] <= i:
            j = cursor[0]
            cursor[0] += 1
            p = sliced[made[0] % len(sliced)]
            n = made[0] // len(sliced)
            slot = co_buchi_slice(p.region, n)
            if _fits(slot, ctl.control(j)) is None:
                continue
            slots[j] = (p, n)
            made[0] += 1

    cache: dict[int, Strategy] = {}

    def row_fn(r: int) -> Strategy | None:
        i = r // 2
        if i < base:
            return None
        fill_to(i)
        if i not in slots:
            return None
        if r not in cache:
            p, n = slots[i]
            cache[r] = _auto_witness(co_buchi_slice(p.region, n), ctl.control(i)) if r % 2 == 0 else p.strategy
        return cache[r]

    return CompositeStrategy(rows, ctl, row_fn=row_fn, name="piecewise+slices")


@dataclass
class Decompiled:
    """Regions ``F_n`` (least activated control row) and piece strategies."""

    game: CompositeGame
    strategy: Strategy
    max_rows: int = DEFAULT_MAX_ROWS

    def region(self, x: UPStream) -> int:
        prof = self.game.activation_profile(self.strategy, x, self.max_rows)
        if prof.least is None:
            raise NoActivationWithinBound(prof.bound)
        return prof.least

    def in_region(self, n: int, x: UPStream) -> bool:
        return self.region(x) == n

    def piece(self, n: int) -> Strategy:
        return _row(self.strategy, 2 * n + 1)

    def evaluate(self, x: UPStream) -> UPStream:
        return self.game.inner.evaluate(self.piece(self.region(x)), x)


def piecewise_decompile(tau: Strategy, inner: GameSpec, controls: ControlSchedule,
                        max_rows: int = DEFAULT_MAX_ROWS, tilde: bool = False) -> Decompiled:
    game = (make_tilde if tilde else make_gfxi)(inner, controls)
    return Decompiled(game, tau, max_rows)


def recompile(dec: Decompiled, indices: Sequence[int]) -> CompositeStrategy:
    """Rebuild a strategy from decompiled pieces, keeping the control rows."""
    tau = dec.strategy
    rows = {}
    for i in indices:
        rows[2 * i], rows[2 * i + 1] = _row(tau, 2 * i), dec.piece(i)
    row_fn = getattr(tau, "row_fn", None)
    return CompositeStrategy(rows, dec.game.controls, row_fn=row_fn, name="recompiled")


# ---------------------------------------------------------------- control swaps


def control_swap(tau_hat: CompositeStrategy, old: ControlSchedule, new: ControlSchedule,
                 index_map: Callable[[int], int] | Mapping[int, int],
                 reductions: Callable[[int], Strategy] | Mapping[int, Strategy],
                 defaults: Mapping[int, UPStream] | None = None,
                 samples: Sequence[UPStream] = (), check_rows: int = 4) -> CompositeStrategy:
    """Move control row ``k`` of ``tau_hat`` to row ``n_k`` of a strategy for
    the new schedule, composing it with a reduction of ``old[k]`` into ``new[n_k]``."""
    nk = index_map if callable(index_map) else index_map.__getitem__
    red = reductions if callable(reductions) else reductions.__getitem__
    W = make_base_game("W")
    defaults = dict(defaults or {})
    for n, y in defaults.items():
        if new.control(n).automaton.accepts(y):
            raise WitnessFailure(f"default stream for row {n} lies in the control set", y)
    prev = -1
    for k in range(check_rows):
        n = nk(k)
        if n <= prev:
            raise InvalidParameter("the index map must be strictly increasing")
        prev = n
        sigma = red(k)
        for c in samples:
            before = old.control(k).automaton.accepts(c)
            after = new.control(n).automaton.accepts(W.evaluate(sigma, c))
            if before != after:
                raise WitnessFailure(f"reduction for control row {k} fails", c)

    def inverse(n: int) -> int | None:
        for k in count():
            m = nk(k)
            if m == n:
                return k
            if m > n:
                return None

    cache: dict[int, Strategy] = {}

    def row_fn(r: int) -> Strategy | None:
        if r in cache:
            return cache[r]
        k = inverse(r // 2)
        if k is None:
            if r % 2 == 0 and r // 2 in defaults:
                s = const_strategy(defaults[r // 2])
            else:
                return None
        elif r % 2 == 0:
            s = compose(red(k), tau_hat.row(2 * k), W)
        else:
            s = tau_hat.row(2 * k + 1)
        cache[r] = s
        return s

    return CompositeStrategy({}, new, row_fn=row_fn, name="swapped")


# ---------------------------------------------------------------- player I transfers


class TransferredI(StrategyI):
    """I's strategy in G_L built from ``rho`` in a composite game: ``rho`` is
    run against a simulated II whose composite move at each turn is given by
    ``ii_move(turn, xs, ys)``; I copies ``rho``'s digits."""

    def __init__(self, rho: StrategyI, ii_move: Callable[[int, list[int], list[int]], Move], name: str = "transfer"):
        self.rho = rho
        self.ii_move = ii_move
        self.name = name

    def runner(self) -> RunnerI:
        return _TransferRunner(self)


class _TransferRunner(RunnerI):
    def __init__(self, t: TransferredI):
        self.t = t
        self.inner = t.rho.runner()
        self.xs: list[int] = []
        self.ys: list[int] = []

    def first(self):
        d = self.inner.first()
        self.xs.append(d)
        return d

    def next(self, move):
        if not isinstance(move, Nat):
            raise RuleViolation(f"II played {move!r} in the Lipschitz game")
        self.ys.append(move.value)
        k = len(self.ys) - 1
        d = self.inner.next(self.t.ii_move(k, self.xs, self.ys))
        self.xs.append(d)
        return d

    def determined_future(self):
        return self.inner.determined_future()


def playerI_transfer(rho: StrategyI, z: UPStream, game: CompositeGame) -> TransferredI:
    """I's strategy for G_L(A, B) from a winning ``rho`` in the composite game:
    control rows enumerate ``z`` (inside ``P_0``), row 1 relays II's play,
    further inner rows copy I's own digits."""
    if not game.controls.control(0).automaton.accepts(z):
        raise BadAnchor(f"{z!r} is not in the first control set")

    def ii_move(k, xs, ys):
        n, m = unpair(k)
        if n % 2 == 0:
            return Nat(z.at(m))
        if n == 1:
            return Nat(ys[m])
        return Nat(xs[m])

    return TransferredI(rho, ii_move, name=f"transfer[{game.kind}]")


__all__ = [
    "ControlSchedule",
    "CompositeStrategy",
    "CompositeGame",
    "GFXiGame",
    "TildeGame",
    "ActivationProfile",
    "Piece",
    "PiecewiseSpec",
    "Decompiled",
    "TransferredI",
    "make_gfxi",
    "make_tilde",
    "piecewise_compile",
    "piecewise_decompile",
    "recompile",
    "control_swap",
    "playerI_transfer",
    "z_schedule",
    "inf0_schedule",
    "DEFAULT_MAX_ROWS",
]
