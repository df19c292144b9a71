"""Strategy evaluation, legality checking and the strategy combinators:
tensor and projection, composition, constants and identity, Lipschitz
compilation, k-Lip transfers, delays and pass elimination for the eraser game.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ._graph import explore, find_cycle, find_nonpositive_cycle
from .errors import BudgetViolation, DomainViolation, NotFiniteState, RuleViolation, UnsupportedGame
from .games import (
    GameSpec,
    LassoRun,
    RowMove,
    is_violated,
    make_base_game,
    run_to_depth,
    strategy_lasso,
)
from .machines import (
    ECHO,
    DelayTransducer,
    FiniteStrategy,
    HistoryStrategy,
    Machine,
    MealyStrategy,
    MooreStrategyI,
    MachineI,
    Runner,
    Strategy,
    StrategyI,
)
from .moves import ERASE, PASS, Move, Nat
from .streams import StreamView, UPStream, unpair


# ---------------------------------------------------------------- evaluation


def eval_function(G: GameSpec, tau: Strategy, x, mode="exact", max_rows: int | None = None):
    """``f_tau(x)``: an exact UP stream, or the depth-``d`` tentative output when ``mode`` is an int."""
    if mode == "exact":
        if not isinstance(x, UPStream):
            raise TypeError("exact evaluation needs an ultimately periodic input")
        if not G.domain.accepts(x):
            raise DomainViolation(f"{x!r} is outside the domain of {G.name}")
        return G.evaluate(tau, x, max_rows)
    depth = int(mode)
    res = run_to_depth(G, x, tau, depth)
    if res.violated:
        raise RuleViolation(res.status, witness=res.run)
    return res.tentative


# ---------------------------------------------------------------- legality


@dataclass
class LegalityReport:
    verdict: str  # "legal" | "illegal" | "unknown"
    witness: object = None
    reason: str = ""
    depth: int | None = None

    @property
    def legal(self) -> bool:
        return self.verdict == "legal"

    @property
    def illegal(self) -> bool:
        return self.verdict == "illegal"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "reason": self.reason}
        if isinstance(self.witness, LassoRun):
            out["witness"] = self.witness.to_json()
        elif self.witness is not None:
            out["witness"] = list(self.witness)
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def _labels_to_pairs(labels) -> tuple:
    return tuple((d, m) for d, m in labels)


def legality_check_exact(G: GameSpec, tau: Strategy) -> LegalityReport:
    """Search the product of ``tau``, the rule automaton and the domain for an illegal play."""
    hook = getattr(G, "legality_exact", None)
    if hook is not None:
        return hook(tau)
    if not isinstance(tau, FiniteStrategy):
        raise NotFiniteState(f"{tau!r} is not finite-state; use the sampled check")
    rules, dom = G.rules, G.domain
    explicit = set(tau.digits()) | {d for (_, d) in dom.edges}
    alphabet = sorted(explicit) + [max(explicit, default=-1) + 1]

    def succ(node):
        s, r, q = node
        if is_violated(r):
            return []
        out = []
        for d in alphabet:
            s2, mv = tau.transition(s, d)
            out.append(((d, mv), (s2, rules.step(r, mv), dom.step(q, d))))
        return out

    g = explore((tau.initial, rules.initial, dom.initial), succ)
    for node in g.nodes:
        if is_violated(node[1]) and node[2] in dom.live:
            labels = g.path_to(node)
            return LegalityReport("illegal", [d for d, _ in labels], node[1].reason)
    dom_parity = [(lambda v: dom.priority[v[2]], True)]
    for ob in rules.obligations:
        lasso = None
        if ob.kind == "inf":
            lasso = find_cycle(g, dom_parity, edge_ok=lambda lab, p=ob.pred: not p(lab[1]))
        elif ob.kind == "fin":
            def need(edges, p=ob.pred):
                hit = [e for e in edges if p(e[1][1])]
                return hit[:1] or None
            lasso = find_cycle(g, dom_parity, scc_checks=[need])
        elif ob.kind == "one_row":
            def two_rows(edges):
                by_row = {}
                for e in edges:
                    m = e[1][1]
                    if isinstance(m, RowMove) and isinstance(m.inner, Nat):
                        by_row.setdefault(m.row, e)
                return list(by_row.values())[:2] if len(by_row) >= 2 else None
            lasso = find_cycle(g, dom_parity, scc_checks=[two_rows])
        elif ob.kind == "drift":
            if not dom.is_universal():
                raise UnsupportedGame("drift obligations are checked exactly only on the full domain")
            lasso = find_nonpositive_cycle(g, lambda lab, w=ob.weight: w(lab[1]))
        if lasso is not None:
            run = LassoRun(_labels_to_pairs(lasso.prefix), _labels_to_pairs(lasso.cycle))
            return LegalityReport("illegal", run, f"obligation failed: {ob.tag}")
    return LegalityReport("legal", reason=f"{len(g.nodes)} product states explored")


def legality_check_sampled(G: GameSpec, tau: Strategy, samples: Sequence, depth: int = 64,
                           max_rows: int | None = None) -> LegalityReport:
    """Refute legality on sample inputs; never certifies legality."""
    for x in samples:
        if isinstance(x, UPStream) and not G.domain.accepts(x):
            continue
        res = run_to_depth(G, x, tau, depth)
        if res.violated:
            return LegalityReport("illegal", [d for d, _ in res.run], res.status)
        if isinstance(x, UPStream):
            try:
                G.evaluate(tau, x, max_rows)
            except RuleViolation as exc:
                return LegalityReport("illegal", exc.witness if exc.witness is not None else list(x.take(depth)),
                                      exc.reason)
            except NotFiniteState:
                pass
    return LegalityReport("unknown", reason="no violation found on samples", depth=depth)


def legality_check(G: GameSpec, tau: Strategy, samples: Sequence = (), depth: int = 64) -> LegalityReport:
    try:
        return legality_check_exact(G, tau)
    except (NotFiniteState, UnsupportedGame):
        return legality_check_sampled(G, tau, samples, depth)


# ---------------------------------------------------------------- basic strategies


def const_strategy(y: UPStream) -> MealyStrategy:
    """Ignores I and enumerates ``y``; legal in every digit game."""
    n = len(y.prefix) + len(y.period)
    default = {}
    for i in range(n):
        nxt = i + 1 if i + 1 < n else len(y.prefix)
        default[i] = (nxt, Nat(y.at(i)))
    return MealyStrategy(n, 0, {}, default, name=f"const {y!r}")


def id_strategy() -> MealyStrategy:
    return MealyStrategy(1, 0, {}, {0: (0, ECHO)}, name="id")


def pass_strategy() -> MealyStrategy:
    return MealyStrategy(1, 0, {}, {0: (0, PASS)}, name="always-pass")


def mealy(fn: Callable, states: int, digits: Sequence[int], initial: int = 0, name: str = "") -> MealyStrategy:
    """Tabulate ``fn(state, digit) -> (state, move)`` on explicit digits; ``digit=None`` gives the otherwise edge."""
    table = {(s, d): fn(s, d) for s in range(states) for d in digits}
    default = {s: fn(s, None) for s in range(states)}
    return MealyStrategy(states, initial, table, default, name=name)


# ---------------------------------------------------------------- tensor / projection


class TensorStrategy(HistoryStrategy):
    """``tau(s) = tau_n(s | m+1)`` where ``len(s) = pair(n, m) + 1``."""

    def __init__(self, rows: Callable[[int], Strategy] | Sequence[Strategy], name: str = "tensor"):
        self._rows = rows
        self._cache: dict[int, Strategy] = {}
        self.name = name

    def row(self, n: int) -> Strategy:
        if n not in self._cache:
            self._cache[n] = self._rows(n) if callable(self._rows) else self._rows[n]
        return self._cache[n]

    def runner(self) -> Runner:
        return _TensorRunner(self)

    def respond(self, prefix):
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv


class _TensorRunner(Runner):
    def __init__(self, tau: TensorStrategy):
        self.tau = tau
        self.seen: list[int] = []
        self.rows: dict[int, Runner] = {}

    def feed(self, digit):
        k = len(self.seen)
        self.seen.append(digit)
        n, m = unpair(k)
        if n not in self.rows:
            self.rows[n] = self.tau.row(n).runner()
        return self.rows[n].feed(self.seen[m])


def tensor_strategies(rows: Callable[[int], Strategy] | Sequence[Strategy]) -> TensorStrategy:
    return TensorStrategy(rows)


class ProjectedStrategy(HistoryStrategy):
    """``pi_n(tau)``: tau's move at row-``n`` turns, PASS elsewhere."""

    def __init__(self, tau: Strategy, n: int):
        self.tau = tau
        self.n = n
        self.name = f"pi_{n}"

    def runner(self):
        return _ProjectedRunner(self.tau.runner(), self.n)

    def respond(self, prefix):
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv

    def exact_output(self, game: GameSpec, x: UPStream):
        row = getattr(self.tau, "row", None)
        if row is None:
            return None
        inner = game.base if game.kind == "p_close" and game.base is not None else game
        return inner.evaluate(row(self.n), x)


class _ProjectedRunner(Runner):
    def __init__(self, inner: Runner, n: int):
        self.inner = inner
        self.n = n
        self.k = 0

    def feed(self, digit):
        mv = self.inner.feed(digit)
        n, _ = unpair(self.k)
        self.k += 1
        return mv if n == self.n else PASS


def project_strategy(tau: Strategy, n: int) -> ProjectedStrategy:
    return ProjectedStrategy(tau, n)


# ---------------------------------------------------------------- composition


class ComposedStrategy(FiniteStrategy):
    """``tau1 * tau0``: tau0's digits are fed to tau1 as they appear; PASS while tau1 starves."""

    def __init__(self, tau1: Strategy, tau0: Strategy):
        self.tau1, self.tau0 = tau1, tau0
        self.initial = (tau0.initial, tau1.initial)
        self.name = f"({getattr(tau1, 'name', tau1)} * {getattr(tau0, 'name', tau0)})"

    def transition(self, state, digit):
        s0, s1 = state
        s0, m0 = self.tau0.transition(s0, digit)
        if not isinstance(m0, Nat):
            return (s0, s1), PASS
        s1, m1 = self.tau1.transition(s1, m0.value)
        return (s0, s1), m1

    def digits(self):
        return self.tau0.digits()

    def __repr__(self):
        return f"<ComposedStrategy {self.name}>"


class _ComposedHistory(HistoryStrategy):
    def __init__(self, tau1: Strategy, tau0: Strategy, mid: GameSpec):
        self.tau1, self.tau0, self.mid = tau1, tau0, mid
        self.name = "compose"

    def runner(self):
        return _ComposedRunner(self.tau1.runner(), self.tau0.runner())

    def respond(self, prefix):
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv

    def exact_output(self, game: GameSpec, x: UPStream):
        return game.evaluate(self.tau1, self.mid.evaluate(self.tau0, x))


class _ComposedRunner(Runner):
    def __init__(self, r1, r0):
        self.r1, self.r0 = r1, r0

    def feed(self, digit):
        m0 = self.r0.feed(digit)
        if not isinstance(m0, Nat):
            return PASS
        return self.r1.feed(m0.value)


def compose(tau1: Strategy, tau0: Strategy, mid: GameSpec | None = None) -> Strategy:
    """A strategy for the pass-closed game with ``f = f_tau1 . f_tau0``."""
    if isinstance(tau0, FiniteStrategy) and isinstance(tau1, FiniteStrategy):
        return ComposedStrategy(tau1, tau0)
    return _ComposedHistory(tau1, tau0, mid or make_base_game("W"))


# ---------------------------------------------------------------- Lipschitz compilation


def lipschitz_compile(T: DelayTransducer, k: int | None = None) -> Machine:
    """PASS for ``k`` turns, then emit the transducer's output one digit per turn."""
    k = T.budget if k is None else k
    if not T.check_budget() or T.budget > k:
        raise BudgetViolation(f"transducer {T.name!r} does not meet delay budget {k}")

    def step(state, digit):
        count, s, buf = state
        s, outs = T.step(s, digit)
        buf = buf + outs
        if count < k:
            return (count + 1, s, buf), PASS
        if not buf:
            raise BudgetViolation(f"transducer {T.name!r} starved at a committed turn")
        return (count, s, buf[1:]), Nat(buf[0])

    return Machine((0, T.initial, ()), step, T.digits(), name=f"lip[{T.name}, k={k}]")


def delayed_copy(k: int) -> Machine:
    """PASS ``k`` times, then replay I's digits ``k`` turns late."""
    from .machines import identity_transducer

    return lipschitz_compile(identity_transducer(), k)


def delay_strategy(tau: Strategy, n: int) -> Strategy:
    """Strategy for ``delay(G, n)`` with the same induced function as ``tau`` in ``G``."""
    if n == 0:
        return tau
    if isinstance(tau, FiniteStrategy):
        def step(state, digit):
            count, s, buf = state
            buf = buf + (digit,)
            if count < n:
                return (count + 1, s, buf), PASS
            s, mv = tau.transition(s, buf[0])
            return (count, s, buf[1:]), mv

        return Machine((0, tau.initial, ()), step, tau.digits(), name=f"delay{n}")

    def respond(prefix):
        if len(prefix) <= n:
            return PASS
        return tau.respond(prefix[: len(prefix) - n])

    return HistoryStrategy(respond, name=f"delay{n}")


# ---------------------------------------------------------------- k-Lip transfers


class _MappedI(MooreStrategyI):
    """I-strategy reading II's moves through ``fn`` before passing them on."""

    def __init__(self, sigma: MooreStrategyI, fn: Callable[[int, Move], Move], cap: int):
        self.sigma = sigma
        self.fn = fn
        self.cap = cap  # fn ignores the turn from here on
        self.initial = (0, sigma.initial)

    def output(self, state):
        return self.sigma.output(state[1])

    def transition(self, state, move):
        t, s = state
        t2 = min(t + 1, self.cap)
        if move is None:
            return (t2, self.sigma.transition(s, None))
        return (t2, self.sigma.transition(s, self.fn(t, move)))

    def reacts(self, state):
        return self.sigma.reacts(state[1])


class _HistoryMappedI(StrategyI):
    def __init__(self, sigma: StrategyI, fn):
        self.sigma, self.fn = sigma, fn

    def runner(self):
        from .machines import HistoryStrategyI

        fn, sigma = self.fn, self.sigma
        return HistoryStrategyI(lambda ms: sigma.respond([fn(t, m) for t, m in enumerate(ms)])).runner()


def klip_transfer_I(sigma: StrategyI, k: int) -> StrategyI:
    """From I's strategy in ``G_L(A, 0^k B)`` to one in ``G_{k-Lip}(A, B)``:
    II's k opening passes are read as the zeros it would have played."""
    if k == 0:
        return sigma

    def fn(t, move):
        return Nat(0) if t < k and move is PASS else move

    if isinstance(sigma, MooreStrategyI):
        return _MappedI(sigma, fn, k)
    return _HistoryMappedI(sigma, fn)


def klip_transfer_II(tau: Strategy, k: int, y_out: UPStream) -> Strategy:
    """From II's strategy in ``G_L(A, 0^k B)`` to one in ``G_{k-Lip}(A, B)``.

    Pass for ``k`` turns while checking that tau opened with ``k`` zeros;
    then follow tau, or enumerate ``y_out`` (a stream outside ``B``) if the
    check failed.
    """
    if k == 0:
        return tau
    ylen = len(y_out.prefix) + len(y_out.period)

    if isinstance(tau, FiniteStrategy):
        def step(state, digit):
            t, s, ok = state
            if ok is None:  # fallback: position in y_out
                pos = s
                nxt = pos + 1 if pos + 1 < ylen else len(y_out.prefix)
                return (t, nxt, None), Nat(y_out.at(pos))
            s, mv = tau.transition(s, digit)
            if t < k:
                ok = ok and mv == Nat(0)
                if t + 1 == k and not ok:
                    return (k, 0, None), PASS
                return (t + 1, s, ok), PASS
            return (t, s, ok), mv

        return Machine((0, tau.initial, True), step, tau.digits(), name=f"klipII[{k}]")

    def respond(prefix):
        if len(prefix) <= k:
            return PASS
        opening = [tau.respond(prefix[: i + 1]) for i in range(k)]
        if all(m == Nat(0) for m in opening):
            return tau.respond(prefix)
        return Nat(y_out.at(len(prefix) - k - 1))

    return HistoryStrategy(respond, name=f"klipII[{k}]")


# ---------------------------------------------------------------- eraser pass elimination


def _expand(moves: Sequence[Move]) -> list[Move]:
    out: list[Move] = []
    for m in moves:
        out += [Nat(0), ERASE] if m is PASS else [m]
    return out


class PassFreeEraser(HistoryStrategy):
    """Each PASS of ``tau`` becomes the block ``0, ERASE``; I's digits wait in a queue."""

    def __init__(self, tau: Strategy):
        self.tau = tau
        self.name = "p-eliminated"

    def runner(self):
        return _PassFreeRunner(self.tau.runner())

    def respond(self, prefix):
        run = self.runner()
        for d in prefix:
            mv = run.feed(d)
        return mv

    def exact_output(self, game: GameSpec, x: UPStream):
        lasso = strategy_lasso(self.tau, x)
        pre, per = lasso.moves()
        epre, eper = _expand(pre), _expand(per)
        # the moves are played in order; pad I's side with x's digits
        xs = x.take(len(epre))
        period_x = [x.at(len(epre) + i) for i in range(len(eper))]
        run = LassoRun(tuple(zip(xs, epre)), tuple(zip(period_x, eper)))
        return game.up_output(run)


class _PassFreeRunner(Runner):
    def __init__(self, inner: Runner):
        self.inner = inner
        self.waiting: list[int] = []
        self.queue: list[Move] = []

    def feed(self, digit):
        self.waiting.append(digit)
        if not self.queue:
            self.queue = _expand([self.inner.feed(self.waiting.pop(0))])
        return self.queue.pop(0)


def _ever_passes(tau: FiniteStrategy) -> bool:
    alphabet = sorted(tau.digits()) + [max(tau.digits(), default=-1) + 1]
    g = explore(tau.initial, lambda s: [(d, tau.transition(s, d)[0]) for d in alphabet])
    return any(tau.transition(s, d)[1] is PASS for s in g.nodes for d in alphabet)


def p_eliminate_eraser(tau: Strategy) -> Strategy:
    """Strategy for the eraser game inducing the same function as ``tau`` in its pass-closure."""
    if isinstance(tau, FiniteStrategy) and not _ever_passes(tau):
        return tau
    return PassFreeEraser(tau)


# ---------------------------------------------------------------- player I against II


def play_lasso_I(sigma: StrategyI, tau: Strategy, max_turns: int = 10_000):
    """Play I's strategy against II's until I's future is fixed.

    Returns I's real as a UP stream, or ``None`` if I never commits within
    ``max_turns``.
    """
    run_i = sigma.runner()
    run_ii = tau.runner()
    digits: list[int] = []
    d = run_i.first()
    for _ in range(max_turns):
        digits.append(d)
        mv = run_ii.feed(d)
        future = run_i.determined_future()
        d = run_i.next(mv)
        if future is not None:
            return UPStream(digits + list(future.prefix), future.period)
    return None


def play_against_stream(sigma: StrategyI, y: UPStream, max_turns: int = 10_000) -> UPStream | None:
    """I's real when II's moves are the digits of ``y``."""
    return play_lasso_I(sigma, _stream_player(y), max_turns)


def _stream_player(y: UPStream) -> MealyStrategy:
    return const_strategy(y)


def const_I(x: UPStream) -> MooreStrategyI:
    from .machines import const_strategy_I

    return const_strategy_I(x)


__all__ = [
    "LegalityReport",
    "TensorStrategy",
    "ProjectedStrategy",
    "ComposedStrategy",
    "PassFreeEraser",
    "MachineI",
    "StreamView",
    "eval_function",
    "legality_check_exact",
    "legality_check_sampled",
    "legality_check",
    "const_strategy",
    "id_strategy",
    "pass_strategy",
    "mealy",
    "tensor_strategies",
    "project_strategy",
    "compose",
    "lipschitz_compile",
    "delayed_copy",
    "delay_strategy",
    "klip_transfer_I",
    "klip_transfer_II",
    "p_eliminate_eraser",
    "play_lasso_I",
    "play_against_stream",
]
