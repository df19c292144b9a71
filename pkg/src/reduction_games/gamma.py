"""Games whose rows carry codes of omega-regular sets: G_Gamma and the
piecewise G^F_Gamma.

A code is a stream ``[L, d_1, ..., d_L, 0, 0, ...]``: the first digit is the
length of an automaton serialization, the rest is ignored.  Malformed codes
name the empty set, so every stream decodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm
from typing import Callable, Sequence

from .composite import CompositeGame, ControlSchedule, TransferredI, _Rows, _row, z_schedule
from .errors import BadAnchor, IncoherentSpec, InvalidParameter, NoWitnessWithinBound, UnsupportedGame
from .games import GameSpec, Interpreter, RuleMonitor, make_base_game
from .machines import Strategy, StrategyI
from .moves import Nat
from .omega import ParityAutomaton, PrefixVerdict, empty_set, full_space
from .strategies import LegalityReport, TensorStrategy, const_strategy, legality_check_exact
from .streams import UPStream, pair, unpair

DEFAULT_MAX_M = 32


class CodeDecoder:
    """Self-delimiting automaton codes."""

    def encode(self, A: ParityAutomaton) -> UPStream:
        body = A.serialize()
        return UPStream([len(body), *body], (0,))

    def decode_prefix(self, digits: Sequence[int]) -> ParityAutomaton | None:
        """The coded set once the code is complete, else None."""
        if not digits or len(digits) < digits[0] + 1:
            return None
        A = ParityAutomaton.deserialize(digits[1 : digits[0] + 1])
        return A if A is not None else empty_set()

    def decode(self, y: UPStream) -> ParityAutomaton:
        return self.decode_prefix(y.take(y.at(0) + 1))

    def to_json(self) -> dict:
        return {"format": "length-prefixed"}


DECODER = CodeDecoder()
C_BAIRE = DECODER.encode(full_space())
C_EMPTY = DECODER.encode(empty_set())


def skip(n: int, Q: ParityAutomaton) -> ParityAutomaton:
    """{x : shift^n(x) in Q}."""
    if n == 0:
        return Q
    edges = {(s + n, d): t + n for (s, d), t in Q.edges.items()}
    default = [i + 1 for i in range(n)] + [t + n for t in Q.default]
    default[n - 1] = Q.initial + n
    return ParityAutomaton(Q.n_states + n, 0, edges, default, [0] * n + Q.priority, name=f"shift{n}({Q.name})")


# ---------------------------------------------------------------- G_Gamma


class GammaGame(GameSpec):
    """Rows ``pair(n, m)`` are Wadge rows producing codes; ``z(n)`` is the
    least ``m`` whose coded set contains I's real."""

    def __init__(self, decoder: CodeDecoder = DECODER, max_m: int = DEFAULT_MAX_M, domain=None):
        W = make_base_game("W")
        super().__init__("G_Gamma", "ggamma", W.rules, W.interp, domain or full_space(),
                         p_closed=True, delayable=True)
        self.W = W
        self.decoder = decoder
        self.max_m = max_m

    def row_game(self, r: int) -> GameSpec:
        return self.W

    def route(self, turn, move):
        return [(unpair(turn)[0], move)]

    def coded_set(self, tau: Strategy, n: int, m: int, x: UPStream) -> ParityAutomaton:
        return self.decoder.decode(self.W.evaluate(_row(tau, pair(n, m)), x))

    def digit(self, tau: Strategy, n: int, x: UPStream, max_m: int | None = None) -> int:
        bound = self.max_m if max_m is None else max_m
        for m in range(bound + 1):
            if self.coded_set(tau, n, m, x).accepts(x):
                return m
        raise NoWitnessWithinBound(n, bound)

    def evaluate_prefix(self, tau: Strategy, x: UPStream, length: int, max_m: int | None = None) -> list[int]:
        return [self.digit(tau, n, x, max_m) for n in range(length)]

    def evaluate(self, tau: Strategy, x: UPStream, max_rows: int | None = None) -> UPStream:
        window = getattr(tau, "output_window", None)
        if window is None:
            raise UnsupportedGame("exact G_Gamma output needs a strategy with a periodic family")
        start, period = window(x)
        z = self.evaluate_prefix(tau, x, start + period)
        return UPStream(z[:start], z[start:])

    def monitor(self):
        return GammaMonitor(self)

    def interpreter(self):
        return GammaInterpreter(self)

    def legality_exact(self, tau: Strategy) -> LegalityReport:
        raise UnsupportedGame("the rule 'every n has a witness m' is checked on samples only")

    def to_json(self) -> dict:
        return {"kind": "ggamma", "max_m": self.max_m}


class GammaMonitor(RuleMonitor):
    def __init__(self, game: GammaGame):
        self.game = game
        self.rows = _Rows(game)
        self._status = "ok"

    def step(self, digit, move):
        if self._status == "ok":
            self.rows.step(digit, move)
            for r, m in sorted(self.rows.mon.items()):
                if m.violated:
                    self._status = f"violated: row {r}: {m.status[len('violated: '):]}"
                    break
        return self._status

    @property
    def status(self):
        return self._status

    @property
    def violated(self):
        return self._status != "ok"

    def pending_obligations(self):
        return ["every row is a legal Wadge play", "every n has a witness m"]


class GammaInterpreter(Interpreter):
    """Digits ``z(n)`` already fixed by complete codes and I's prefix."""

    def __init__(self, game: GammaGame):
        self.game = game
        self.rows = _Rows(game)

    def step(self, digit, move):
        self.rows.step(digit, move)
        return self.tentative()

    def _verdict(self, r: int) -> PrefixVerdict:
        if r not in self.rows.itp:
            return PrefixVerdict.UNKNOWN
        A = self.game.decoder.decode_prefix(self.rows.itp[r].tentative())
        return PrefixVerdict.UNKNOWN if A is None else A.verdict(self.rows.x)

    def tentative(self):
        z = []
        for n in count_up():
            for m in range(self.game.max_m + 1):
                v = self._verdict(pair(n, m))
                if v is PrefixVerdict.ACCEPTED:
                    z.append(m)
                    break
                if v is PrefixVerdict.UNKNOWN:
                    return z
            else:
                return z
        return z

    def committed_len(self):
        return len(self.tentative())


def count_up():
    n = 0
    while True:
        yield n
        n += 1


def make_ggamma(decoder: CodeDecoder = DECODER, max_m: int = DEFAULT_MAX_M) -> GammaGame:
    return GammaGame(decoder, max_m)


# ---------------------------------------------------------------- G^F_Gamma


class GFGammaGame(CompositeGame):
    """Row ``2i`` codes a set ``D_i``; row ``2i + 1`` replays the inner game;
    row ``2i`` activates when I's real lies in ``D_i``."""

    variant = "gfgamma"

    def __init__(self, inner: GameSpec, decoder: CodeDecoder = DECODER):
        super().__init__(f"G^{inner.name.removeprefix('G_')}_Gamma", "gfgamma", inner, z_schedule())
        self.decoder = decoder

    def activates(self, i, c, x):
        return self.decoder.decode(c).accepts(x)

    def control_verdict(self, i, prefix, x_prefix):
        A = self.decoder.decode_prefix(prefix)
        return PrefixVerdict.UNKNOWN if A is None else A.verdict(x_prefix)

    def legality_exact(self, tau):
        bound = getattr(tau, "bound", None)
        if bound is None:
            raise UnsupportedGame("exact legality needs a row-schema strategy")
        for n in range(bound):
            rep = legality_check_exact(self.row_game(n), tau.row(n))
            if not rep.legal:
                return LegalityReport("illegal", rep.witness, f"row {n}: {rep.reason}")
        raise UnsupportedGame("the cover condition for coded rows is checked on samples only")

    def to_json(self):
        return {"kind": "gfgamma", "inner": self.inner.to_json()}


def make_gfgamma(inner: GameSpec, decoder: CodeDecoder = DECODER) -> GFGammaGame:
    from .errors import NotDelayable

    if not inner.delayable:
        raise NotDelayable(f"{inner.name} is not delayable")
    return GFGammaGame(inner, decoder)


# ---------------------------------------------------------------- compile / decompile


@dataclass
class UniformFamily:
    """``S_{n,m} = {x : shift^n(x) in Q(phase(n), m)}``.

    ``phase(n)`` is ``phases[n]`` below ``len(phases)`` and then cycles
    through ``phases[start:]``.
    """

    q: Callable[[int, int], ParityAutomaton]
    phases: Sequence[int] = (0,)
    start: int = 0
    name: str = "family"

    def phase(self, n: int) -> int:
        if n < len(self.phases):
            return self.phases[n]
        tail = self.phases[self.start :]
        return tail[(n - self.start) % len(tail)]

    @property
    def phase_period(self) -> int:
        return len(self.phases) - self.start

    def member(self, n: int, m: int) -> ParityAutomaton:
        return skip(n, self.q(self.phase(n), m))


def identity_family() -> UniformFamily:
    """``S_{n,m} = {x : x(n) = m}``."""
    from .omega import digit_equals

    return UniformFamily(lambda p, m: digit_equals(0, m), name="identity")


def constant_family(c: UPStream) -> UniformFamily:
    """Full space at ``(n, c(n))``, empty elsewhere."""
    phases = list(range(len(c.prefix) + len(c.period)))
    return UniformFamily(lambda p, m: full_space() if c.at(p) == m else empty_set(), phases, len(c.prefix),
                         name=f"const{c!r}")


class GammaStrategy(TensorStrategy):
    """Row ``pair(n, m)`` enumerates the code of ``S_{n,m}``."""

    def __init__(self, family: UniformFamily, decoder: CodeDecoder = DECODER):
        self.family = family
        self.decoder = decoder
        super().__init__(self._make_row, name=f"gamma[{family.name}]")

    def _make_row(self, r: int) -> Strategy:
        n, m = unpair(r)
        return const_strategy(self.decoder.encode(self.family.member(n, m)))

    def output_window(self, x: UPStream) -> tuple[int, int]:
        """From ``start`` on, ``z`` repeats with ``period``: shifts of x and the
        phase both repeat there."""
        f = self.family
        start = max(len(x.prefix), len(f.phases))
        return start, lcm(len(x.period), f.phase_period)


def gamma_compile(family: UniformFamily, samples: Sequence[UPStream] = (), rows: int = 8,
                  max_m: int = DEFAULT_MAX_M, decoder: CodeDecoder = DECODER) -> GammaStrategy:
    """Constant code rows; sampled inputs must see exactly one ``m`` per ``n``."""
    for x in samples:
        for n in range(rows):
            hits = [m for m in range(max_m + 1) if family.member(n, m).accepts(x)]
            if len(hits) != 1:
                raise IncoherentSpec(f"row {n} has witnesses {hits} within {max_m}", x)
    return GammaStrategy(family, decoder)


@dataclass
class GammaDecompiled:
    game: GammaGame
    strategy: Strategy

    def member(self, n: int, m: int, x: UPStream) -> bool:
        """``x`` in the preimage of ``{z : z(n) = m}``."""
        g, tau = self.game, self.strategy
        if not g.coded_set(tau, n, m, x).accepts(x):
            return False
        return not any(g.coded_set(tau, n, k, x).accepts(x) for k in range(m))


def gamma_decompile(tau: Strategy, decoder: CodeDecoder = DECODER, max_m: int = DEFAULT_MAX_M) -> GammaDecompiled:
    return GammaDecompiled(make_ggamma(decoder, max_m), tau)


# ---------------------------------------------------------------- player I transfer


def playerI_transfer_gamma(rho: StrategyI, decoder: CodeDecoder = DECODER) -> TransferredI:
    """Row ``pair(n, m)`` enumerates the full-space code if II's ``y(n) = m``,
    the empty-set code otherwise; then ``z = y``."""
    full, empty = decoder.encode(full_space()), decoder.encode(empty_set())
    if not decoder.decode(full).accepts(UPStream((), (0,))):
        raise BadAnchor("the full-space code does not decode to the full space")

    def ii_move(k, xs, ys):
        r, j = unpair(k)
        n, m = unpair(r)
        return Nat((full if ys[n] == m else empty).at(j))

    return TransferredI(rho, ii_move, name="transfer[gamma]")


def family_from_json(data) -> UniformFamily:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("family")
    if kind == "identity":
        return identity_family()
    if kind == "constant":
        return constant_family(UPStream.from_json(data["value"]))
    raise InvalidParameter(f"unknown code family {kind!r}")


__all__ = [
    "CodeDecoder",
    "DECODER",
    "C_BAIRE",
    "C_EMPTY",
    "GammaGame",
    "GFGammaGame",
    "GammaStrategy",
    "GammaDecompiled",
    "UniformFamily",
    "identity_family",
    "constant_family",
    "family_from_json",
    "make_ggamma",
    "make_gfgamma",
    "gamma_compile",
    "gamma_decompile",
    "playerI_transfer_gamma",
    "skip",
]
