"""Seeded property batteries, one per group of claims.

Every suite draws from its own ``random.Random`` derived from the run seed,
so suites can run alone or together with identical results.  ``corrupt``
swaps in a deliberately wrong fixture; the suite must then fail.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from typing import Callable

from .composite import (
    ControlSchedule,
    control_swap,
    inf0_schedule,
    make_gfxi,
    make_tilde,
    piecewise_compile,
    piecewise_decompile,
    playerI_transfer,
    recompile,
    z_schedule,
)
from . import demos
from .degrees import successor_merge, successor_member, hatted_game
from .errors import GameError, LimitUndetermined, WitnessFailure
from .games import erase_eval, make_base_game, run_to_depth
from .gamma import gamma_compile, gamma_decompile, identity_family, make_ggamma, playerI_transfer_gamma
from .generators import (
    random_klip_mealy,
    random_lipschitz_mealy,
    random_nonzero_up,
    random_transducer,
    random_up,
    random_ups,
    random_wadge_mealy,
)
from .limits import alternating_family, make_glim, zero_test_family
from .lipschitz import enum_index, enum_seq, glip_compile, m_schedule, make_glipxi
from .machines import MealyStrategy
from .moves import ERASE, PASS, Nat
from .strategies import (
    const_strategy,
    delay_strategy,
    id_strategy,
    klip_transfer_I,
    klip_transfer_II,
    lipschitz_compile,
    play_lasso_I,
)
from .streams import UPStream, distance, pair, project, projection_spectrum, tensor_view, unpair


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(what)
        elif not ok:
            self.failures[-1] = f"{what} (and more)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": self.checks, "failures": self.failures}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f": {self.failures[0]}"
        return f"{self.name}: {status} ({self.checks} checks){tail}"


SUITES: dict[str, Callable] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


def suite_rng(seed: int, name: str) -> random.Random:
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


def run_suite(name: str, seed: int = 0, samples: int | None = None, corrupt: bool = False) -> SuiteResult:
    if name not in SUITES:
        raise GameError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    res = SuiteResult(name)
    try:
        SUITES[name](res, suite_rng(seed, name), samples, corrupt)
    except GameError as exc:
        res.check(False, f"unexpected {type(exc).__name__}: {exc}")
    return res


def run_all(seed: int = 0, samples: int | None = None, corrupt: bool = False) -> list[SuiteResult]:
    return [run_suite(n, seed, samples, corrupt) for n in SUITES]


def _n(samples: int | None, default: int) -> int:
    return default if samples is None else samples


# ---------------------------------------------------------------- coding


@suite("pairing")
def _pairing(res, rng, samples, corrupt):
    bound = 10**5 if samples is None else max(samples, 1) * 100
    oracle = (lambda n, m: pair(n, m) + 1) if corrupt else pair
    ok = all(oracle(*unpair(k)) == k for k in range(bound))
    res.check(ok, f"pair(unpair(k)) != k below {bound}")
    hits = {pair(n, m) for n in range(17) for m in range(bound >> n) if pair(n, m) < bound}
    res.check(hits == set(range(bound)), "pair is not onto an initial segment")
    for _ in range(_n(samples, 200)):
        x = random_up(rng, digits=4, max_prefix=40, max_period=12)
        spec = projection_spectrum(x)
        rows = {n: project(x, n) for n in range(13)}
        for n, row in rows.items():
            want = [x.at(pair(n, m)) for m in range(200)]
            res.check(row.take(len(want)) == want, f"project({x!r}, {n}) disagrees with the pairing")
            res.check(spec.stream(n) == row, f"spectrum row {n} of {x!r}")
        coded = tensor_view(lambda n: project(x, n))
        res.check(coded.take(200) == x.take(200), f"tensor of projections of {x!r}")


# ---------------------------------------------------------------- Lipschitz semantics


def _close_pair(rng: random.Random) -> tuple[UPStream, UPStream]:
    """Two streams sharing a random-length head, so all distances occur."""
    head = [rng.randrange(3) for _ in range(rng.randrange(8))]
    a, b = random_up(rng), random_up(rng)
    return a.prepend(head), b.prepend(head)


@suite("lipschitz-bound")
def _lipschitz_bound(res, rng, samples, corrupt):
    pairs_per_k = _n(samples, 1000)
    for k in range(4):
        G = make_base_game("kLip", k=k)
        bound = k - 1 if corrupt else k
        strategies = [random_klip_mealy(rng, k) for _ in range(100)]
        for i in range(pairs_per_k):
            tau = strategies[i % len(strategies)]
            x, y = _close_pair(rng)
            fx, fy = G.evaluate(tau, x), G.evaluate(tau, y)
            res.check(distance(fx, fy) <= distance(x, y).scaled(bound),
                      f"k={k}: d(f{x!r}, f{y!r}) exceeds 2^{bound} d")
    inputs = _n(samples, 1000)
    for j in range(20):
        b = j % 4
        T = random_transducer(rng, b)
        tau = lipschitz_compile(T)
        G = make_base_game("kLip", k=b)
        for _ in range(max(1, inputs // 20)):
            x = random_up(rng)
            want = T.run_up(x.shift(1) if corrupt else x)
            res.check(G.evaluate(tau, x) == want, f"compiled transducer {j} on {x!r}")


def naive_iota_hat(moves) -> list[int]:
    if not moves:
        return []
    rest, last = naive_iota_hat(moves[:-1]), moves[-1]
    if isinstance(last, Nat):
        return rest + [last.value]
    if last is ERASE:
        return rest[: max(len(rest) - 1, 0)]
    return rest


def _wild_mealy(rng: random.Random, states: int = 3) -> MealyStrategy:
    """Any mix of digits and passes: legal or not."""
    def out():
        return PASS if rng.random() < 0.4 else Nat(rng.randrange(3))
    table = {(s, d): (rng.randrange(states), out()) for s in range(states) for d in range(3) if rng.random() < 0.6}
    default = {s: (rng.randrange(states), out()) for s in range(states)}
    return MealyStrategy(states, 0, table, default, name="wild")


def _same_run(a, b) -> bool:
    return a.status.startswith("violated") == b.status.startswith("violated") and len(a.run) == len(b.run) and a.tentative == b.tentative


@suite("base-games")
def _base_games(res, rng, samples, corrupt):
    for _ in range(_n(samples, 500)):
        moves = [rng.choice([ERASE, PASS, Nat(0), Nat(1), Nat(2)]) for _ in range(rng.randrange(40))]
        want = naive_iota_hat(moves)
        if corrupt:
            want = want + [0]
        res.check(erase_eval(moves) == want, f"stack semantics on {moves!r}")
    L, W = make_base_game("L"), make_base_game("W")
    from .games import delay, p_close

    PL = p_close(L)
    runs = _n(samples, 50)
    for i in range(runs):
        tau = random_wadge_mealy(rng) if i % 2 else _wild_mealy(rng)
        x = random_up(rng)
        a, b = run_to_depth(PL, x, tau, 64), run_to_depth(W if not corrupt else L, x, tau, 64)
        res.check(_same_run(a, b), f"p_close(L) and W differ on {x!r}")
    for i in range(runs):
        k = i % 4
        tau = random_klip_mealy(rng, k) if i % 2 else _wild_mealy(rng)
        x = random_up(rng)
        D, K = delay(L, k), make_base_game("kLip", k=k + (1 if corrupt else 0))
        a, b = run_to_depth(D, x, tau, 64), run_to_depth(K, x, tau, 64)
        res.check(_same_run(a, b), f"delay(L, {k}) and {k}-Lip differ on {x!r}")


# ---------------------------------------------------------------- piecewise games


def _roundtrip(res, spec, W, xs, corrupt, label):
    tau = piecewise_compile(spec, W)
    G = make_gfxi(W, spec.controls)
    dec = piecewise_decompile(tau, W, spec.controls)
    bound = max(tau.rows) + 1
    again = recompile(dec, range((bound + 1) // 2))
    pieces = list(spec.pieces)
    if corrupt:
        pieces.reverse()
    for x in xs:
        k = spec.region_index(x)
        want = W.evaluate(pieces[k].strategy, x)
        res.check(G.evaluate(tau, x) == want, f"{label}: f on {x!r}")
        r = dec.region(x)
        res.check(dec.piece(r) is pieces[k].strategy, f"{label}: region of {x!r}")
        res.check(G.evaluate(again, x) == want, f"{label}: recompiled f on {x!r}")


@suite("thm43-roundtrip")
def _thm43(res, rng, samples, corrupt):
    W = make_base_game("W")
    n = _n(samples, 100)
    _roundtrip(res, demos.xi2_spec(), W, random_ups(rng, n), corrupt, "xi=2")
    _roundtrip(res, demos.xi3_spec(), W, random_ups(rng, n, max_prefix=6, max_period=5), corrupt, "xi=3")


@suite("control-swap")
def _control_swap(res, rng, samples, corrupt):
    W = make_base_game("W")
    xs = random_ups(rng, _n(samples, 100))
    spec = demos.xi2_spec()
    oracle = demos.xi3_spec() if corrupt else spec
    # Z rows moved to INF0 rows through a reduction of Z into INF0
    tau = piecewise_compile(spec, W)
    red = demos.z_into_inf0()
    fwd = control_swap(tau, z_schedule(), inf0_schedule(), lambda k: k, lambda k: red, samples=xs)
    G = make_gfxi(W, inf0_schedule())
    for x in xs:
        res.check(G.evaluate(fwd, x) == oracle.evaluate(W, x), f"Z -> INF0 swap on {x!r}")
    # INF0 rows moved to the INF0 positions of an alternating schedule
    tau2 = piecewise_compile(demos.xi2_on_inf0_spec(), W)
    alt = demos.alternating_schedule()
    back = control_swap(tau2, inf0_schedule(), alt, lambda k: 2 * k + 1, lambda k: id_strategy(), samples=xs)
    G2 = make_gfxi(W, alt)
    for x in xs:
        res.check(G2.evaluate(back, x) == oracle.evaluate(W, x), f"INF0 -> alternating swap on {x!r}")
    # INF0 does not reduce into Z: the swap must refuse
    try:
        control_swap(tau2, inf0_schedule(), z_schedule(), lambda k: k, lambda k: id_strategy(),
                     samples=xs + [UPStream((), (0, 1))])
        res.check(False, "INF0 -> Z swap with a copy reduction was accepted")
    except WitnessFailure:
        res.check(True, "")


@suite("transfers")
def _transfers(res, rng, samples, corrupt):
    W, L = make_base_game("W"), make_base_game("L")
    plays = _n(samples, 1000)
    for label, A, B, rho in demos.transfer_pairs():
        if corrupt:
            A, B = B, A
        variants = [
            ("gfxi", playerI_transfer(rho, demos.ZERO, make_gfxi(W, z_schedule()))),
            ("tilde", playerI_transfer(rho, demos.ZERO, make_tilde(W, z_schedule()))),
            ("gamma", playerI_transfer_gamma(rho)),
        ]
        for name, sigma in variants:
            for _ in range(20):
                tau = random_lipschitz_mealy(rng)
                x = play_lasso_I(sigma, tau)
                res.check(A.accepts(x) != B.accepts(L.evaluate(tau, x)), f"{label}/{name}: II strategy wins")
            for _ in range(plays):
                y = random_up(rng)
                x = play_lasso_I(sigma, const_strategy(y))
                res.check(A.accepts(x) != B.accepts(y), f"{label}/{name}: II play {y!r} wins")


@suite("glim")
def _glim(res, rng, samples, corrupt):
    G = make_glim([make_base_game("W")])
    tau = alternating_family() if corrupt else zero_test_family()
    try:
        res.check(G.evaluate(tau, demos.ZERO) == demos.ZERO, "limit at the zero stream")
        for _ in range(_n(samples, 50)):
            x = random_nonzero_up(rng)
            res.check(G.evaluate(tau, x) == demos.ONE, f"limit at {x!r}")
    except LimitUndetermined as exc:
        res.check(False, f"limit undetermined: {exc}")
    try:
        G.evaluate(alternating_family(), demos.ZERO)
        res.check(False, "alternating rows produced a limit")
    except LimitUndetermined:
        res.check(True, "")


@suite("gamma")
def _gamma(res, rng, samples, corrupt):
    xs = random_ups(rng, _n(samples, 50), digits=4)
    tau = gamma_compile(identity_family(), xs)
    G = make_ggamma()
    for x in xs:
        want = x.shift(1) if corrupt else x
        res.check(G.evaluate(tau, x) == want, f"identity via codes on {x!r}")
    dec = gamma_decompile(tau)
    for x in xs:
        for n in range(6):
            for m in range(4):
                res.check(dec.member(n, m, x) == (x.at(n) == m), f"preimage ({n}, {m}) at {x!r}")


@suite("glip")
def _glip(res, rng, samples, corrupt):
    for n in range(65):
        t = [rng.randrange(4) for _ in range(2 * n + 2)]
        res.check(enum_seq(2 * n + 2, enum_index(t)) == t, f"coding round trip at turn {n}")
    controls = z_schedule()
    tau = glip_compile(demos.glip_pieces(), controls)
    res.check(tau.schedule == [1, 2], f"schedule {tau.schedule}")
    x = random_up(rng)
    for n, mv in enumerate(tau.play(x.take(65))):
        res.check(enum_index(enum_seq(2 * n + 2, mv.value)) == mv.value, f"re-encoding move {n}")
    G = make_glipxi(controls)
    for x in random_ups(rng, _n(samples, 100)):
        want = x.shift(2) if corrupt else demos.glip_oracle(x)
        res.check(G.evaluate(tau, x) == want, f"piecewise Lipschitz on {x!r}")
    for _ in range(20):
        size = rng.randint(1, 6)
        ns = sorted(rng.sample(range(12), size))
        ms = m_schedule(ns, [rng.randrange(6) for _ in range(size)])
        res.check(all(a < b for a, b in zip(ms, ms[1:])), f"m schedule {ms} not increasing")


def brute_successor(S, x, limit: int = 16) -> bool:
    """The definition read off row by row, for ``n <= limit``."""
    for n in range(limit + 1):
        if S.controls.control(n).automaton.accepts(project(x, 2 * n)):
            inside = S.base.accepts(project(x, 2 * n + 1))
            return inside if S.kind == "sigma" else (inside if S.kind == "pi" else False)
    return S.kind in ("R", "pi")


@suite("successor")
def _successor(res, rng, samples, corrupt):
    A, S, s0, s1 = demos.successor_demo()
    for i in range(_n(samples, 500)):
        x = random_up(rng, digits=2, max_prefix=8, max_period=8)
        T = S.with_kind(("sigma", "pi", "R")[i % 3])
        want = brute_successor(T, x)
        res.check(successor_member(T, x) == (not want if corrupt else want), f"{T.kind} membership of {x!r}")
    W = make_base_game("W")
    check_xs = random_ups(rng, 50)
    tau = successor_merge(s0, s1, A, S, check_xs)
    G = hatted_game(W, S.controls)
    B = S.base
    for _ in range(_n(samples, 1000)):
        x = random_up(rng)
        res.check(A.accepts(x) == B.accepts(G.evaluate(tau, x)), f"merged strategy loses at {x!r}")
    A0, S0, e0, e1 = demos.successor_empty_demo()
    tau0 = successor_merge(e0, e1, A0, S0, check_xs)
    for x in check_xs:
        res.check(A0.accepts(x) == B.accepts(G.evaluate(tau0, x)), f"empty-A merge loses at {x!r}")
    try:
        successor_merge(s0, const_strategy(demos.ONE), A, S, check_xs)
        res.check(False, "broken second strategy accepted")
    except WitnessFailure:
        res.check(True, "")


@suite("klip")
def _klip(res, rng, samples, corrupt):
    plays = _n(samples, 1000)
    for k in range(3):
        L, K = demos.klip_games(k)
        A, B = demos.klip_A(k), demos.klip_B()
        PB = demos.padded(B, k)
        sigma = klip_transfer_I(demos.klip_sigma_I(k), k)
        target = PB if corrupt else B
        for _ in range(20):
            tau = random_klip_mealy(rng, k)
            x = play_lasso_I(sigma, tau)
            res.check(A.accepts(x) != target.accepts(K.evaluate(tau, x)), f"k={k}: I loses to a Mealy strategy")
        for _ in range(plays):
            y = random_up(rng)
            x = play_lasso_I(sigma, delay_strategy(const_strategy(y), k))
            res.check(A.accepts(x) != target.accepts(y), f"k={k}: I loses to the play {y!r}")
        tau = demos.klip_tau_II(k)
        moved = klip_transfer_II(tau, k, demos.ZERO)
        for _ in range(plays):
            x = random_up(rng)
            res.check(B.accepts(x) == PB.accepts(L.evaluate(tau, x)), f"k={k}: source strategy loses at {x!r}")
            res.check(B.accepts(x) == B.accepts(K.evaluate(moved, x)), f"k={k}: moved strategy loses at {x!r}")


__all__ = ["SUITES", "SuiteResult", "run_suite", "run_all", "naive_iota_hat", "brute_successor"]
