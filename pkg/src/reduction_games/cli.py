"""Command-line front end.

Exit codes: 0 for success or a true verdict, 1 for a false verdict,
2 for errors (bad configs, unknown names, engine failures).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence, TextIO

from .composite import CompositeGame, Decompiled, TildeGame, control_swap, make_gfxi, make_tilde, playerI_transfer
from .demos import z_into_inf0
from .errors import GameError, WitnessFailure
from .games import GameSpec, adjudicate_up, run_to_depth
from .gamma import GammaGame, gamma_decompile, playerI_transfer_gamma
from .generators import random_ups
from .moves import move_to_json
from .serialization import (
    automaton_from_json,
    game_from_json,
    load,
    schedule_from_json,
    strategy_I_from_json,
    strategy_from_json,
    strategy_to_json,
    successor_from_json,
    upstream_from_json,
)
from .strategies import const_strategy, eval_function, id_strategy, klip_transfer_I, legality_check, play_lasso_I
from .streams import UPStream
from .suites import SUITES, run_all, run_suite

DEFAULT_SEED = 0
ZERO = UPStream((), (0,))


def emit(data, out: TextIO) -> None:
    out.write(json.dumps(data, separators=(",", ":")) + "\n")


def _game_and_strategy(args) -> tuple[GameSpec, object]:
    G = game_from_json(args.game)
    return G, strategy_from_json(args.strategy, G)


def _samples(args, default: int) -> list[UPStream]:
    rng = random.Random(args.seed if args.seed is not None else DEFAULT_SEED)
    return random_ups(rng, args.samples if args.samples is not None else default)


# ---------------------------------------------------------------- commands


def cmd_eval(args, out) -> int:
    G, tau = _game_and_strategy(args)
    x = upstream_from_json(args.input)
    if args.depth is not None:
        emit({"prefix": eval_function(G, tau, x, mode=args.depth)}, out)
    else:
        emit(eval_function(G, tau, x, max_rows=args.max_rows).to_json(), out)
    return 0


def cmd_legal(args, out) -> int:
    G, tau = _game_and_strategy(args)
    report = legality_check(G, tau, _samples(args, 32), depth=args.depth or 64)
    if args.json:
        emit(report.to_json(), out)
    else:
        out.write(f"{report.verdict}: {report.reason}\n")
    return 0 if report.legal else 1


def _summary(tau) -> dict:
    rows = getattr(tau, "rows", None)
    return {
        "kind": type(tau).__name__,
        "explicit_rows": sorted(rows) if isinstance(rows, dict) else None,
        "row_rule": getattr(tau, "row_fn", None) is not None,
    }


def cmd_compile(args, out) -> int:
    G = game_from_json(args.game) if args.game else None
    tau = strategy_from_json(args.recipe, G)
    try:
        emit(strategy_to_json(tau), out)
    except GameError:
        emit(_summary(tau), out)
    return 0


def cmd_decompile(args, out) -> int:
    G, tau = _game_and_strategy(args)
    xs = [upstream_from_json(x) for x in args.input]
    if isinstance(G, GammaGame):
        dec = gamma_decompile(tau, max_m=args.max_m)
        for x in xs:
            hits = [[n, m] for n in range(args.rows) for m in range(args.max_m) if dec.member(n, m, x)]
            emit({"input": x.to_json(), "preimages": hits}, out)
        return 0
    if not isinstance(G, CompositeGame):
        raise GameError(f"cannot decompile strategies for {G.name}")
    dec = Decompiled(G, tau, args.max_rows or 64)
    for x in xs:
        n = dec.region(x)
        emit({"input": x.to_json(), "region": n, "output": dec.evaluate(x).to_json()}, out)
    return 0


_MAPS = {"identity": lambda k: k, "odd": lambda k: 2 * k + 1}
_REDUCTIONS = {"id": id_strategy, "z-into-inf0": z_into_inf0}


def cmd_swap(args, out) -> int:
    G, tau = _game_and_strategy(args)
    if not isinstance(G, CompositeGame):
        raise GameError("swap needs a composite game")
    new = schedule_from_json(args.to)
    if args.reduction in _REDUCTIONS:
        red = _REDUCTIONS[args.reduction]()
    else:
        red = strategy_from_json(args.reduction)
    if args.map not in _MAPS:
        raise GameError(f"unknown index map {args.map!r}; known: {sorted(_MAPS)}")
    xs = _samples(args, 50)
    try:
        swapped = control_swap(tau, G.controls, new, _MAPS[args.map], lambda k: red, samples=xs)
    except WitnessFailure as exc:
        sample = exc.sample.to_json() if isinstance(exc.sample, UPStream) else None
        emit({"status": "failed", "reason": str(exc), "sample": sample}, out)
        return 1
    H = (make_tilde if isinstance(G, TildeGame) else make_gfxi)(G.inner, new)
    outputs = [{"input": upstream_from_json(x).to_json(),
                "output": H.evaluate(swapped, upstream_from_json(x), args.max_rows).to_json()}
               for x in args.input]
    emit({"status": "ok", "samples": len(xs), "controls": new.to_json(), "outputs": outputs}, out)
    return 0


def cmd_adjudicate(args, out) -> int:
    G, tau = _game_and_strategy(args)
    A, B = automaton_from_json(args.A), automaton_from_json(args.B)
    verdict = adjudicate_up(G, upstream_from_json(args.input), tau, A, B, args.max_rows)
    if args.json:
        emit(verdict.to_json(), out)
    else:
        out.write(f"winner {verdict.winner.value}: {verdict.reason}\n")
    return 0 if verdict.winner.value == "II" else 1


def cmd_transfer(args, out) -> int:
    G = game_from_json(args.game)
    rho = strategy_I_from_json(args.rho)
    if isinstance(G, GammaGame):
        sigma = playerI_transfer_gamma(rho)
    elif isinstance(G, CompositeGame):
        sigma = playerI_transfer(rho, upstream_from_json(args.z), G)
    elif G.kind == "kLip":
        sigma = klip_transfer_I(rho, int(G.params["k"]))
    else:
        raise GameError(f"no transfer for {G.name}")
    tau = strategy_from_json(args.against, G) if args.against else const_strategy(ZERO)
    x = play_lasso_I(sigma, tau)
    if x is None:
        raise GameError("player I did not commit within the turn budget")
    try:
        y = G.evaluate(tau, x, args.max_rows).to_json()
    except GameError:
        y = None
    emit({"x": x.to_json(), "output": y}, out)
    return 0


def cmd_member(args, out) -> int:
    data = load(args.set)
    x = upstream_from_json(args.input)
    if isinstance(data, dict) and "base" in data:
        inside = successor_from_json(data).accepts(x)
    else:
        inside = automaton_from_json(data).accepts(x)
    out.write("in\n" if inside else "out\n")
    return 0 if inside else 1


def cmd_suite(args, out) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if args.name == "all":
        results = run_all(seed, args.samples, args.corrupt)
    elif args.name in SUITES:
        results = [run_suite(args.name, seed, args.samples, args.corrupt)]
    else:
        raise GameError(f"unknown suite {args.name!r}; known: all, {', '.join(SUITES)}")
    if args.json:
        emit({"seed": seed, "suites": [r.to_json() for r in results]}, out)
    else:
        out.write(f"seed: {seed}\n")
        for r in results:
            out.write(f"suite {r.line()}\n")
    return 0 if all(r.passed for r in results) else 1


def _render(mv) -> str:
    return json.dumps(move_to_json(mv), separators=(",", ":"))


def cmd_play(args, out, inp: TextIO) -> int:
    """Human plays I one digit per line; II answers from the strategy."""
    G, tau = _game_and_strategy(args)
    mon, interp, runner = G.monitor(), G.interpreter(), tau.runner()
    depth = args.depth or 16
    digits: list[int] = []
    status = "ok"
    out.write(f"game {G.name}, {depth} turns; enter one digit per line\n")
    turn = 0
    while turn < depth:
        out.write(f"I[{turn}]> ")
        out.flush()
        line = inp.readline()
        if not line:
            out.write("\nend of input\n")
            break
        text = line.strip()
        if not text.isdigit():
            out.write(f"not a digit: {text!r}\n")
            continue
        d = int(text)
        digits.append(d)
        mv = runner.feed(d)
        status = mon.step(d, mv)
        if not status.startswith("violated"):
            interp.step(d, mv)
        record = {
            "turn": turn,
            "I": d,
            "II": move_to_json(mv),
            "output": interp.tentative(),
            "committed": interp.committed_len(),
            "status": status,
            "domain": G.domain.verdict(digits).value,
        }
        if hasattr(mon, "row_verdicts"):
            record["rows"] = mon.row_verdicts()
        if args.json:
            emit(record, out)
        else:
            out.write(f"II: {_render(mv)}  output {record['output']}  committed {record['committed']}  "
                      f"status {status}  domain {record['domain']}\n")
            if "rows" in record:
                out.write(f"rows: {json.dumps(record['rows'], separators=(',', ':'), sort_keys=True)}\n")
        turn += 1
        if status.startswith("violated"):
            out.write(f"session over: {status}\n")
            return 1
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help=f"sampling seed (default {DEFAULT_SEED})")
    common.add_argument("--depth", type=int, default=None, help="finite depth instead of exact evaluation")
    common.add_argument("--max-rows", type=int, default=None, help="row bound for composite searches")
    common.add_argument("--max-m", type=int, default=32, help="code search bound for coded-set games")
    common.add_argument("--samples", type=int, default=None, help="number of sampled inputs")

    p = argparse.ArgumentParser(prog="reduction-games", description="Reduction games on ultimately periodic reals.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    s = add("eval", "evaluate f_tau on one input")
    s.add_argument("game"); s.add_argument("strategy"); s.add_argument("input")
    s = add("legal", "decide or refute legality of a strategy")
    s.add_argument("game"); s.add_argument("strategy")
    s = add("compile", "compile a strategy recipe")
    s.add_argument("recipe"); s.add_argument("--game", default=None)
    s = add("decompile", "recover regions and pieces on inputs")
    s.add_argument("game"); s.add_argument("strategy"); s.add_argument("input", nargs="+")
    s.add_argument("--rows", type=int, default=4, help="rows listed for coded-set preimages")
    s = add("swap", "move a composite strategy to another control schedule")
    s.add_argument("game"); s.add_argument("strategy")
    s.add_argument("--to", required=True, help="target control schedule")
    s.add_argument("--map", default="identity", help="index map: identity or odd")
    s.add_argument("--reduction", default="id", help="id, z-into-inf0, or a strategy config")
    s.add_argument("--input", action="append", default=[], help="evaluate the swapped strategy here")
    s = add("adjudicate", "winner of one play in G(A, B)")
    s.add_argument("game"); s.add_argument("strategy"); s.add_argument("A"); s.add_argument("B")
    s.add_argument("input")
    s = add("transfer", "move a player I strategy into a game and play it")
    s.add_argument("game"); s.add_argument("rho")
    s.add_argument("--against", default=None, help="II strategy (default: constant zeros)")
    s.add_argument("--z", default=";0", help="anchor outside the control sets")
    s = add("member", "membership of an input in a set")
    s.add_argument("set"); s.add_argument("input")
    s = add("suite", "run property batteries")
    s.add_argument("name", help=f"all, or one of: {', '.join(SUITES)}")
    s.add_argument("--corrupt", action="store_true", help="use a broken fixture (must fail)")
    s = add("play", "play as I against a strategy, one digit per line")
    s.add_argument("game"); s.add_argument("strategy")
    return p


COMMANDS = {
    "eval": cmd_eval,
    "legal": cmd_legal,
    "compile": cmd_compile,
    "decompile": cmd_decompile,
    "swap": cmd_swap,
    "adjudicate": cmd_adjudicate,
    "transfer": cmd_transfer,
    "member": cmd_member,
    "suite": cmd_suite,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, inp: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command == "play":
            return cmd_play(args, out, inp or sys.stdin)
        return COMMANDS[args.command](args, out)
    except (GameError, ValueError, KeyError, TypeError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
