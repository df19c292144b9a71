"""JSON configs for games, sets, schedules and strategies.

Sets and control sets may be given by gallery name (``"Z"``, ``"INF0"``,
``"full"``, ``"empty"``) or as small expressions; strategies may be Mealy
tables, row bundles, or recipes that are compiled on load.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .composite import (
    CompositeStrategy,
    ControlSchedule,
    Piece,
    PiecewiseSpec,
    make_gfxi,
    make_tilde,
    piecewise_compile,
)
from .degrees import SuccessorSet
from .errors import InvalidParameter
from .games import GameSpec, delay, make_base_game, p_close
from .gamma import family_from_json, gamma_compile, make_gfgamma, make_ggamma
from .limits import LimitStrategy, alternating_family, make_glim, zero_test_family
from .lipschitz import glip_compile, make_glipxi
from .machines import DelayTransducer, MealyStrategy, Strategy, StrategyI, TableStrategyI, const_strategy_I
from .omega import (
    ControlSet,
    ParityAutomaton,
    canonical_pi1,
    canonical_pi2,
    complement,
    cylinder,
    digit_equals,
    empty_set,
    full_space,
    inf_zeros_set,
    zero_stream_set,
)
from .strategies import const_strategy, delay_strategy, id_strategy, pass_strategy
from .streams import UPStream

_GALLERY = {
    "Z": zero_stream_set,
    "INF0": inf_zeros_set,
    "full": full_space,
    "empty": empty_set,
}
_CONTROLS = {"Z": canonical_pi1, "INF0": canonical_pi2}


def load(source: str | Path | Any) -> Any:
    """Inline JSON text, ``@path`` or a plain path; already-parsed data passes through.

    A bare word that names no file is read as a JSON string (``Z``, ``id``).
    """
    if not isinstance(source, (str, Path)):
        return source
    text = str(source)
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    if text.lstrip()[:1] in ("{", "[", '"') or text.strip().lstrip("-").isdigit():
        return json.loads(text)
    path = Path(text)
    if path.exists():
        return json.loads(path.read_text())
    if text.replace("_", "").replace("-", "").isalnum():
        return text
    raise InvalidParameter(f"no such file: {text}")


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- sets


def automaton_from_json(data) -> ParityAutomaton:
    data = load(data)
    if isinstance(data, str):
        if data not in _GALLERY:
            raise InvalidParameter(f"unknown set {data!r}; gallery: {sorted(_GALLERY)}")
        return _GALLERY[data]()
    if "cylinder" in data:
        return cylinder(data["cylinder"])
    if "digit_equals" in data:
        n, m = data["digit_equals"]
        return digit_equals(int(n), int(m))
    if "complement" in data:
        return complement(automaton_from_json(data["complement"]))
    return ParityAutomaton.from_json(data)


def control_from_json(data) -> ControlSet:
    data = load(data)
    if isinstance(data, str):
        if data not in _CONTROLS:
            raise InvalidParameter(f"unknown control set {data!r}; gallery: {sorted(_CONTROLS)}")
        return _CONTROLS[data]()
    outside = UPStream.from_json(data["outside"]) if "outside" in data else None
    return ControlSet(automaton_from_json(data["automaton"]), data.get("rank", "user"), data.get("name", ""), outside)


def schedule_from_json(data) -> ControlSchedule:
    data = load(data)
    if isinstance(data, str):
        return ControlSchedule.repeat(control_from_json(data))
    return ControlSchedule(tuple(control_from_json(c) for c in data["explicit"]), data.get("tail", "repeat"))


def upstream_from_json(data) -> UPStream:
    """JSON form, or the shorthand ``"prefix;period"`` with comma-separated digits."""
    if isinstance(data, str) and ";" in data and not data.lstrip().startswith("{"):
        pre, per = data.split(";", 1)
        digits = lambda t: [int(v) for v in t.split(",") if v.strip()]
        return UPStream(digits(pre), digits(per))
    return UPStream.from_json(load(data))


# ---------------------------------------------------------------- games


def game_from_json(data) -> GameSpec:
    data = load(data)
    if isinstance(data, str):
        data = {"kind": data}
    kind = data.get("kind")
    domain = automaton_from_json(data["domain"]) if "domain" in data else None
    if kind in ("L", "W", "E", "BT", "M"):
        return make_base_game(kind, domain=domain)
    if kind == "kLip":
        return make_base_game("kLip", k=int(data["k"]), domain=domain)
    if kind == "p_close":
        return p_close(game_from_json(data["base"]))
    if kind == "delay":
        return delay(game_from_json(data["base"]), int(data["n"]))
    if kind in ("gfxi", "tilde"):
        make = make_gfxi if kind == "gfxi" else make_tilde
        return make(game_from_json(data["inner"]), schedule_from_json(data["controls"]))
    if kind == "glim":
        inners = [game_from_json(g) for g in data.get("inners", ["W"])]
        tail = game_from_json(data["tail"]) if "tail" in data else None
        return make_glim(inners, tail)
    if kind == "ggamma":
        return make_ggamma(max_m=int(data.get("max_m", 32)))
    if kind == "gfgamma":
        return make_gfgamma(game_from_json(data["inner"]))
    if kind == "glipxi":
        return make_glipxi(schedule_from_json(data["controls"]))
    raise InvalidParameter(f"unknown game kind {kind!r}")


# ---------------------------------------------------------------- strategies


def piecewise_from_json(data) -> PiecewiseSpec:
    data = load(data)
    pieces = []
    for p in data["pieces"]:
        strategy = strategy_from_json(p["strategy"])
        region = automaton_from_json(p["region"]) if "region" in p else None
        witness = strategy_from_json(p["witness"]) if "witness" in p else None
        pieces.append(Piece(strategy, region, witness, p.get("label", "")))
    return PiecewiseSpec(pieces, schedule_from_json(data["controls"]))


def strategy_from_json(data, game: GameSpec | None = None) -> Strategy:
    """II strategies.  Recipes (``piecewise``, ``gamma``, ``glip``, ...) are
    compiled here; ``piecewise`` compiles against the game's inner game."""
    data = load(data)
    if isinstance(data, str):
        named = {"id": id_strategy, "pass": pass_strategy}
        if data not in named:
            raise InvalidParameter(f"unknown strategy {data!r}; named: {sorted(named)}")
        return named[data]()
    if "step" in data:
        return MealyStrategy.from_json(data)
    if "const" in data:
        return const_strategy(UPStream.from_json(data["const"]))
    if "delay" in data:
        return delay_strategy(strategy_from_json(data["of"], game), int(data["delay"]))
    if "rows" in data:
        controls = schedule_from_json(data["controls"]) if "controls" in data else None
        rows = {int(n): strategy_from_json(r) for n, r in data["rows"].items()}
        return CompositeStrategy(rows, controls)
    if "piecewise" in data:
        spec = piecewise_from_json(data["piecewise"])
        inner = getattr(game, "inner", None) or make_base_game("W")
        return piecewise_compile(spec, inner)
    if "gamma" in data:
        return gamma_compile(family_from_json(data["gamma"]))
    if "glip" in data:
        cfg = data["glip"]
        pieces = [(automaton_from_json(p["region"]), DelayTransducer.from_json(p["transducer"]))
                  for p in cfg["pieces"]]
        return glip_compile(pieces, schedule_from_json(cfg["controls"]))
    if "limit" in data:
        cfg = data["limit"]
        return LimitStrategy([strategy_from_json(r) for r in cfg.get("rows", [])], strategy_from_json(cfg["tail"]))
    if "switch" in data:
        families = {"zero-test": zero_test_family, "alternating": alternating_family}
        if data["switch"] not in families:
            raise InvalidParameter(f"unknown switch family {data['switch']!r}")
        return families[data["switch"]]()
    raise InvalidParameter("unrecognised strategy config")


def strategy_I_from_json(data) -> StrategyI:
    data = load(data)
    if "const" in data:
        return const_strategy_I(UPStream.from_json(data["const"]))
    return TableStrategyI.from_json(data)


def successor_from_json(data) -> SuccessorSet:
    data = load(data)
    return SuccessorSet(automaton_from_json(data["base"]), schedule_from_json(data["controls"]),
                        data.get("kind", "sigma"))


def strategy_to_json(tau: Strategy) -> dict:
    to_json = getattr(tau, "to_json", None)
    if to_json is None:
        raise InvalidParameter(f"{tau!r} has no JSON form")
    return to_json()


__all__ = [
    "load",
    "dumps",
    "automaton_from_json",
    "control_from_json",
    "schedule_from_json",
    "upstream_from_json",
    "game_from_json",
    "piecewise_from_json",
    "strategy_from_json",
    "strategy_I_from_json",
    "successor_from_json",
    "strategy_to_json",
]
