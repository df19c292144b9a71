"""Moves of player II and their transcript encoding."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union


class Sym(enum.Enum):
    PASS = "P"
    ERASE = "E"
    BT = "BT"

    def __repr__(self) -> str:
        return self.name


PASS = Sym.PASS
ERASE = Sym.ERASE
BT = Sym.BT


@dataclass(frozen=True)
class Nat:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("Nat moves carry natural numbers")

    def __repr__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class RowMove:
    """One multitape move: pick ``row`` and either pass or play a digit there."""

    row: int
    inner: "Nat | Sym"

    def __post_init__(self):
        if self.inner is not PASS and not isinstance(self.inner, Nat):
            raise ValueError("a row move carries PASS or a digit")

    def __repr__(self) -> str:
        return f"r{self.row}:{self.inner!r}"


Move = Union[Nat, Sym, RowMove]


def is_nat(move: Move) -> bool:
    return isinstance(move, Nat)


def kind(move: Move) -> str:
    if isinstance(move, Nat):
        return "nat"
    if isinstance(move, RowMove):
        return "row"
    return {PASS: "pass", ERASE: "erase", BT: "bt"}[move]


def move_to_json(move: Move) -> dict:
    if isinstance(move, Nat):
        return {"nat": move.value}
    if isinstance(move, RowMove):
        if move.inner is PASS:
            return {"row": move.row, "pass": True}
        return {"row": move.row, "nat": move.inner.value}
    return {"sym": move.value}


def move_from_json(data) -> Move:
    if isinstance(data, int):
        return Nat(data)
    if "row" in data:
        if data.get("pass"):
            return RowMove(int(data["row"]), PASS)
        return RowMove(int(data["row"]), Nat(int(data["nat"])))
    if "nat" in data:
        return Nat(int(data["nat"]))
    return Sym(data["sym"])


def transcript_to_json(pairs) -> list:
    """``[(i_digit, ii_move), ...]`` as ``[["I", d], ["II", move], ...]``."""
    out: list = []
    for d, mv in pairs:
        out.append(["I", d])
        if mv is not None:
            out.append(["II", move_to_json(mv)])
    return out


def transcript_from_json(items) -> list[tuple[int, Move | None]]:
    pairs: list[tuple[int, Move | None]] = []
    for who, val in items:
        if who == "I":
            pairs.append((int(val), None))
        elif who == "II":
            if not pairs or pairs[-1][1] is not None:
                raise ValueError("II moved out of turn")
            pairs[-1] = (pairs[-1][0], move_from_json(val))
        else:
            raise ValueError(f"unknown player {who!r}")
    return pairs
