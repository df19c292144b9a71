"""Deterministic parity automata over the digit alphabet, used for payoff
sets, domains and control sets.

Each state has finitely many explicit digit edges plus an otherwise-edge,
so automata are total over all of omega.  A run is accepted when the least
priority seen infinitely often is even.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from ._graph import _sccs, explore, find_cycle
from .errors import InvalidParameter, UnsupportedRegionShape
from .machines import MealyStrategy
from .moves import Nat
from .streams import UPStream

OTHER = "_"


class PrefixVerdict(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNKNOWN = "unknown"


class ParityAutomaton:
    """``edges[(state, digit)]`` overrides ``default[state]``; ``priority[state]``."""

    def __init__(self, n_states: int, initial: int, edges: Mapping, default: Sequence[int] | Mapping,
                 priority: Sequence[int], name: str = ""):
        self.n_states = int(n_states)
        self.initial = int(initial)
        self.edges = {(int(s), int(d)): int(t) for (s, d), t in edges.items()}
        if isinstance(default, Mapping):
            default = [default.get(s) for s in range(self.n_states)]
        self.default = [None if t is None else int(t) for t in default]
        self.priority = [int(p) for p in priority]
        self.name = name
        self._validate()

    def _validate(self):
        n = self.n_states
        if n < 1 or not 0 <= self.initial < n:
            raise InvalidParameter("automaton needs at least one state and a valid initial state")
        if len(self.default) != n or any(t is None for t in self.default):
            raise InvalidParameter("every state needs an otherwise-edge")
        if len(self.priority) != n or any(p < 0 for p in self.priority):
            raise InvalidParameter("one natural priority per state")
        targets = list(self.default) + list(self.edges.values())
        if any(not 0 <= t < n for t in targets) or any(not 0 <= s < n or d < 0 for s, d in self.edges):
            raise InvalidParameter("edge out of range")

    # ------------------------------------------------------------ running

    def step(self, state: int, digit: int) -> int:
        return self.edges.get((state, digit), self.default[state])

    def run(self, digits: Sequence[int], state: int | None = None) -> int:
        s = self.initial if state is None else state
        for d in digits:
            s = self.step(s, d)
        return s

    @cached_property
    def alphabet(self) -> list[int]:
        """Explicit digits plus one fresh representative of all others."""
        explicit = sorted({d for (_, d) in self.edges})
        return explicit + [explicit[-1] + 1 if explicit else 0]

    def fresh_digit(self) -> int:
        return self.alphabet[-1]

    def accepts(self, x: UPStream, state: int | None = None) -> bool:
        s = self.run(x.prefix, state)
        L = len(x.period)
        seen: dict[tuple[int, int], int] = {}
        trace: list[int] = []
        pos = 0
        while (s, pos) not in seen:
            seen[(s, pos)] = len(trace)
            s = self.step(s, x.period[pos])
            trace.append(self.priority[s])
            pos = (pos + 1) % L
        return min(trace[seen[(s, pos)]:]) % 2 == 0

    __contains__ = accepts

    # ------------------------------------------------------------ analysis

    def _graph(self, start: int):
        return explore(start, lambda s: [(d, self.step(s, d)) for d in self.alphabet])

    @cached_property
    def _full_graph(self):
        nodes = list(range(self.n_states))
        edges = [(s, d, self.step(s, d)) for s in nodes for d in self.alphabet]
        return nodes, edges

    def _states_reaching(self, want_even: bool) -> frozenset[int]:
        """States from which some run has least-recurring priority of the given parity."""
        nodes, edges = self._full_graph
        good: set[int] = set()
        stack = _sccs(set(nodes), edges)
        while stack:
            comp = stack.pop()
            low = min(self.priority[v] for v in comp)
            if (low % 2 == 0) == want_even:
                good |= comp
            else:
                stack.extend(_sccs({v for v in comp if self.priority[v] != low}, edges))
        rev: dict[int, set[int]] = {}
        for u, _, v in edges:
            rev.setdefault(v, set()).add(u)
        frontier = list(good)
        while frontier:
            v = frontier.pop()
            for u in rev.get(v, ()):
                if u not in good:
                    good.add(u)
                    frontier.append(u)
        return frozenset(good)

    @cached_property
    def live(self) -> frozenset[int]:
        """States with a nonempty residual language."""
        return self._states_reaching(True)

    @cached_property
    def co_live(self) -> frozenset[int]:
        """States whose residual language is not everything."""
        return self._states_reaching(False)

    def verdict(self, prefix: Sequence[int]) -> PrefixVerdict:
        s = self.run(prefix)
        if s not in self.live:
            return PrefixVerdict.REJECTED
        if s not in self.co_live:
            return PrefixVerdict.ACCEPTED
        return PrefixVerdict.UNKNOWN

    def is_empty(self) -> bool:
        return self.initial not in self.live

    def is_universal(self) -> bool:
        return self.initial not in self.co_live

    def find_member(self, accepted: bool = True, state: int | None = None) -> UPStream | None:
        """An ultimately periodic witness inside (or outside) the language."""
        g = self._graph(self.initial if state is None else state)
        lasso = find_cycle(g, [(self.priority.__getitem__, accepted)])
        if lasso is None:
            return None
        return UPStream(lasso.prefix, lasso.cycle)

    @cached_property
    def priority_set(self) -> frozenset[int]:
        reach = self._graph(self.initial).nodes
        return frozenset(self.priority[s] for s in reach)

    def is_safety(self) -> bool:
        """Closed language: every run that never leaves the live states is accepted."""
        nodes, edges = self._full_graph
        live = set(self.live)
        inner = [e for e in edges if e[0] in live and e[2] in live]
        stack = _sccs(live, inner)
        while stack:
            comp = stack.pop()
            low = min(self.priority[v] for v in comp)
            if low % 2:
                return False
            stack.extend(_sccs({v for v in comp if self.priority[v] != low}, inner))
        return True

    def is_buchi(self) -> bool:
        return self.priority_set <= {0, 1}

    # ------------------------------------------------------------ encoding

    def to_json(self) -> dict:
        edges = [[s, d, t] for (s, d), t in sorted(self.edges.items())]
        edges += [[s, OTHER, t] for s, t in enumerate(self.default)]
        return {"states": self.n_states, "initial": self.initial, "edges": edges, "priority": list(self.priority)}

    @classmethod
    def from_json(cls, data) -> "ParityAutomaton":
        if isinstance(data, str):
            data = json.loads(data)
        edges, default = {}, {}
        for s, d, t in data["edges"]:
            if d == OTHER:
                default[int(s)] = int(t)
            else:
                edges[(int(s), int(d))] = int(t)
        return cls(data["states"], data.get("initial", 0), edges, default, data["priority"], data.get("name", ""))

    def serialize(self) -> list[int]:
        """Flat digit code: n, initial, priorities, then per state the
        otherwise target, the number of explicit edges and (digit, target) pairs."""
        out = [self.n_states, self.initial, *self.priority]
        for s in range(self.n_states):
            mine = sorted((d, t) for (q, d), t in self.edges.items() if q == s)
            out += [self.default[s], len(mine)]
            for d, t in mine:
                out += [d, t]
        return out

    @classmethod
    def deserialize(cls, digits: Sequence[int]) -> "ParityAutomaton | None":
        it = iter(digits)
        try:
            n = next(it)
            init = next(it)
            prio = [next(it) for _ in range(n)]
            edges, default = {}, []
            for s in range(n):
                default.append(next(it))
                for _ in range(next(it)):
                    d = next(it)
                    edges[(s, d)] = next(it)
            if next(it, None) is not None:
                return None
            return cls(n, init, edges, default, prio)
        except (StopIteration, InvalidParameter):
            return None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<ParityAutomaton{label} states={self.n_states}>"

    def equivalent_on(self, other: "ParityAutomaton", samples: Sequence[UPStream]) -> bool:
        return all(self.accepts(x) == other.accepts(x) for x in samples)


def membership_up(A: ParityAutomaton, x: UPStream) -> bool:
    return A.accepts(x)


def prefix_verdict(A: ParityAutomaton, s: Sequence[int]) -> PrefixVerdict:
    return A.verdict(s)


# ---------------------------------------------------------------- gallery


def full_space() -> ParityAutomaton:
    return ParityAutomaton(1, 0, {}, [0], [0], name="full")


def empty_set() -> ParityAutomaton:
    return ParityAutomaton(1, 0, {}, [0], [1], name="empty")


def zero_stream_set() -> ParityAutomaton:
    """Z: the closed set containing only the zero stream."""
    return ParityAutomaton(2, 0, {(0, 0): 0}, [1, 1], [0, 1], name="Z")


def inf_zeros_set() -> ParityAutomaton:
    """INF0: infinitely many zeros."""
    return ParityAutomaton(2, 1, {(0, 0): 0, (1, 0): 0}, [1, 1], [0, 1], name="INF0")


def cylinder(s: Sequence[int]) -> ParityAutomaton:
    """N_s: all streams extending ``s``."""
    A = prepend(s, full_space())
    A.name = f"N{list(s)}"
    return A


def digit_equals(n: int, m: int) -> ParityAutomaton:
    """{x : x(n) = m}."""
    default = [i + 1 for i in range(n)] + [n + 2, n + 1, n + 2]
    prio = [0] * (n + 2) + [1]
    return ParityAutomaton(n + 3, 0, {(n, m): n + 1}, default, prio, name=f"x({n})={m}")


# ---------------------------------------------------------------- boolean ops


def complement(A: ParityAutomaton) -> ParityAutomaton:
    return ParityAutomaton(A.n_states, A.initial, A.edges, A.default, [p + 1 for p in A.priority],
                           name=f"not {A.name}" if A.name else "")


def normalize(A: ParityAutomaton) -> ParityAutomaton:
    """Drop unreachable states and compress priorities to a minimal range."""
    reach = sorted(A._graph(A.initial).nodes)
    index = {s: i for i, s in enumerate(reach)}
    levels = sorted({A.priority[s] for s in reach})
    rank, cur = {}, None
    for p in levels:
        if cur is None:
            cur = p % 2
        elif p % 2 != cur % 2:
            cur += 1
        rank[p] = cur
    edges = {(index[s], d): index[t] for (s, d), t in A.edges.items() if s in index and t != A.default[s]}
    default = [index[A.default[s]] for s in reach]
    return ParityAutomaton(len(reach), index[A.initial], edges, default, [rank[A.priority[s]] for s in reach], A.name)


def intersection(A: ParityAutomaton, B: ParityAutomaton) -> ParityAutomaton:
    """Product with a latest-appearance record over the two priority sets."""
    A, B = normalize(A), normalize(B)
    items = [("a", p) for p in sorted(set(A.priority))] + [("b", p) for p in sorted(set(B.priority))]
    N = len(items)

    def advance(record, pa, pb):
        hit = max(record.index(("a", pa)), record.index(("b", pb)))
        front = [("a", pa), ("b", pb)]
        rest = [it for it in record if it not in front]
        new = tuple(front + rest)
        seen = new[: hit + 1]
        amin = min(p for t, p in seen if t == "a")
        bmin = min(p for t, p in seen if t == "b")
        good = amin % 2 == 0 and bmin % 2 == 0
        return new, 2 * (N - 1 - hit) + (0 if good else 1)

    init = (A.initial, B.initial, tuple(items), 2 * N - 1)
    digits = sorted(set(A.alphabet) | set(B.alphabet))
    fresh = max(digits) + 1

    def succ(node, d):
        qa, qb, record, _ = node
        ta, tb = A.step(qa, d), B.step(qb, d)
        rec, prio = advance(record, A.priority[ta], B.priority[tb])
        return (ta, tb, rec, prio)

    g = explore(init, lambda v: [(d, succ(v, d)) for d in digits + [fresh]])
    index = {v: i for i, v in enumerate(g.nodes)}
    edges = {}
    default = [index[succ(v, fresh)] for v in g.nodes]
    for v in g.nodes:
        for d in digits:
            t = index[succ(v, d)]
            if t != default[index[v]]:
                edges[(index[v], d)] = t
    C = ParityAutomaton(len(g.nodes), 0, edges, default, [v[3] for v in g.nodes],
                        name=f"({A.name} and {B.name})")
    return normalize(C)


def union(A: ParityAutomaton, B: ParityAutomaton) -> ParityAutomaton:
    C = complement(intersection(complement(A), complement(B)))
    C.name = f"({A.name} or {B.name})"
    return normalize(C)


def prepend(s: Sequence[int], A: ParityAutomaton) -> ParityAutomaton:
    """{s + x : x in A}."""
    k = len(s)
    if k == 0:
        return A
    sink = k + A.n_states
    edges = {(i, d): i + 1 for i, d in enumerate(s)}
    edges.update({(q + k, d): t + k for (q, d), t in A.edges.items()})
    default = [sink] * k + [t + k for t in A.default] + [sink]
    prio = [0] * k + list(A.priority) + [1]
    return normalize(ParityAutomaton(sink + 1, 0, edges, default, prio, name=f"{list(s)}^{A.name}"))


# ---------------------------------------------------------------- control sets


@dataclass(frozen=True)
class ControlSet:
    automaton: ParityAutomaton
    declared_rank: str = "user"
    name: str = ""
    outside: UPStream | None = None

    def __post_init__(self):
        if self.declared_rank not in ("closed", "pi02", "user"):
            raise InvalidParameter(f"unknown rank tag {self.declared_rank!r}")
        if self.declared_rank == "closed" and not self.automaton.is_safety():
            raise InvalidParameter("a closed control set needs a safety automaton")
        if self.declared_rank == "pi02" and not self.automaton.is_buchi():
            raise InvalidParameter("a pi02 control set needs a Buchi automaton")
        if self.outside is None:
            y = self.automaton.find_member(accepted=False)
            if y is None:
                raise InvalidParameter("a control set must miss some stream")
            object.__setattr__(self, "outside", y)
        elif self.automaton.accepts(self.outside):
            raise InvalidParameter("the designated outside stream lies in the set")
        if not self.name:
            object.__setattr__(self, "name", self.automaton.name)

    def __contains__(self, x: UPStream) -> bool:
        return self.automaton.accepts(x)

    def inside(self) -> UPStream:
        y = self.automaton.find_member(accepted=True)
        if y is None:
            raise InvalidParameter("empty control set")
        return y

    def to_json(self) -> dict:
        return {"automaton": self.automaton.to_json(), "rank": self.declared_rank, "name": self.name,
                "outside": self.outside.to_json()}

    @classmethod
    def from_json(cls, data) -> "ControlSet":
        outside = UPStream.from_json(data["outside"]) if "outside" in data else None
        return cls(ParityAutomaton.from_json(data["automaton"]), data.get("rank", "user"), data.get("name", ""),
                   outside)


def canonical_pi1() -> ControlSet:
    return ControlSet(zero_stream_set(), "closed", "Z", UPStream((), (1,)))


def canonical_pi2() -> ControlSet:
    return ControlSet(inf_zeros_set(), "pi02", "INF0", UPStream((), (1,)))


# ---------------------------------------------------------------- reductions


def reduce_safety_to_Z(A: ParityAutomaton) -> MealyStrategy:
    """Letter-to-letter reduction of a closed set to Z: 0 while alive, then 1."""
    if not A.is_safety():
        raise UnsupportedRegionShape(f"{A!r} is not a safety automaton")
    sink = A.n_states
    live = A.live
    table, default = {}, {}

    def edge(t):
        return (t, Nat(0)) if t in live else (sink, Nat(1))

    for (s, d), t in A.edges.items():
        table[(s, d)] = edge(t)
    for s in range(A.n_states):
        default[s] = edge(A.default[s])
    default[sink] = (sink, Nat(1))
    return MealyStrategy(A.n_states + 1, A.initial if A.initial in live else sink, table, default,
                         name=f"safety->Z {A.name}")


def reduce_buchi_to_INF0(A: ParityAutomaton) -> MealyStrategy:
    """Reduction of a Buchi set to INF0: 0 on entering a priority-0 state, else 1."""
    if not A.is_buchi():
        raise UnsupportedRegionShape(f"{A!r} is not a Buchi automaton")

    def edge(t):
        return (t, Nat(0 if A.priority[t] == 0 else 1))

    table = {(s, d): edge(t) for (s, d), t in A.edges.items()}
    default = {s: edge(A.default[s]) for s in range(A.n_states)}
    return MealyStrategy(A.n_states, A.initial, table, default, name=f"buchi->INF0 {A.name}")


def as_buchi(A: ParityAutomaton) -> ParityAutomaton | None:
    """A Buchi-shaped (priorities 0/1) copy when the normalized form allows it."""
    B = normalize(A)
    if B.is_buchi():
        return B
    if B.is_safety():
        live = B.live
        return ParityAutomaton(B.n_states, B.initial, B.edges, B.default,
                               [0 if s in live else 1 for s in range(B.n_states)], B.name)
    return None


def co_buchi_slice(A: ParityAutomaton, n: int) -> ParityAutomaton:
    """Closed slice of a co-Buchi set (priorities 1/2): the run's last visit to
    a priority-1 state happens at step ``n - 1`` (``n = 0``: never)."""
    B = normalize(A)
    if not B.priority_set <= {1, 2}:
        raise UnsupportedRegionShape(f"{A!r} is not co-Buchi shaped")
    # states (q, i): i counts steps, capped at n; one extra dead state
    cells = list(itertools.product(range(B.n_states), range(n + 1)))
    index = {c: j for j, c in enumerate(cells)}
    dead = len(cells)

    def target(q, i, d):
        t = B.step(q, d)
        bad = B.priority[t] == 1
        if i + 1 == n and not bad:
            return dead
        if i >= n and bad:
            return dead
        return index[(t, min(i + 1, n))]

    digits = sorted({d for (_, d) in B.edges})
    fresh = (digits[-1] + 1) if digits else 0
    edges, default = {}, []
    for (q, i) in cells:
        default.append(target(q, i, fresh))
        for d in digits:
            edges[(index[(q, i)], d)] = target(q, i, d)
    default.append(dead)
    prio = [0] * len(cells) + [1]
    return normalize(ParityAutomaton(dead + 1, index[(B.initial, 0)], edges, default, prio,
                                     name=f"{A.name}|slice{n}"))
