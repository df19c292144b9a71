"""Reachable product graphs and lasso search over them.

Every exact check in the package (emptiness, universality, legality,
activation cover) reduces to: is there a reachable cycle whose nodes and
edges satisfy some parity and edge conditions?  A cycle that runs through a
whole strongly connected set realizes the minimum priority of that set, so
repeatedly discarding states that would make a parity requirement fail is
both sound and complete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx

Edge = tuple[Hashable, object, Hashable]


@dataclass
class ProductGraph:
    init: Hashable
    nodes: list = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    parent: dict = field(default_factory=dict)

    def path_to(self, node) -> list:
        """Edge labels along the BFS tree from ``init`` to ``node``."""
        labels = []
        while node != self.init:
            src, lab = self.parent[node]
            labels.append(lab)
            node = src
        labels.reverse()
        return labels


def explore(init, successors: Callable[[Hashable], Iterable[tuple[object, Hashable]]],
            limit: int = 200_000) -> ProductGraph:
    g = ProductGraph(init)
    seen = {init}
    queue = deque([init])
    while queue:
        u = queue.popleft()
        g.nodes.append(u)
        for lab, v in successors(u):
            g.edges.append((u, lab, v))
            if v not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("product graph exceeds exploration limit")
                seen.add(v)
                g.parent[v] = (u, lab)
                queue.append(v)
    return g


@dataclass(frozen=True)
class Lasso:
    prefix: list
    cycle: list


def _sccs(nodes: set, edges: Sequence[Edge]) -> list[set]:
    dg = nx.DiGraph()
    dg.add_nodes_from(nodes)
    for u, _, v in edges:
        if u in nodes and v in nodes:
            dg.add_edge(u, v)
    out = []
    for comp in nx.strongly_connected_components(dg):
        if len(comp) > 1 or any(dg.has_edge(v, v) for v in comp):
            out.append(set(comp))
    return out


def _tour(start, comp: set, edges: Sequence[Edge], required: Sequence[Edge]) -> list:
    """Labels of a closed walk from ``start`` through every node of ``comp``
    and every edge in ``required``."""
    dg = nx.MultiDiGraph()
    for u, lab, v in edges:
        if u in comp and v in comp:
            dg.add_edge(u, v, label=lab)

    def walk(a, b) -> list:
        path = nx.shortest_path(dg, a, b)
        return [next(iter(dg.get_edge_data(x, y).values()))["label"] for x, y in zip(path, path[1:])]

    labels: list = []
    here = start
    targets: list = [("node", v) for v in sorted(comp, key=repr) if v != start]
    targets += [("edge", e) for e in required]
    for kind, t in targets:
        if kind == "node":
            labels += walk(here, t)
            here = t
        else:
            u, lab, v = t
            labels += walk(here, u)
            labels.append(lab)
            here = v
    if here != start or not labels:
        if here == start:
            # a single node with a self loop
            loop = next(lab for u, lab, v in edges if u == start and v == start)
            labels.append(loop)
        else:
            labels += walk(here, start)
    return labels


def find_cycle(
    graph: ProductGraph,
    parity: Sequence[tuple[Callable[[Hashable], int], bool]] = (),
    edge_ok: Callable[[object], bool] | None = None,
    scc_checks: Sequence[Callable[[list[Edge]], list[Edge] | None]] = (),
) -> Lasso | None:
    """Search a reachable cycle satisfying all conditions.

    ``parity`` holds ``(priority_fn, want_even)`` pairs: the least priority
    seen along the cycle must be even (resp. odd).  ``edge_ok`` restricts
    which edges the cycle may use.  Each ``scc_check`` gets the allowed edges
    of a candidate component and returns edges the cycle must include, or
    ``None`` if the component is unusable.
    """
    allowed = [e for e in graph.edges if edge_ok is None or edge_ok(e[1])]
    depth = {v: i for i, v in enumerate(graph.nodes)}
    stack = _sccs(set(graph.nodes), allowed)
    while stack:
        comp = stack.pop()
        drop = set()
        for prio, want_even in parity:
            low = min(prio(v) for v in comp)
            if (low % 2 == 0) != want_even:
                drop |= {v for v in comp if prio(v) == low}
        if drop:
            stack.extend(_sccs(comp - drop, allowed))
            continue
        inner = [e for e in allowed if e[0] in comp and e[2] in comp]
        required: list[Edge] = []
        for check in scc_checks:
            got = check(inner)
            if got is None:
                break
            required += got
        else:
            start = min(comp, key=depth.__getitem__)
            return Lasso(graph.path_to(start), _tour(start, comp, inner, required))
    return None


def find_nonpositive_cycle(graph: ProductGraph, weight: Callable[[object], int]) -> Lasso | None:
    """A reachable cycle whose total weight is <= 0, if any."""
    n = len(graph.nodes) + 1
    best: dict[tuple, tuple[int, object]] = {}
    for u, lab, v in graph.edges:
        w = weight(lab) * n - 1
        if (u, v) not in best or w < best[(u, v)][0]:
            best[(u, v)] = (w, lab)
    for (u, v), (w, lab) in best.items():
        if u == v and w < 0:
            return Lasso(graph.path_to(u), [lab])
    dg = nx.DiGraph()
    dg.add_nodes_from(graph.nodes)
    for (u, v), (w, lab) in best.items():
        if u != v:  # self loops are settled above
            dg.add_edge(u, v, weight=w, label=lab)
    try:
        cyc = nx.find_negative_cycle(dg, graph.init)
    except nx.NetworkXError:
        return None
    start = cyc[0]
    labels = [dg[a][b]["label"] for a, b in zip(cyc, cyc[1:])]
    return Lasso(graph.path_to(start), labels)
