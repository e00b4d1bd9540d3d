"""Weighted undirected graphs and exact shortest-path queries.

Costs are exact rationals and may be zero. Equal-cost shortest paths are
tie-broken by the lexicographically smallest edge-id sequence, so every
query is reproducible: adversarial analyses elsewhere in the package rely
on byte-identical answers for identical inputs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidGraph, MalformedPath


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    cost: Fraction

    def other(self, node: str) -> str:
        return self.v if node == self.u else self.u


@dataclass(frozen=True)
class PathWitness:
    """An s-t path given as an ordered edge-id sequence plus its total cost."""

    edges: tuple[str, ...]
    total: Fraction


@dataclass(frozen=True)
class Graph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    s: str
    t: str
    _by_id: dict = field(init=False, repr=False, compare=False)
    _adj: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_id = {}
        adj: dict[str, list[Edge]] = {n: [] for n in self.nodes}
        for e in self.edges:
            by_id[e.id] = e
            if e.u in adj:
                adj[e.u].append(e)
            if e.v in adj and e.v != e.u:
                adj[e.v].append(e)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_adj", adj)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise MalformedPath(f"unknown edge id {edge_id!r}") from None

    def incident(self, node: str) -> list[Edge]:
        return self._adj.get(node, [])


def validate(g: Graph) -> list[str]:
    """Return every violated graph invariant; an empty report means valid."""
    report = []
    node_set = set(g.nodes)
    if g.s == g.t:
        report.append("source equals sink")
    if g.s not in node_set:
        report.append(f"source {g.s!r} not among nodes")
    if g.t not in node_set:
        report.append(f"sink {g.t!r} not among nodes")
    seen_ids = set()
    for e in g.edges:
        if e.id in seen_ids:
            report.append(f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        if e.cost < 0:
            report.append(f"edge {e.id!r} has negative cost {e.cost}")
        if e.u == e.v:
            report.append(f"edge {e.id!r} is a self-loop at {e.u!r}")
        if e.u not in node_set or e.v not in node_set:
            report.append(f"edge {e.id!r} touches unknown node")
    return report


def require_valid(g: Graph) -> None:
    report = validate(g)
    if report:
        raise InvalidGraph("; ".join(report))


def shortest_path(g: Graph, excluded: frozenset[str] | set[str] = frozenset()) -> PathWitness | None:
    """Minimum-cost s-t path avoiding `excluded` edge ids, or None if cut off.

    Ties between equal-cost paths go to the lexicographically smallest
    edge-id sequence. Dijkstra labels carry (cost, edge-id sequence); a node
    settles on its first pop, which yields the lex-minimal min-cost walk.
    With no zero-cost cycles (labels only ever extend settled nodes) the
    walk is a simple path.
    """
    start = (Fraction(0), (), g.s)
    heap = [start]
    settled: set[str] = set()
    while heap:
        cost, seq, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        if node == g.t:
            return PathWitness(edges=seq, total=cost)
        for e in g.incident(node):
            if e.id in excluded:
                continue
            nxt = e.other(node)
            if nxt in settled:
                continue
            heapq.heappush(heap, (cost + e.cost, seq + (e.id,), nxt))
    return None


def path_cost(g: Graph, p: PathWitness) -> Fraction:
    """Re-sum a path's edge costs, validating it is an s-t chain in g."""
    if not p.edges:
        raise MalformedPath("empty edge list cannot join distinct s and t")
    total = Fraction(0)
    node = g.s
    for eid in p.edges:
        e = g.edge(eid)
        if node not in (e.u, e.v):
            raise MalformedPath(f"edge {eid!r} does not continue from node {node!r}")
        node = e.other(node)
        total += e.cost
    if node != g.t:
        raise MalformedPath(f"path ends at {node!r}, not at sink {g.t!r}")
    return total


def make_graph(nodes, edges, s, t) -> Graph:
    """Convenience constructor from (id, u, v, cost) tuples."""
    es = tuple(Edge(id=str(i), u=u, v=v, cost=Fraction(c)) for (i, u, v, c) in edges)
    return Graph(nodes=tuple(nodes), edges=es, s=s, t=t)
