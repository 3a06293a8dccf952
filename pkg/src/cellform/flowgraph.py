"""Machine flow graph built from part routings.

The traffic between machines a and b is the volume-weighted count of adjacent
occurrences of the two machines (in either order) across all routings. The
flow graph has one vertex per machine and an edge for every machine pair with
positive traffic, plus edges for cohabitation/separation pairs (whatever
their traffic) and, if that leaves the graph disconnected, zero-weight
fictive edges that stitch the components together so that cut-based encodings
can reach every partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .instance import Instance


class TrafficMatrix:
    """Symmetric machine-to-machine traffic with a zero diagonal."""

    def __init__(self, machine_count: int,
                 entries: dict[tuple[int, int], Fraction]):
        self.machine_count = machine_count
        self._entries = {k: v for k, v in entries.items() if v != 0}

    def entry(self, a: int, b: int) -> Fraction:
        if a == b:
            return Fraction(0)
        key = (a, b) if a < b else (b, a)
        return self._entries.get(key, Fraction(0))

    def nonzero(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Pairs with positive traffic, sorted by (low, high) endpoint."""
        return sorted(self._entries.items())

    def total(self) -> Fraction:
        """Sum of traffic over unordered pairs (the flow bound B)."""
        return sum(self._entries.values(), Fraction(0))

    def as_dense(self) -> list[list[Fraction]]:
        m = self.machine_count
        rows = [[Fraction(0)] * m for _ in range(m)]
        for (a, b), t in self._entries.items():
            rows[a][b] = t
            rows[b][a] = t
        return rows


def compute_traffic(inst: Instance) -> TrafficMatrix:
    """Accumulate volume-weighted adjacent-machine counts over all routings.

    A routing (M1, M2, M1) with volume 2 contributes 4 to the (M1, M2)
    traffic: two adjacent occurrences, each weighted by the volume.
    """
    entries: dict[tuple[int, int], Fraction] = {}
    for part in inst.parts:
        for a, b in zip(part.routing, part.routing[1:]):
            key = (a, b) if a < b else (b, a)
            entries[key] = entries.get(key, Fraction(0)) + part.volume
    return TrafficMatrix(inst.machine_count, entries)


@dataclass(frozen=True)
class Edge:
    """Undirected edge with endpoints u < v (0-based machines)."""

    u: int
    v: int
    weight: Fraction
    in_sc: bool = False
    in_sn: bool = False
    fictive: bool = False


@dataclass(frozen=True)
class FlowGraph:
    """Connected machine graph; edges in canonical (u, v) ascending order."""

    machine_count: int
    edges: tuple[Edge, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (edge index, other endpoint)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in
                                            range(self.machine_count)]
        for i, e in enumerate(self.edges):
            adj[e.u].append((i, e.v))
            adj[e.v].append((i, e.u))
        return adj


def build_graph(inst: Instance,
                traffic: TrafficMatrix | None = None) -> FlowGraph:
    """Build the flow graph for an instance.

    Edge set: pairs with positive traffic, plus cohabitation and separation
    pairs (a pair that also carries traffic yields a single edge with the
    flags set). If the result is disconnected, the lowest vertex of the first
    component (by lowest contained vertex) is linked to the lowest vertex of
    every other component with zero-weight fictive edges. Edges are sorted
    ascending by (u, v).
    """
    if traffic is None:
        traffic = compute_traffic(inst)
    m = inst.machine_count
    keys = {pair for pair, _ in traffic.nonzero()}
    keys |= inst.cohabit | inst.separate
    edges = [Edge(a, b, traffic.entry(a, b),
                  in_sc=(a, b) in inst.cohabit,
                  in_sn=(a, b) in inst.separate)
             for a, b in keys]

    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in keys:
        parent[find(a)] = find(b)
    components: dict[int, int] = {}
    for v in range(m):
        root = find(v)
        components.setdefault(root, v)
    reps = sorted(components.values())
    for other in reps[1:]:
        edges.append(Edge(reps[0], other, Fraction(0), fictive=True))

    edges.sort(key=lambda e: (e.u, e.v))
    return FlowGraph(m, tuple(edges))
