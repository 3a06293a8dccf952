"""Cut space of a connected graph over GF(2).

A cut is the set of edges with exactly one endpoint in some vertex subset.
Cuts, viewed as edge-incidence bit vectors, are closed under XOR and form a
vector space of dimension m-1 for a connected graph on m vertices. The basis
used here is made of the single-vertex cuts of every vertex except one
excluded vertex (the highest-indexed one by default). Each nonzero integer
n in [1, 2^(m-1)-1] then names a distinct nonempty cut: bit i-1 of n selects
the i-th basis cut into the XOR. This gives a bijection between integers and
cuts that the genetic encodings rely on.

Edge masks are plain ints: bit i corresponds to edge i of the graph's
canonical edge order. Removing the edges of an OR-union of cuts splits the
graph into cells; ``decode_partition`` recovers them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flowgraph import FlowGraph


def mask_from_bits(bits) -> int:
    """Pack an iterable of 0/1 flags (edge 0 first) into an int mask."""
    mask = 0
    for i, b in enumerate(bits):
        if b:
            mask |= 1 << i
    return mask


def bits_from_mask(mask: int, width: int) -> tuple[int, ...]:
    """Unpack an int mask into a tuple of 0/1 flags of the given width."""
    return tuple((mask >> i) & 1 for i in range(width))


@dataclass(frozen=True)
class Cut:
    """A cut: its edge-incidence mask and its integer name in the basis."""

    edge_mask: int
    basis_index: int


@dataclass(frozen=True)
class CutBasis:
    """Basis of single-vertex cuts, one per vertex except ``excluded``."""

    cuts: tuple[Cut, ...]
    vertex_count: int
    edge_count: int
    excluded: int

    @property
    def dimension(self) -> int:
        return len(self.cuts)

    @property
    def max_index(self) -> int:
        """Largest valid cut name: 2^(m-1) - 1."""
        return (1 << self.dimension) - 1


def build_basis(g: FlowGraph, excluded: int | None = None) -> CutBasis:
    """Build the single-vertex cut basis of a connected flow graph.

    The i-th basis cut (i starting at 1, vertices in ascending order,
    skipping ``excluded``) isolates one vertex and carries basis_index
    2^(i-1). ``excluded`` defaults to the highest-indexed vertex.
    """
    m = g.machine_count
    if excluded is None:
        excluded = m - 1
    if not 0 <= excluded < m:
        raise ValueError(f"excluded vertex {excluded} out of range 0..{m - 1}")
    incidence = [0] * m
    for i, e in enumerate(g.edges):
        incidence[e.u] |= 1 << i
        incidence[e.v] |= 1 << i
    cuts = []
    index = 1
    for v in range(m):
        if v == excluded:
            continue
        cuts.append(Cut(incidence[v], index))
        index <<= 1
    return CutBasis(tuple(cuts), m, g.edge_count, excluded)


def xor_cuts(a: Cut, b: Cut) -> Cut:
    """XOR of two cuts; masks and basis names both combine by XOR."""
    return Cut(a.edge_mask ^ b.edge_mask, a.basis_index ^ b.basis_index)


def cut_from_index(basis: CutBasis, n: int) -> Cut:
    """The cut named by integer n: XOR of the basis cuts on n's set bits.

    n = 0 names the empty cut (all-zero mask).
    """
    if not 0 <= n <= basis.max_index:
        raise ValueError(
            f"cut index {n} out of range 0..{basis.max_index}")
    mask = 0
    rest = n
    pos = 0
    while rest:
        if rest & 1:
            mask ^= basis.cuts[pos].edge_mask
        rest >>= 1
        pos += 1
    return Cut(mask, n)


def union_cuts(cuts) -> int:
    """OR-union of cut edge masks; empty input gives the zero mask."""
    mask = 0
    for c in cuts:
        mask |= c.edge_mask
    return mask


_ENUM_GUARD = 20


def enumerate_all_cuts(basis: CutBasis) -> list[Cut]:
    """All 2^(m-1)-1 cuts of the graph, in increasing basis_index order.

    Guarded to m <= 20 vertices; beyond that the enumeration explodes.
    """
    if basis.vertex_count > _ENUM_GUARD:
        raise ValueError(
            f"vertex count {basis.vertex_count} exceeds the enumeration "
            f"guard ({_ENUM_GUARD})")
    return [cut_from_index(basis, n) for n in range(1, basis.max_index + 1)]


@dataclass(frozen=True)
class Partition:
    """Machine cells, canonically ordered by each cell's lowest machine."""

    cells: tuple[tuple[int, ...], ...]

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def cell_of(self, v: int) -> int:
        for i, cell in enumerate(self.cells):
            if v in cell:
                return i
        raise KeyError(v)

    def labels(self, machine_count: int) -> list[int]:
        """Cell index per machine, as a dense list."""
        lab = [-1] * machine_count
        for i, cell in enumerate(self.cells):
            for v in cell:
                lab[v] = i
        return lab


def _canonical_cells(groups) -> Partition:
    cells = sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0])
    return Partition(tuple(cells))


def partition_from_labels(labels) -> Partition:
    """Partition from any per-machine label sequence (labels need not be
    canonical; the cells come out in canonical order)."""
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(v)
    return _canonical_cells(groups.values())


def decode_partition(g: FlowGraph, edge_mask: int) -> Partition:
    """Cells left after removing the masked edges from the graph.

    For a mask that is a union of cuts, every masked edge ends up joining two
    different cells and every unmasked edge stays inside one.
    """
    parent = list(range(g.machine_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(g.edges):
        if not (edge_mask >> i) & 1:
            parent[find(e.u)] = find(e.v)
    groups: dict[int, list[int]] = {}
    for v in range(g.machine_count):
        groups.setdefault(find(v), []).append(v)
    return _canonical_cells(groups.values())


def boundary_mask(g: FlowGraph, partition: Partition) -> int:
    """Mask of the edges whose endpoints lie in different cells."""
    labels = partition.labels(g.machine_count)
    mask = 0
    for i, e in enumerate(g.edges):
        if labels[e.u] != labels[e.v]:
            mask |= 1 << i
    return mask
