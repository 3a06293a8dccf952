"""Shared test utilities: independent oracles and random-instance builders.

Everything here recomputes results straight from first principles (part
routings, vertex subsets, set-partition enumeration) so the package code is
checked against genuinely independent implementations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from cellform import Instance, Part


def make_instance(machine_count, max_cell_size, routings,
                  cohabit=(), separate=()):
    """Instance from (volume, routing) pairs with 1-based machine indices."""
    parts = tuple(Part(Fraction(vol), tuple(i - 1 for i in routing))
                  for vol, routing in routings)
    norm = lambda pairs: frozenset(
        (min(a, b) - 1, max(a, b) - 1) for a, b in pairs)
    return Instance(machine_count, max_cell_size, parts,
                    norm(cohabit), norm(separate))


def random_instance(rng: random.Random, machine_count=None, *,
                    max_parts=12, max_cell_size=None, constraints=True):
    """Random valid instance; optionally with disjoint SC/SN pairs."""
    m = machine_count if machine_count is not None else rng.randint(3, 9)
    n = max_cell_size if max_cell_size is not None else rng.randint(1, m)
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        length = rng.randint(2, 6)
        routing = [rng.randrange(m)]
        while len(routing) < length:
            step = rng.randrange(m - 1)
            if step >= routing[-1]:
                step += 1
            routing.append(step)
        volume = Fraction(rng.randint(0, 8), rng.randint(1, 3))
        parts.append(Part(volume, tuple(routing)))
    cohabit: set[tuple[int, int]] = set()
    separate: set[tuple[int, int]] = set()
    if constraints:
        all_pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        rng.shuffle(all_pairs)
        for pair in all_pairs[:rng.randint(0, 3)]:
            (separate if rng.random() < 0.5 else cohabit).add(pair)
    return Instance(m, n, tuple(parts), frozenset(cohabit),
                    frozenset(separate))


def vertex_cut_mask(graph, vertex_set) -> int:
    """Edges with exactly one endpoint in vertex_set, as an int mask."""
    inside = set(vertex_set)
    mask = 0
    for i, e in enumerate(graph.edges):
        if (e.u in inside) != (e.v in inside):
            mask |= 1 << i
    return mask


def iter_set_partitions(m: int):
    """All set partitions of range(m), as tuples of sorted tuples."""
    labels = [0] * m
    out = []

    def rec(v: int, used: int):
        if v == m:
            groups: dict[int, list[int]] = {}
            for vertex, lab in enumerate(labels):
                groups.setdefault(lab, []).append(vertex)
            out.append(tuple(tuple(g) for g in groups.values()))
            return
        for lab in range(used + 1):
            labels[v] = lab
            rec(v + 1, used + (lab == used))

    rec(0, 0)
    return out


def partition_traffic(inst: Instance, cells) -> Fraction:
    """Intercell traffic recomputed directly from routings (no graph)."""
    label = {}
    for ci, cell in enumerate(cells):
        for v in cell:
            label[v] = ci
    total = Fraction(0)
    for part in inst.parts:
        for a, b in zip(part.routing, part.routing[1:]):
            if label[a] != label[b]:
                total += part.volume
    return total


def partition_feasible(inst: Instance, cells) -> bool:
    label = {}
    for ci, cell in enumerate(cells):
        if len(cell) > inst.max_cell_size:
            return False
        for v in cell:
            label[v] = ci
    if any(label[a] != label[b] for a, b in inst.cohabit):
        return False
    if any(label[a] == label[b] for a, b in inst.separate):
        return False
    return True


def brute_force_optimum(inst: Instance):
    """(best traffic, one optimal cell tuple) or (None, None) if infeasible.

    Full enumeration with no pruning; usable up to m ~ 8.
    """
    best = None
    best_cells = None
    for cells in iter_set_partitions(inst.machine_count):
        if not partition_feasible(inst, cells):
            continue
        t = partition_traffic(inst, cells)
        if best is None or t < best:
            best, best_cells = t, cells
    return best, best_cells
