"""Solution evaluation: traffic, constraint violations, penalized fitness.

The quality of a partition is its intercellular traffic Z (weights of the
edges marked as crossing cells). For maximization the solvers use

    Y = (B - Z) + (u - v) * B

where B bounds Z (the sum of all flows, or 1 if that is zero), u is the
constraint count m + |SC| + |SN| and v the number of violated constraints
(oversize cells, split cohabitation pairs, united separation pairs). Any
solution violating fewer constraints then outranks every solution violating
more, and among equal violation counts lower traffic wins. An optional
power transform Y^gamma sharpens selection while preserving order.

``PopulationEvaluator`` is the vectorized engine the genetic algorithms run
on: one scipy connected-components call per generation over a block-diagonal
graph holding the whole population. Its results match the scalar
``evaluate`` exactly (weights are scaled to integers by their common
denominator, so no rounding is involved).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .cuts import Partition, boundary_mask, decode_partition
from .flowgraph import FlowGraph
from .instance import Instance


@dataclass(frozen=True)
class FitnessConfig:
    """Fitness parameters: bound B, constraint count u, tuning selector."""

    bound: Fraction
    constraint_count: int
    tuning: str = "identity"
    gamma: float = 2.0

    def __post_init__(self):
        if self.bound <= 0:
            raise ValueError(f"bound must be positive, got {self.bound}")
        if self.constraint_count < 0:
            raise ValueError("constraint count must be non-negative")
        if self.tuning not in ("identity", "power"):
            raise ValueError(f"unknown tuning {self.tuning!r}")
        if self.tuning == "power" and not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


def make_fitness_config(g: FlowGraph, inst: Instance,
                        tuning: str = "identity",
                        gamma: float = 2.0) -> FitnessConfig:
    """Config for an instance: B = total flow (1 if zero), u = m+|SC|+|SN|."""
    bound = g.total_weight()
    if bound == 0:
        bound = Fraction(1)
    u = inst.machine_count + len(inst.cohabit) + len(inst.separate)
    return FitnessConfig(bound, u, tuning, gamma)


def intercellular_traffic(g: FlowGraph, edge_mask: int) -> Fraction:
    """Sum of the weights of the masked (intercellular) edges."""
    total = Fraction(0)
    for i, e in enumerate(g.edges):
        if (edge_mask >> i) & 1:
            total += e.weight
    return total


def violation_breakdown(partition: Partition,
                        inst: Instance) -> tuple[int, int, int]:
    """(oversize cells, split cohabit pairs, united separate pairs)."""
    labels = partition.labels(inst.machine_count)
    oversize = sum(1 for cell in partition.cells
                   if len(cell) > inst.max_cell_size)
    split = sum(1 for a, b in inst.cohabit if labels[a] != labels[b])
    united = sum(1 for a, b in inst.separate if labels[a] == labels[b])
    return oversize, split, united


def count_violations(partition: Partition, inst: Instance) -> int:
    return sum(violation_breakdown(partition, inst))


def fitness(traffic: Fraction, violations: int,
            cfg: FitnessConfig) -> Fraction | float:
    """Penalized fitness Y, tuned per the config.

    Identity tuning keeps Y exact; power tuning returns float(Y)^gamma,
    an order-preserving transform.
    """
    if violations > cfg.constraint_count:
        raise ValueError(
            f"internal inconsistency: {violations} violations exceed the "
            f"constraint count {cfg.constraint_count}")
    if traffic > cfg.bound:
        raise ValueError(
            f"internal inconsistency: traffic {traffic} exceeds the bound "
            f"{cfg.bound}")
    y = (cfg.bound - traffic) + (cfg.constraint_count - violations) * cfg.bound
    if cfg.tuning == "power":
        return float(y) ** cfg.gamma
    return y


@dataclass(frozen=True)
class Evaluation:
    """Everything known about one solution."""

    partition: Partition
    traffic: Fraction
    violations: int
    feasible: bool
    fitness: Fraction | float


def evaluate(g: FlowGraph, inst: Instance, edge_mask: int,
             cfg: FitnessConfig) -> Evaluation:
    """Decode the mask, measure traffic and violations, compute fitness."""
    partition = decode_partition(g, edge_mask)
    traffic = intercellular_traffic(g, edge_mask)
    violations = count_violations(partition, inst)
    return Evaluation(partition, traffic, violations, violations == 0,
                      fitness(traffic, violations, cfg))


def evaluate_partition(g: FlowGraph, inst: Instance, partition: Partition,
                       cfg: FitnessConfig) -> Evaluation:
    """Evaluate a partition directly via its boundary edge mask."""
    return evaluate(g, inst, boundary_mask(g, partition), cfg)


@dataclass
class EvalBatch:
    """Vector results for one population (all int64 numpy arrays)."""

    traffic_units: np.ndarray
    violations: np.ndarray
    fitness_units: np.ndarray
    labels: np.ndarray


class PopulationEvaluator:
    """Evaluates whole populations at once.

    Edge weights are scaled by the least common multiple of their
    denominators to exact int64 units; ``traffic_fraction`` and
    ``fitness_fraction`` convert back. Traffic is always measured on the
    decoded partition (edges whose endpoints land in different cells). For
    masks that are unions of cuts this equals the marked-edge sum; for
    arbitrary masks it is the honest cost of the decoded solution.

    Chromosome parts are interpreted against the default cut basis (excluded
    vertex = highest index, bit v of a part selects the cut isolating vertex
    v). Falls back to a scalar path when m is too large for int64 bit tricks
    or the fitness range would overflow.
    """

    def __init__(self, g: FlowGraph, inst: Instance, cfg: FitnessConfig):
        self.graph = g
        self.instance = inst
        self.cfg = cfg
        self.m = g.machine_count
        self.edge_u = np.array([e.u for e in g.edges], dtype=np.int64)
        self.edge_v = np.array([e.v for e in g.edges], dtype=np.int64)
        self.scale = math.lcm(*(e.weight.denominator for e in g.edges)) \
            if g.edges else 1
        self.weight_units = np.array(
            [int(e.weight * self.scale) for e in g.edges], dtype=np.int64)
        self.bound_units = int(cfg.bound * self.scale)
        self.u = cfg.constraint_count
        self.max_size = inst.max_cell_size
        self.sc = np.array(sorted(inst.cohabit), dtype=np.int64).reshape(-1, 2)
        self.sn = np.array(sorted(inst.separate),
                           dtype=np.int64).reshape(-1, 2)
        fits_int64 = (self.u + 1) * self.bound_units < 2 ** 62
        self.vector_ok = fits_int64 and self.m <= 63
        self._pow2k_cache: dict[int, np.ndarray] = {}

    # ----- exact conversions -------------------------------------------

    def traffic_fraction(self, units: int) -> Fraction:
        return Fraction(int(units), self.scale)

    def fitness_fraction(self, units: int) -> Fraction:
        return Fraction(int(units), self.scale)

    def tuned_fitness(self, units: int) -> Fraction | float:
        y = self.fitness_fraction(units)
        if self.cfg.tuning == "power":
            return float(y) ** self.cfg.gamma
        return y

    def selection_weights(self, fitness_units: np.ndarray) -> np.ndarray:
        """Float weights proportional to tuned fitness (scale-invariant)."""
        base = fitness_units.astype(np.float64) / self.scale
        if self.cfg.tuning == "power":
            return base ** self.cfg.gamma
        return base

    # ----- population paths --------------------------------------------

    def evaluate_parts(self, population) -> EvalBatch:
        """Evaluate chromosomes given as sequences of K part integers."""
        if not self.vector_ok:
            return self._scalar_parts(population)
        parts = np.asarray(population, dtype=np.int64)
        pop, k = parts.shape
        if k > 62:
            return self._scalar_parts(population)
        pow2 = self._pow2k_cache.get(k)
        if pow2 is None:
            pow2 = (1 << np.arange(k, dtype=np.int64))
            self._pow2k_cache[k] = pow2
        sig = np.zeros((pop, self.m), dtype=np.int64)
        for v in range(self.m - 1):
            sig[:, v] = ((parts >> v) & 1) @ pow2
        keep = sig[:, self.edge_u] == sig[:, self.edge_v]
        return self._eval_keep(keep)

    def evaluate_keeps(self, keep: np.ndarray) -> EvalBatch:
        """Evaluate masks given as a (pop, E) boolean keep matrix."""
        if not self.vector_ok:
            return self._scalar_keeps(keep)
        return self._eval_keep(np.asarray(keep, dtype=bool))

    def _eval_keep(self, keep: np.ndarray) -> EvalBatch:
        pop, ecount = keep.shape
        n = pop * self.m
        ind, edge = np.nonzero(keep)
        src = ind * self.m + self.edge_u[edge]
        dst = ind * self.m + self.edge_v[edge]
        graph = sparse.csr_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
        ncomp, flat = csgraph.connected_components(graph, directed=False)
        labels = flat.reshape(pop, self.m)

        comp_sizes = np.bincount(flat, minlength=ncomp)
        owner = np.empty(ncomp, dtype=np.int64)
        owner[flat] = np.repeat(np.arange(pop, dtype=np.int64), self.m)
        violations = np.bincount(owner[comp_sizes > self.max_size],
                                 minlength=pop)
        if len(self.sc):
            violations = violations + (
                labels[:, self.sc[:, 0]] != labels[:, self.sc[:, 1]]
            ).sum(axis=1)
        if len(self.sn):
            violations = violations + (
                labels[:, self.sn[:, 0]] == labels[:, self.sn[:, 1]]
            ).sum(axis=1)
        crossing = labels[:, self.edge_u] != labels[:, self.edge_v]
        traffic = crossing.astype(np.int64) @ self.weight_units
        fitness_units = (self.bound_units - traffic) \
            + (self.u - violations) * self.bound_units
        return EvalBatch(traffic, violations.astype(np.int64),
                         fitness_units, labels)

    # ----- scalar fallbacks (large m or overflow risk) ------------------

    def _scalar_parts(self, population) -> EvalBatch:
        masks = []
        incidence = [0] * self.m
        for i, e in enumerate(self.graph.edges):
            incidence[e.u] |= 1 << i
            incidence[e.v] |= 1 << i
        for parts in population:
            mask = 0
            for val in parts:
                cut = 0
                v = 0
                rest = int(val)
                while rest:
                    if rest & 1:
                        cut ^= incidence[v]
                    rest >>= 1
                    v += 1
                mask |= cut
            masks.append(mask)
        return self._scalar_masks(masks)

    def _scalar_keeps(self, keep: np.ndarray) -> EvalBatch:
        masks = []
        for row in np.asarray(keep, dtype=bool):
            mask = 0
            for i, kept in enumerate(row):
                if not kept:
                    mask |= 1 << i
            masks.append(mask)
        return self._scalar_masks(masks)

    def _scalar_masks(self, masks) -> EvalBatch:
        pop = len(masks)
        # object dtype: this path exists for values beyond int64
        traffic = np.zeros(pop, dtype=object)
        violations = np.zeros(pop, dtype=np.int64)
        fitness_units = np.zeros(pop, dtype=object)
        labels = np.zeros((pop, self.m), dtype=np.int64)
        for i, mask in enumerate(masks):
            partition = decode_partition(self.graph, mask)
            lab = partition.labels(self.m)
            cross = 0
            for j, e in enumerate(self.graph.edges):
                if lab[e.u] != lab[e.v]:
                    cross |= 1 << j
            z = intercellular_traffic(self.graph, cross)
            v = count_violations(partition, self.instance)
            traffic[i] = int(z * self.scale)
            violations[i] = v
            fitness_units[i] = (self.bound_units - traffic[i]) \
                + (self.u - v) * self.bound_units
            labels[i] = lab
        return EvalBatch(traffic, violations, fitness_units, labels)
