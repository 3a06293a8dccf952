"""Cut-based genetic algorithms over the flow graph.

A chromosome is K = ceil(m / N) integer parts, each naming a cut of the flow
graph (0 = no cut). Decoding ORs the named cuts together and reads off the
resulting cells, so every individual is a valid partition by construction;
cell-size and cohabitation constraints are handled by the penalty fitness.

Two variants share the machinery:

* CGA keeps chromosomes as raw part chains.
* SCGA canonicalizes every chromosome with a sorting procedure (parts in
  descending order, duplicates zeroed, zeros last), which collapses the many
  chains that decode to the same cut set and so removes phantom diversity.

The bit chain seen by the any-position crossover lays parts end to end,
alleles within a part ordered by basis vertex (vertex 0 first = bit 0 of the
part integer).
"""

from __future__ import annotations

import math
import random
import time
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .cuts import CutBasis, Partition, cut_from_index, decode_partition, \
    union_cuts, build_basis
from .evaluation import Evaluation, PopulationEvaluator, evaluate, \
    make_fitness_config
from .flowgraph import FlowGraph, build_graph
from .instance import Instance


def compute_k(machine_count: int, max_cell_size: int) -> int:
    """Number of chromosome parts: ceil(m / N)."""
    if machine_count < 1 or max_cell_size < 1:
        raise ValueError("machine count and max cell size must be positive")
    return (machine_count + max_cell_size - 1) // max_cell_size


@dataclass(frozen=True)
class Chromosome:
    """K part integers, each in [0, 2^part_bits - 1] (part_bits = m - 1)."""

    parts: tuple[int, ...]
    part_bits: int

    def __post_init__(self):
        if not self.parts:
            raise ValueError("chromosome needs at least one part")
        if self.part_bits < 1:
            raise ValueError("part_bits must be at least 1")
        limit = 1 << self.part_bits
        for p in self.parts:
            if not 0 <= p < limit:
                raise ValueError(
                    f"part value {p} out of range 0..{limit - 1}")


@dataclass(frozen=True)
class GAParams:
    """Knobs for one GA run."""

    population_size: int
    generations: int
    crossover_rate: float = 0.7
    mutation_rate: float = 0.03
    variant: str = "scga"
    seed: int = 0
    tuning: str = "identity"
    gamma: float = 2.0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population size must be at least 2")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        if not 0 <= self.crossover_rate <= 1:
            raise ValueError("crossover rate must be in [0, 1]")
        if not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation rate must be in [0, 1]")
        if self.variant not in ("cga", "scga"):
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass
class GAResult:
    """Outcome of a run: best individual, its evaluation, and the trace."""

    best_chromosome: object
    best_evaluation: Evaluation
    best_history: list
    wall_time: float
    feasible_found: bool


def chromosome_mask(ch: Chromosome, basis: CutBasis) -> int:
    """OR-union of the cuts named by the chromosome's nonzero parts."""
    return union_cuts(cut_from_index(basis, p) for p in ch.parts if p)


def decode_chromosome(ch: Chromosome, basis: CutBasis,
                      g: FlowGraph) -> Partition:
    """Partition encoded by the chromosome (cells after removing its cuts)."""
    if ch.part_bits != basis.dimension:
        raise ValueError(
            f"chromosome built for {ch.part_bits} basis cuts, basis has "
            f"{basis.dimension}")
    return decode_partition(g, chromosome_mask(ch, basis))


def sort_chromosome(ch: Chromosome) -> Chromosome:
    """Canonical form: distinct parts descending, duplicates zeroed, zeros
    gathered at the tail. Decodes to the same partition (OR is idempotent
    and order-blind)."""
    distinct = sorted({p for p in ch.parts if p}, reverse=True)
    padded = tuple(distinct) + (0,) * (len(ch.parts) - len(distinct))
    return Chromosome(padded, ch.part_bits)


def init_population(params: GAParams, machine_count: int, k: int,
                    rng: random.Random | None = None) -> list[Chromosome]:
    """Distinct random chromosomes; SCGA checks distinctness on canonical
    forms, CGA on raw chains.

    Raises ValueError when the population cannot even exist (pigeonhole) and
    RuntimeError when 1000 * size draws fail to fill it.
    """
    if rng is None:
        rng = random.Random(params.seed)
    bits = machine_count - 1
    size = params.population_size
    part_count = 1 << bits
    if params.variant == "cga":
        capacity = part_count ** k
    else:
        capacity = sum(math.comb(part_count - 1, j) for j in range(k + 1))
    if size > capacity:
        raise ValueError(
            f"population size {size} exceeds the {capacity} distinct "
            f"individuals this encoding admits")
    population: list[Chromosome] = []
    seen: set[tuple[int, ...]] = set()
    attempts = 0
    max_attempts = 1000 * size
    while len(population) < size:
        if attempts >= max_attempts:
            raise RuntimeError(
                f"could not draw {size} distinct individuals in "
                f"{max_attempts} attempts; the instance is too small for "
                f"this population size")
        attempts += 1
        ch = Chromosome(tuple(rng.randrange(part_count) for _ in range(k)),
                        bits)
        if params.variant == "scga":
            ch = sort_chromosome(ch)
        if ch.parts in seen:
            continue
        seen.add(ch.parts)
        population.append(ch)
    return population


def roulette_select(population: Sequence, fitnesses: Sequence, count: int,
                    rng: random.Random) -> list:
    """Fitness-proportional sampling with replacement.

    Fitnesses must be non-negative; if they are all zero the draw falls back
    to uniform. One rng.random() is consumed per draw either way.
    """
    weights = [float(f) for f in fitnesses]
    if len(weights) != len(population):
        raise ValueError("one fitness per individual required")
    if any(w < 0 for w in weights):
        raise ValueError("fitnesses must be non-negative")
    total = sum(weights)
    n = len(population)
    chosen = []
    if total == 0:
        for _ in range(count):
            idx = min(int(rng.random() * n), n - 1)
            chosen.append(population[idx])
        return chosen
    cumulative = list(accumulate(weights))
    for _ in range(count):
        r = rng.random() * total
        idx = min(bisect_right(cumulative, r), n - 1)
        chosen.append(population[idx])
    return chosen


def crossover_any(a: Chromosome, b: Chromosome,
                  rng: random.Random) -> tuple[Chromosome, Chromosome]:
    """One-point crossover at any position of the K*(m-1) bit chain.

    The cut position is uniform over the L-1 interior gaps, so it may fall
    inside a part and recombine its bits. Degenerate chains (length 1)
    return the parents unchanged.
    """
    if a.part_bits != b.part_bits or len(a.parts) != len(b.parts):
        raise ValueError("parents must share shape")
    bits = a.part_bits
    length = len(a.parts) * bits
    if length < 2:
        return a, b
    cut = rng.randrange(1, length)
    part_mask = (1 << bits) - 1
    child1 = []
    child2 = []
    for p, (pa, pb) in enumerate(zip(a.parts, b.parts)):
        start = p * bits
        if start + bits <= cut:
            child1.append(pa)
            child2.append(pb)
        elif start >= cut:
            child1.append(pb)
            child2.append(pa)
        else:
            low = (1 << (cut - start)) - 1
            child1.append((pa & low) | (pb & part_mask & ~low))
            child2.append((pb & low) | (pa & part_mask & ~low))
    return (Chromosome(tuple(child1), bits), Chromosome(tuple(child2), bits))


def crossover_boundary(a: Chromosome, b: Chromosome,
                       rng: random.Random) -> tuple[Chromosome, Chromosome]:
    """One-point crossover restricted to the K-1 part boundaries.

    With K = 1 there is no boundary; the parents are returned unchanged.
    """
    if a.part_bits != b.part_bits or len(a.parts) != len(b.parts):
        raise ValueError("parents must share shape")
    k = len(a.parts)
    if k < 2:
        return a, b
    j = rng.randrange(1, k)
    return (Chromosome(a.parts[:j] + b.parts[j:], a.part_bits),
            Chromosome(b.parts[:j] + a.parts[j:], a.part_bits))


def mutate(ch: Chromosome, rng: random.Random) -> Chromosome:
    """Replace one uniformly chosen part with a uniform value in range."""
    idx = rng.randrange(len(ch.parts))
    value = rng.randrange(1 << ch.part_bits)
    parts = ch.parts[:idx] + (value,) + ch.parts[idx + 1:]
    return Chromosome(parts, ch.part_bits)


def run_ga(inst: Instance, params: GAParams) -> GAResult:
    """Run the cut-based GA (CGA or SCGA per params.variant).

    Per generation: save the elite, roulette-select a crossover_rate share
    of parents, cross each pair with one of the two operators (uniform
    choice), top the population up with fresh random individuals, mutate a
    mutation_rate share (one part each), sort everyone (SCGA), evaluate,
    and reinsert the elite over the worst individual. Same seed, same
    best_history.
    """
    t0 = time.perf_counter()
    g = build_graph(inst)
    basis = build_basis(g)
    cfg = make_fitness_config(g, inst, params.tuning, params.gamma)
    k = compute_k(inst.machine_count, inst.max_cell_size)
    rng = random.Random(params.seed)
    evaluator = PopulationEvaluator(g, inst, cfg)
    bits = inst.machine_count - 1
    part_count = 1 << bits

    population = init_population(params, inst.machine_count, k, rng)
    batch = evaluator.evaluate_parts([c.parts for c in population])
    best_idx = int(batch.fitness_units.argmax())
    best_units = batch.fitness_units[best_idx]
    best_chromosome = population[best_idx]

    size = params.population_size
    n_mate = round(params.crossover_rate * size)
    if n_mate % 2:
        n_mate -= 1
    n_mutate = round(params.mutation_rate * size)
    history = []

    for _ in range(params.generations):
        elite_idx = int(batch.fitness_units.argmax())
        elite = population[elite_idx]
        elite_units = batch.fitness_units[elite_idx]

        weights = evaluator.selection_weights(batch.fitness_units)
        parents = roulette_select(population, weights.tolist(), n_mate, rng)
        nxt: list[Chromosome] = []
        for i in range(0, n_mate, 2):
            op = crossover_any if rng.random() < 0.5 else crossover_boundary
            c1, c2 = op(parents[i], parents[i + 1], rng)
            nxt.extend((c1, c2))
        while len(nxt) < size:
            nxt.append(Chromosome(
                tuple(rng.randrange(part_count) for _ in range(k)), bits))
        for idx in rng.sample(range(size), n_mutate):
            nxt[idx] = mutate(nxt[idx], rng)
        if params.variant == "scga":
            nxt = [sort_chromosome(c) for c in nxt]

        population = nxt
        batch = evaluator.evaluate_parts([c.parts for c in population])
        worst = int(batch.fitness_units.argmin())
        population[worst] = elite
        batch.fitness_units[worst] = elite_units

        gen_best = int(batch.fitness_units.argmax())
        if batch.fitness_units[gen_best] > best_units:
            best_units = batch.fitness_units[gen_best]
            best_chromosome = population[gen_best]
        history.append(evaluator.tuned_fitness(best_units))

    best_eval = evaluate(g, inst, chromosome_mask(best_chromosome, basis),
                         cfg)
    return GAResult(best_chromosome, best_eval, history,
                    time.perf_counter() - t0, best_eval.feasible)
