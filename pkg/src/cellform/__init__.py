"""Cell formation via cut-based graph partitioning.

Pipeline: parse or generate an :class:`Instance`, derive the machine flow
graph, encode partitions as unions of graph cuts, and search with genetic
algorithms (or the exact oracle / k-means baselines).
"""

from .baselines import EdgeChromosome, exhaustive_oracle, run_ega, \
    run_multikmeans
from .bench import BenchmarkRow, render_csv, render_table, run_benchmark
from .cuts import Cut, CutBasis, Partition, bits_from_mask, boundary_mask, \
    build_basis, cut_from_index, decode_partition, enumerate_all_cuts, \
    mask_from_bits, partition_from_labels, union_cuts, xor_cuts
from .evaluation import EvalBatch, Evaluation, FitnessConfig, \
    PopulationEvaluator, count_violations, evaluate, evaluate_partition, \
    fitness, intercellular_traffic, make_fitness_config, violation_breakdown
from .flowgraph import Edge, FlowGraph, TrafficMatrix, build_graph, \
    compute_traffic
from .ga import Chromosome, GAParams, GAResult, chromosome_mask, compute_k, \
    crossover_any, crossover_boundary, decode_chromosome, init_population, \
    mutate, roulette_select, run_ga, sort_chromosome
from .instance import Instance, InstanceError, InstanceWarning, Part, \
    generate_instance, parse_instance, serialize_instance

__version__ = "0.1.0"

__all__ = [
    "Chromosome", "Cut", "CutBasis", "Edge", "EdgeChromosome", "EvalBatch",
    "Evaluation", "FitnessConfig", "FlowGraph", "GAParams", "GAResult",
    "Instance", "InstanceError", "InstanceWarning", "Part", "Partition",
    "PopulationEvaluator", "TrafficMatrix",
    "BenchmarkRow", "bits_from_mask", "boundary_mask", "build_basis",
    "build_graph", "chromosome_mask", "compute_k", "compute_traffic",
    "count_violations", "crossover_any", "crossover_boundary",
    "cut_from_index", "decode_chromosome", "decode_partition",
    "enumerate_all_cuts", "evaluate", "evaluate_partition",
    "exhaustive_oracle", "fitness", "generate_instance", "init_population",
    "intercellular_traffic", "make_fitness_config", "mask_from_bits",
    "mutate", "parse_instance", "partition_from_labels", "render_csv",
    "render_table", "roulette_select", "run_benchmark", "run_ega", "run_ga",
    "run_multikmeans", "serialize_instance", "sort_chromosome", "union_cuts",
    "violation_breakdown", "xor_cuts",
]
