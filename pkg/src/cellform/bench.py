"""Replicated benchmark sweeps and their CSV / table rendering.

Each (method, population, generations) setting is replicated with seeds
base_seed, base_seed+1, ... and summarized by the average and best traffic
over the feasible replications, the average solver wall time, and the
feasible-replication rate. A setting where no replication found a feasible
solution is reported UF and carries no traffic statistics.

All solver outputs are deterministic given (instance, methods, parameters,
base seed); wall-clock obviously is not, so ``measure_time=False`` leaves
the timing column empty and makes the CSV byte-identical across runs.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction

from .baselines import run_ega, run_multikmeans
from .ga import GAParams, run_ga
from .instance import Instance

GA_METHODS = ("cga", "scga", "ega")
BENCH_METHODS = GA_METHODS + ("multikmeans",)


@dataclass(frozen=True)
class BenchmarkRow:
    """Summary of one (method, pop, gens) cell of the sweep."""

    method: str
    pop: int | None
    gens: int | None
    replications: int
    avg_traffic: Fraction | None
    best_traffic: Fraction | None
    avg_cpu_s: float | None
    feasible_rate: Fraction

    @property
    def uf(self) -> bool:
        return self.avg_traffic is None


def _summarize(method: str, pop: int | None, gens: int | None,
               outcomes: list[tuple[bool, Fraction | None]],
               cpu: float | None) -> BenchmarkRow:
    reps = len(outcomes)
    feasible = [t for ok, t in outcomes if ok]
    if feasible:
        avg = sum(feasible, Fraction(0)) / len(feasible)
        best = min(feasible)
    else:
        avg = best = None
    rate = Fraction(len(feasible), reps)
    return BenchmarkRow(method, pop, gens, reps, avg, best, cpu, rate)


def run_benchmark(inst: Instance, methods, pop_sizes, generation_counts,
                  replications: int, base_seed: int,
                  crossover_rate: float = 0.7, mutation_rate: float = 0.03,
                  tuning: str = "identity", gamma: float = 2.0,
                  measure_time: bool = True) -> list[BenchmarkRow]:
    """Run the full sweep; row order is methods x pop (asc) x gens (asc).

    multikmeans ignores the pop/gens grid and contributes a single row whose
    replications each run one restart with seed base_seed + r.
    """
    for method in methods:
        if method not in BENCH_METHODS:
            raise ValueError(f"unknown benchmark method {method!r}")
    if replications < 1:
        raise ValueError("replications must be at least 1")
    rows = []
    for method in methods:
        if method == "multikmeans":
            outcomes = []
            elapsed = 0.0
            for r in range(replications):
                t0 = time.perf_counter()
                ev = run_multikmeans(inst, restarts=1, seed=base_seed + r)
                elapsed += time.perf_counter() - t0
                outcomes.append((ev is not None,
                                 ev.traffic if ev is not None else None))
            cpu = elapsed / replications if measure_time else None
            rows.append(_summarize(method, None, None, outcomes, cpu))
            continue
        runner = run_ega if method == "ega" else run_ga
        for pop in sorted(pop_sizes):
            for gens in sorted(generation_counts):
                outcomes = []
                elapsed = 0.0
                for r in range(replications):
                    params = GAParams(
                        population_size=pop, generations=gens,
                        crossover_rate=crossover_rate,
                        mutation_rate=mutation_rate,
                        variant=method if method != "ega" else "scga",
                        seed=base_seed + r, tuning=tuning, gamma=gamma)
                    result = runner(inst, params)
                    elapsed += result.wall_time
                    outcomes.append((result.feasible_found,
                                     result.best_evaluation.traffic
                                     if result.feasible_found else None))
                cpu = elapsed / replications if measure_time else None
                rows.append(_summarize(method, pop, gens, outcomes, cpu))
    return rows


def _fmt_traffic(value: Fraction | None) -> str:
    if value is None:
        return ""
    if value.denominator == 1:
        return str(value.numerator)
    return repr(float(value))


def render_csv(rows: list[BenchmarkRow]) -> str:
    """CSV text (LF line endings, trailing newline, UTF-8 safe)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["method", "pop", "gens", "avg_traffic", "best_traffic",
                     "avg_cpu_s", "feasible_rate"])
    for row in rows:
        writer.writerow([
            row.method,
            "" if row.pop is None else str(row.pop),
            "" if row.gens is None else str(row.gens),
            _fmt_traffic(row.avg_traffic),
            _fmt_traffic(row.best_traffic),
            "" if row.avg_cpu_s is None else f"{row.avg_cpu_s:.4f}",
            repr(float(row.feasible_rate)),
        ])
    return buf.getvalue()


def render_table(rows: list[BenchmarkRow]) -> str:
    """Fixed-width summary table; UF settings show 'UF' for traffic."""
    header = ["method", "pop", "gens", "avg traffic", "best", "cpu (s)",
              "feasible"]
    body = []
    for row in rows:
        avg = "UF" if row.uf else _fmt_traffic(row.avg_traffic)
        best = "UF" if row.uf else _fmt_traffic(row.best_traffic)
        cpu = "-" if row.avg_cpu_s is None else f"{row.avg_cpu_s:.2f}"
        body.append([
            row.method,
            "-" if row.pop is None else str(row.pop),
            "-" if row.gens is None else str(row.gens),
            avg, best, cpu,
            f"{row.feasible_rate.numerator}/{row.feasible_rate.denominator}"
            if row.feasible_rate.denominator > 1
            else str(row.feasible_rate.numerator),
        ])
    widths = [max(len(header[i]), *(len(r[i]) for r in body)) if body
              else len(header[i]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(r[i].ljust(widths[i])
                               for i in range(len(header))))
    return "\n".join(lines) + "\n"
