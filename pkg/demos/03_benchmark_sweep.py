"""Mini replicated parameter sweep, rendered as a table and as CSV.

Replications differ only in their seed (base_seed + r), so any row is
reproducible in isolation; with measure_time=False the CSV is byte-identical
across runs.
"""

from cellform import generate_instance, render_csv, render_table, \
    run_benchmark

inst = generate_instance(12, 30, 4, 8, seed=11)

rows = run_benchmark(inst, ["cga", "scga", "ega"],
                     pop_sizes=[50, 100], generation_counts=[50],
                     replications=5, base_seed=100)
print(render_table(rows))

deterministic = run_benchmark(inst, ["scga"], [50], [50], replications=3,
                              base_seed=100, measure_time=False)
print("CSV form (timing disabled, byte-identical across runs):\n")
print(render_csv(deterministic))
