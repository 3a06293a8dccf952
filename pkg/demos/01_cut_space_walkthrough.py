"""Walk through the cut-space encoding on a small hand-checkable instance.

Five machines, eight unit-volume two-machine routings. The flow graph has
one edge per routed machine pair; a partition into cells is encoded as an
OR-union of basis cuts, so every chromosome decodes to a valid partition.
"""

from cellform import (Instance, Part, build_basis, build_graph,
                      bits_from_mask, decode_partition, evaluate,
                      make_fitness_config, xor_cuts)

ROUTED_PAIRS = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4),
                (3, 4)]

inst = Instance(
    machine_count=5, max_cell_size=2,
    parts=tuple(Part(volume=1, routing=pair) for pair in ROUTED_PAIRS))

g = build_graph(inst)
print("flow graph edges (machine pairs are 1-based):")
for e in g.edges:
    print(f"  {e.u + 1}-{e.v + 1}  weight {e.weight}")

basis = build_basis(g)
print(f"\ncut basis: {basis.dimension} single-machine cuts "
      f"(machine {basis.excluded + 1} excluded; its cut is the XOR of the "
      f"others)")
for i, cut in enumerate(basis.cuts):
    print(f"  w(machine {i + 1}) = {bits_from_mask(cut.edge_mask, 8)}"
          f"  index {cut.basis_index}")

w1 = xor_cuts(basis.cuts[0], basis.cuts[2])
w2 = xor_cuts(xor_cuts(basis.cuts[0], basis.cuts[1]), basis.cuts[2])
print(f"\nw1 = w(m1) XOR w(m3) = {bits_from_mask(w1.edge_mask, 8)}"
      f"  (cut index {w1.basis_index})")
print(f"w2 = w(m1) XOR w(m2) XOR w(m3) = {bits_from_mask(w2.edge_mask, 8)}"
      f"  (cut index {w2.basis_index})")

mask = w1.edge_mask | w2.edge_mask
print(f"\nOR-union = {bits_from_mask(mask, 8)}")
partition = decode_partition(g, mask)
print("decoded cells (1-based):",
      " ".join("{" + " ".join(str(v + 1) for v in cell) + "}"
               for cell in partition.cells))

cfg = make_fitness_config(g, inst)
ev = evaluate(g, inst, mask, cfg)
print(f"\nintercellular traffic: {ev.traffic}  (total flow {cfg.bound})")
print(f"violations: {ev.violations}  feasible: {ev.feasible}")
print(f"penalized fitness: {ev.fitness}")
