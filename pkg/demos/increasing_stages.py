"""Translation lengths over stages grown from the orbit of 0."""

from heartwood import bundled
from heartwood.approx import build_sequence, convergence_report, length_table, orbit_stages
from heartwood.heart import cyclic_words

gold = bundled("SYS-GOLD")
stages = orbit_stages(gold, gold.tree.along(0), (2, 4, 9))
seq = build_sequence(gold, stages)
for i, S in enumerate(seq.subtrees, start=1):
    print(f"K({i}) = hull{list(S.points)}")

tab = length_table(seq, list(cyclic_words(gold, 4)))
print("\nWords whose length changes across stages (decimal view of exact values):")
print("word".ljust(10) + "".join(f"K({i})".ljust(9) for i in range(1, len(seq.stages) + 1)) + "host")
for w, row, h in zip(tab.words, tab.cells, tab.host):
    if len(set(row)) > 1:
        print(gold.format(w).ljust(10) + "".join(f"{float(v):<9.4f}" for v in row) + f"{float(h):.4f}")

rep = convergence_report(seq, 4)
print("\nmax excess over host per stage:", [str(g) for g in rep.gaps])
print("non-increasing:", rep.non_increasing)
