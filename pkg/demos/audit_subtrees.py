"""Compare the host tree with trees built on smaller cores."""

from heartwood import bundled, golden
from heartwood.heart import theorem_audit

gold = bundled("SYS-GOLD")
alpha = golden()
t = gold.tree
for label, Kp in (("K' = K", gold.core), ("K' = [0, alpha^4]", t.hull([t.along(0), t.along(alpha**4)]))):
    print(f"== {label}")
    for line in theorem_audit(gold, Kp, 5, 2).lines(gold.format):
        print("  " + line)
