"""Walk through the golden rotation: words, domains, lengths and the heart."""

from heartwood import bundled, fib_gen, golden
from heartwood.heart import geometric_probe, heart_approx, limit_set_approx, qk_eval
from heartwood.laminations import admissible_words, laminary_closure
from heartwood.suspension import SuspensionTree

gold = bundled("SYS-GOLD")
alpha = golden()
fmt = gold.format

print("Two pieces of [0,1] exchanged: a on [0, alpha^2], b on [alpha^2, 1].")
for n in range(1, 7):
    words = [w for w in admissible_words(gold, n, positive_only=True) if len(w) == n]
    print(f"  length {n}: {len(words)} positive admissible words")

print("\nDomains of Fibonacci prefixes shrink towards one point:")
X = fib_gen(gold.alphabet)
for n in (2, 4, 8, 12):
    s = qk_eval(gold, X, n)
    print(f"  n={n:2d}  {fmt(X.prefix(n)):<24} diameter {s.diameter} ~ {float(s.diameter):.5f}")

T = SuspensionTree(gold)
print("\nTranslation lengths in the suspension tree:")
for text in ("a", "b", "a.b", "a.a", "a.b.b"):
    tl = T.translation_length(gold.parse(text))
    print(f"  ||{text}|| = {tl.length} ({tl.kind}, witness {tl.witness})")

closure = laminary_closure(gold, 3, 2, positive_only=True)
print("\nLength-3 words surviving two-sided extension:", sorted(fmt(w) for w in closure.words if len(w) == 3))

pieces = limit_set_approx(gold, 6)
print(f"\nDepth-6 limit set approximation has {len(pieces)} pieces; heart at depth 8:", heart_approx(gold, 8).subtree.points)
probe = geometric_probe(gold, 6)
print("Heart extremal counts by depth:", [r[1] for r in probe.rows], "stable from", probe.stable_from)
