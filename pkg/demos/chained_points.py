"""A single point glued to its neighbour: copies of K chain into a line."""

from heartwood import bundled, periodic
from heartwood.heart import qk_eval, ray_is_nested
from heartwood.suspension import SuspensionTree, build_ball

point = bundled("SYS-POINT")
K = point.tree
ball = build_ball(point, 3, positive_only=True)
print("Ball of positive words up to length 3:", ball)
print("  host diameter", ball.host.diameter(ball.host.whole()))
print("  (a, 0) and (1, 1) are the same point:", ball.locate((1,), K.along(0)) == ball.locate((), K.along(1)))

T = SuspensionTree(point)
s = qk_eval(point, periodic((1,)), 6, T)
print("\na^infinity is", s.kind, "dead at index", s.dead_index)
print("  bridge start", s.base)
print("  distances to the convergents:", [str(d) for d in s.distances])
print("  convergents nested on one ray:", ray_is_nested(T, s))
print("  first gap certificates:", s.certificates[:4])
