"""Resolve small diagrams by hand and watch the local relations fire."""

from skeinpoly.polydiag import BIGON, StatedDiagram, normalize
from skeinpoly.scalars import loop_value, q, v


def show(label, vec):
    print("%-28s %s" % (label, vec))


print("loop value:", loop_value(), "= -(q^2 + q^-2):", loop_value() == -(q(2) + q(-2)))
print()

# a free loop times the empty diagram
show("free loop", normalize(StatedDiagram(BIGON, (), (), (), free_loops=1)))

# returning arcs at one marking, all four state patterns
for states in ("-+", "++", "--", "+-"):
    endpoints = [(0, 0, states[0]), (0, 1, states[1])]
    d = StatedDiagram(BIGON, endpoints, (), ((("b", 0), ("b", 1)),))
    show("turnback %s" % states, normalize(d))

print()

# one crossing between two cross chords; the bracket gives two smoothings
endpoints = [(0, 0, "-"), (0, 1, "-"), (1, 0, "+"), (1, 1, "+")]
edges = tuple(
    tuple(sorted((("b", i), ("x", 0, leg)))) for i, leg in ((0, 0), (1, 1), (2, 2), (3, 3))
)
crossing = StatedDiagram(BIGON, endpoints, (0,), edges)
show("crossing --/++", normalize(crossing))

# the two-term rewrite: a (+,-) pattern at a marking is worth
# q^2 (swapped) + q^(-1/2) (joined)
lhs_endpoints = [(0, 0, "+"), (0, 1, "-"), (1, 0, "-"), (1, 1, "+")]
lhs = StatedDiagram(BIGON, lhs_endpoints, (), ((("b", 0), ("b", 3)), (("b", 1), ("b", 2))))
swapped = StatedDiagram(
    BIGON,
    [(0, 0, "-"), (0, 1, "+"), (1, 0, "-"), (1, 1, "+")],
    (),
    ((("b", 0), ("b", 3)), (("b", 1), ("b", 2))),
)
joined = StatedDiagram(BIGON, [(1, 0, "-"), (1, 1, "+")], (), ((("b", 0), ("b", 1)),))
left = normalize(lhs)
right = normalize(swapped).scale(q(2)) + normalize(joined).scale(v(-1))
print()
show("unsorted pattern", left)
show("two-term expansion", right)
print("identity holds:", left == right)
