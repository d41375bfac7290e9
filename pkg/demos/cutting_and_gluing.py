"""Cut a bigon in two, twist, and glue back: the round trip is an identity.

split sends a vector to a state sum on the cut surface, half_twist
reverses strand order at one marking with barred states, qf_merge
welds two markings into one.  Composing all three against a bare
marking insertion gives the exactness statement the character
pullbacks rely on; here it is checked on concrete elements.
"""

from skeinpoly.maps import insertion_check, qf_merge, split, half_twist, split_surface
from skeinpoly.polyalg import chord_diagram
from skeinpoly.polydiag import BIGON, SkeinVector
from skeinpoly.scalars import LAURENT


def lift(d):
    return SkeinVector(d.surface, LAURENT, {d: LAURENT.one()})


x = lift(chord_diagram(BIGON, 0, "+", 1, "-"))
print("input:", x)

info = split_surface(BIGON, 0, 0, 1)
print("cut surface:", info.surface.components, "new markings:", (info.u1, info.u2))

z = split(x, 0, 0, 1)
print("state sum has", len(z.terms), "terms:")
print(" ", z)

tw = half_twist(z, info.u2)
print("after the half twist:", len(tw.terms), "terms")

back = qf_merge(tw, info.u1, info.u2)
print("merged back:", back)
print()

lhs, rhs, equal = insertion_check(x, 0, 0, 1)
print("cut-twist-merge equals bare insertion:", equal)
