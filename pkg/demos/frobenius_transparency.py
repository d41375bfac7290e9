"""Cabling into a root of unity lands in the center.

At an odd root order N, the N-fold parallel copy of a classical basis
element commutes with everything.  Away from the root the same product
pair fails, which is the fast sanity check that the test is not vacuous.
"""

import sys

from skeinpoly.frobenius import frobenius, transparency_defect
from skeinpoly.polyalg import chord_diagram, graded_basis, mul
from skeinpoly.polydiag import BIGON, SkeinVector
from skeinpoly.scalars import CycloRing, LAURENT

N = int(sys.argv[1]) if len(sys.argv) > 1 else 3


def main():
    ring = CycloRing(N)
    g = chord_diagram(BIGON, 0, "+", 1, "-")
    classical = SkeinVector(BIGON, LAURENT, {g: LAURENT.one()})
    cabled = frobenius(classical, N, ring)
    print("generator:", classical)
    print("cabled (%d copies): %d basis terms" % (N, len(cabled.terms)))
    print()

    worst = 0
    for k in range(3):
        for d in graded_basis(BIGON, k):
            b = SkeinVector(BIGON, ring, {d: ring.one()})
            defect = transparency_defect(classical, b, N)
            worst = max(worst, len(defect.terms))
    print("max commutator support over the <=2 chord basis:", worst)

    # same recipe away from the root: cable over the Laurent ring
    generic = frobenius(classical, N, LAURENT)
    b = SkeinVector(BIGON, LAURENT, {graded_basis(BIGON, 1)[0]: LAURENT.one()})
    defect = mul(generic, b) - mul(b, generic)
    print("generic-coefficient commutator is zero:", defect.is_zero())


if __name__ == "__main__":
    main()
