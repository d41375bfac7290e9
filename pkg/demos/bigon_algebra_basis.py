"""Graded basis of the bigon algebra and a first noncommutative product.

The basis diagrams at k chords number (k+1)^2; products of basis
elements expand exactly over Laurent coefficients in v = q^(1/2).
"""

from skeinpoly.polyalg import chord_diagram, graded_basis, mul, classical_form
from skeinpoly.polydiag import BIGON, SkeinVector
from skeinpoly.scalars import LAURENT


def lift(d):
    return SkeinVector(BIGON, LAURENT, {d: LAURENT.one()})


def main():
    print("graded dimensions (expect (k+1)^2):")
    for k in range(7):
        n = len(graded_basis(BIGON, k))
        print("  k=%d: %3d   closed form %3d" % (k, n, (k + 1) ** 2))

    a = lift(chord_diagram(BIGON, 0, "+", 1, "-"))
    b = lift(chord_diagram(BIGON, 0, "-", 1, "+"))
    ab = mul(a, b)
    ba = mul(b, a)
    print()
    print("a*b =", ab)
    print("b*a =", ba)
    print("commutator zero?", (ab - ba).is_zero())
    print()
    print("classical shadow of a*b (v -> 1):")
    print(" ", classical_form(ab))


if __name__ == "__main__":
    main()
