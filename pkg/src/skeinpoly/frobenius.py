"""Cabling and the Frobenius map.

``parallel_copies`` replaces every chord of a basis diagram by N
parallel strands carrying the same states; the k-th copy at one end
pairs with the (N-1-k)-th copy at the other end, which is what keeps
the copies disjoint.  The Frobenius map sends a classical vector
(coefficients in Q, the v = 1 specialization) to the cyclotomic ring
at a chosen odd root order by cabling each basis diagram.

Two cross-checks live in the test suite: cabling one chord equals
q^(N(N-1)/2) times its N-th power, and at a root of unity the cabled
elements commute with everything (transparency).
"""

from __future__ import annotations

from .polyalg import mul
from .polydiag import DiagramError, NormalDiagram, SkeinVector
from .scalars import CycloRing, CycloScalar, LaurentScalar, RingMismatch

__all__ = [
    "check_transparent",
    "frobenius",
    "module_action",
    "parallel_copies",
    "transparency_defect",
]


def parallel_copies(diagram: NormalDiagram, N: int) -> NormalDiagram:
    """N-cable of a basis diagram; states are copied onto every strand."""
    if N < 1:
        raise DiagramError("cable width must be positive")
    words = tuple("".join(ch * N for ch in w) for w in diagram.words)
    chords = []
    for (m1, s1), (m2, s2) in diagram.chords:
        for k in range(N):
            chords.append(((m1, N * s1 + k), (m2, N * s2 + (N - 1 - k))))
    return NormalDiagram(diagram.surface, words, chords)


def _as_rational(c):
    if isinstance(c, CycloScalar):
        if c.N != 1:
            raise RingMismatch("Frobenius input must be classical (order 1)")
        return c.coeffs[0]
    if isinstance(c, LaurentScalar):
        if c.is_zero():
            return 0
        if set(c.terms) == {0}:
            return c.terms[0]
        raise RingMismatch("Frobenius input coefficients must be constants")
    raise RingMismatch("unsupported coefficient %r" % (c,))


def frobenius(x: SkeinVector, N: int, ring=None) -> SkeinVector:
    """Cable every term of a classical vector; lands in Q(zeta_N).

    A different target ring may be supplied (the Laurent ring is handy
    for identities that hold before specialization).
    """
    if ring is None:
        ring = CycloRing(N)
    terms = {}
    for d, c in x.terms.items():
        terms[parallel_copies(d, N)] = ring.from_rational(_as_rational(c))
    return SkeinVector(x.surface, ring, terms)


def module_action(a: SkeinVector, b: SkeinVector, N: int) -> SkeinVector:
    """Left action of a classical vector on the root-of-unity algebra."""
    return mul(frobenius(a, N, b.ring), b)


def transparency_defect(a: SkeinVector, b: SkeinVector, N: int) -> SkeinVector:
    """Commutator [F(a), b]; zero iff the cabled strands can be pushed
    through b without caring about over or under."""
    fa = frobenius(a, N, b.ring)
    return mul(fa, b) - mul(b, fa)


def check_transparent(a: SkeinVector, b: SkeinVector, N: int) -> bool:
    return transparency_defect(a, b, N).is_zero()
