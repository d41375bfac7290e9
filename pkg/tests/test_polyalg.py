import random

import pytest

from skeinpoly.polyalg import (
    Algebra,
    bigon_chord,
    chord_diagram,
    classical_form,
    disjoint_union,
    graded_basis,
    mul,
    stack,
)
from skeinpoly.polydiag import (
    BIGON,
    MONOGON,
    NormalDiagram,
    SkeinVector,
    TRIANGLE,
    normalize,
)
from skeinpoly.scalars import CycloRing, LAURENT, q

A = Algebra(BIGON)
PP = A.vector(bigon_chord("+", "+"))
PM = A.vector(bigon_chord("+", "-"))
MP = A.vector(bigon_chord("-", "+"))
MM = A.vector(bigon_chord("-", "-"))
ONE = A.unit()

D2 = NormalDiagram(BIGON, ("++", "++"), (((0, 0), (1, 1)), ((0, 1), (1, 0))))
D3 = NormalDiagram(BIGON, ("-+", "-+"), (((0, 0), (1, 1)), ((0, 1), (1, 0))))


def basis_vec(d, coeff=1):
    return SkeinVector(BIGON, LAURENT, {d: LAURENT.from_rational(coeff)}).scale(coeff and 1)


def test_stacked_chords_cross_once():
    sd = stack(bigon_chord("+", "+"), bigon_chord("+", "+"))
    assert len(sd.crossings) == 1
    assert sd.validate() == []


def test_square_of_plus_plus_chord():
    got = mul(PP, PP)
    assert got == A.vector(D2).scale(q(-1))


def test_minus_minus_times_plus_plus():
    got = mul(MM, PP)
    assert got == A.vector(D3).scale(q(3)) + ONE


def test_plus_plus_times_minus_minus():
    got = mul(PP, MM)
    assert got == A.vector(D3).scale(q(-1)) + ONE


def test_mixed_products_give_rainbow():
    assert mul(MP, PM) == A.vector(D3).scale(q(1))
    assert mul(PM, MP) == A.vector(D3).scale(q(1))


def test_quantum_determinant():
    det = mul(MM, PP) - mul(MP, PM).scale(q(2))
    assert det == ONE


def test_unit_laws():
    for x in (PP, PM, MP, MM, mul(PP, MM)):
        assert mul(ONE, x) == x
        assert mul(x, ONE) == x


def _random_vector(rng, algebra, pool, size=2):
    out = algebra.zero()
    for _ in range(size):
        d = rng.choice(pool)
        e = rng.randint(-2, 2)
        c = rng.randint(1, 3)
        out = out + algebra.vector(d, 1).scale(algebra.ring.v_power(e, c))
    return out


def test_associativity_bigon():
    rng = random.Random(23)
    pool = graded_basis(BIGON, 0) + graded_basis(BIGON, 1) + graded_basis(BIGON, 2)
    for _ in range(20):
        x = _random_vector(rng, A, pool)
        y = _random_vector(rng, A, pool)
        z = _random_vector(rng, A, pool)
        assert mul(mul(x, y), z) == mul(x, mul(y, z))


def test_associativity_triangle():
    rng = random.Random(31)
    alg = Algebra(TRIANGLE)
    pool = graded_basis(TRIANGLE, 0) + graded_basis(TRIANGLE, 1)
    for _ in range(10):
        x = _random_vector(rng, alg, pool)
        y = _random_vector(rng, alg, pool)
        z = _random_vector(rng, alg, pool)
        assert mul(mul(x, y), z) == mul(x, mul(y, z))


def test_classical_case_is_commutative():
    alg = Algebra(BIGON, CycloRing(1))
    gens = [
        alg.vector(bigon_chord(s1, s2))
        for s1 in "+-"
        for s2 in "+-"
    ]
    for x in gens:
        for y in gens:
            assert mul(x, y) == mul(y, x)
    tri = Algebra(TRIANGLE, CycloRing(1))
    u = tri.vector(chord_diagram(TRIANGLE, 0, "+", 1, "-"))
    w = tri.vector(chord_diagram(TRIANGLE, 1, "+", 2, "+"))
    assert mul(u, w) == mul(w, u)


def test_strategies_agree_on_products():
    rng = random.Random(47)
    pool = graded_basis(BIGON, 1) + graded_basis(BIGON, 2)
    for _ in range(15):
        dx = rng.choice(pool)
        dy = rng.choice(pool)
        sd = stack(dx, dy)
        assert normalize(sd, strategy="low") == normalize(sd, strategy="high")


def test_graded_counts_bigon():
    for k in range(7):
        assert len(graded_basis(BIGON, k)) == (k + 1) ** 2


def test_graded_counts_triangle():
    assert len(graded_basis(TRIANGLE, 0)) == 1
    assert len(graded_basis(TRIANGLE, 1)) == 12
    assert len(graded_basis(TRIANGLE, 2)) == 63


def test_graded_counts_monogon():
    assert len(graded_basis(MONOGON, 0)) == 1
    for k in (1, 2, 3):
        assert graded_basis(MONOGON, k) == []


def test_products_stay_in_matching_degrees():
    got = mul(MM, PP)
    for d in got.terms:
        assert d.n_chords in (0, 2)


def test_disjoint_union_counts():
    x = PP + MM.scale(q(1))
    y = MP
    u = disjoint_union(x, y)
    assert u.surface.components == (2, 2)
    assert len(u.terms) == 2
    unit2 = disjoint_union(ONE, ONE)
    assert unit2 == SkeinVector.unit(u.surface, LAURENT)


def test_classical_form_drops_q():
    got = classical_form(mul(PP, PP))
    ring = CycloRing(1)
    assert got == SkeinVector(BIGON, ring, {D2: ring.one()})
