import itertools
import math
import random

import pytest

from skeinpoly.scalars import LAURENT, CycloRing, LaurentScalar
from skeinpoly.torus import TorusElement, canon, central_commutator, torus_frobenius, torus_mul


def B(p, q, ring=LAURENT):
    return TorusElement.basis(p, q, ring)


def test_canonical_representative():
    assert canon(-1, 2) == (1, -2)
    assert canon(0, -3) == (0, 3)
    assert canon(2, -5) == (2, -5)


def test_product_to_sum_basic():
    # (1,0)(0,1) = A (1,1) + A^-1 (1,-1)
    got = torus_mul(B(1, 0), B(0, 1))
    expected = B(1, 1).scale(LaurentScalar.v_power(2)) + B(1, -1).scale(LaurentScalar.v_power(-2))
    assert got == expected


def test_zero_zero_is_twice_unit():
    x = B(2, 3)
    assert torus_mul(B(0, 0), x) == x.scale(2)
    assert torus_mul(x, TorusElement.unit()) == x


def test_commutative_at_v_equal_1():
    ring = CycloRing(1)
    rng = random.Random(5)
    for _ in range(50):
        x = B(rng.randint(-3, 3), rng.randint(-3, 3), ring)
        y = B(rng.randint(-3, 3), rng.randint(-3, 3), ring)
        assert (x * y - y * x).is_zero()


def test_associativity_random():
    rng = random.Random(11)
    for _ in range(100):
        x = B(rng.randint(-3, 3), rng.randint(-3, 3))
        y = B(rng.randint(-3, 3), rng.randint(-3, 3))
        z = B(rng.randint(-3, 3), rng.randint(-3, 3))
        assert (x * y) * z == x * (y * z)


def test_frobenius_basis_definition():
    assert torus_frobenius(1, 0, 3, LAURENT) == B(3, 0)
    assert torus_frobenius(1, 1, 5, LAURENT) == B(5, 5)
    with pytest.raises(ValueError):
        torus_frobenius(2, 4, 3)
    with pytest.raises(ValueError):
        torus_frobenius(1, 0, 4)


def test_threading_expansion_matches_frobenius():
    # T_3 = x^3 - 3x applied to powers of (1,0) must give the (3,0) basis curve
    from skeinpoly.chebyshev import chebyshev_t, thread

    x = B(1, 0)
    powers = [TorusElement.unit()]
    for _ in range(3):
        powers.append(powers[-1] * x)
    assert thread(powers, chebyshev_t(3)) == B(3, 0)


def test_central_commutator_examples():
    assert central_commutator((1, 0), (0, 1), 3).is_zero()
    assert central_commutator((1, 1), (2, 1), 5).is_zero()


def test_centrality_sweep():
    prim = [
        (p, q)
        for p, q in itertools.product(range(-3, 4), repeat=2)
        if math.gcd(p, q) == 1
    ]
    for N in (3, 5, 7):
        for pq in prim:
            for rs in prim:
                assert central_commutator(pq, rs, N).is_zero(), (pq, rs, N)


def test_serialization_roundtrip():
    x = torus_mul(B(1, 0), B(0, 1)) + B(2, 2).scale(3)
    assert TorusElement.from_json(x.to_json(), LAURENT) == x
