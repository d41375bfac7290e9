import random

import pytest
from gmpy2 import mpq

from skeinpoly.scalars import (
    LAURENT,
    CycloRing,
    CycloScalar,
    LaurentScalar,
    RingMismatch,
    bar,
    c_const,
    cyclotomic_poly,
    euler_phi,
    loop_value,
    q,
    scalar_arith,
    specialize,
    v,
)


def rand_laurent(rng, nterms=4, span=8):
    return LaurentScalar(
        {rng.randint(-span, span): mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(nterms)}
    )


def rand_cyclo(rng, N):
    return CycloScalar(N, [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(euler_phi(N))])


def test_unit_identity():
    assert v(1) * v(-1) == LaurentScalar.one()


def test_loop_value_at_n1():
    assert specialize(loop_value(), 1) == CycloScalar.from_rational(1, -2)


def test_c_constants():
    assert c_const("+") == v(-5, -1)
    assert c_const("-") == v(-1)
    assert c_const(bar("+")) == v(-1)
    # product of the two constants
    assert c_const("+") * c_const("-") == v(-6, -1)


def test_bar_involution():
    assert bar("+") == "-"
    assert bar("-") == "+"
    for s in ("+", "-"):
        assert bar(bar(s)) == s


def test_ring_axioms_laurent():
    rng = random.Random(7)
    for _ in range(1000):
        a, b, c = (rand_laurent(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("N", [1, 3, 5, 7, 9])
def test_ring_axioms_cyclo(N):
    rng = random.Random(N)
    for _ in range(200):
        a, b, c = (rand_cyclo(rng, N) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("N", [1, 3, 5, 7])
def test_specialize_is_ring_hom(N):
    rng = random.Random(10 + N)
    for _ in range(100):
        a, b = rand_laurent(rng), rand_laurent(rng)
        assert specialize(a * b, N) == specialize(a, N) * specialize(b, N)
        assert specialize(a + b, N) == specialize(a, N) + specialize(b, N)


@pytest.mark.parametrize("N", [1, 3, 5, 7, 9, 11])
def test_root_order(N):
    assert specialize(v(N), N) == CycloScalar.one(N)
    if N > 1:
        assert specialize(v(1), N) != CycloScalar.one(N)


@pytest.mark.parametrize("N", [1, 3, 5, 7, 9])
def test_twist_constants_at_roots(N):
    # c(+)^N specializes to -1 and c(-)^N to 1 at every odd order
    assert specialize(c_const("+") ** N, N) == -CycloScalar.one(N)
    assert specialize(c_const("-") ** N, N) == CycloScalar.one(N)


def test_specialize_example_order_3():
    # 2 + v over the basis {1, zeta} with zeta^2 = -zeta - 1
    got = specialize(LaurentScalar({0: 2, 1: 1}), 3)
    assert got == CycloScalar(3, [2, 1])


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(9) == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_cyclo_inverse(N):
    rng = random.Random(20 + N)
    for _ in range(50):
        a = rand_cyclo(rng, N)
        if a.is_zero():
            continue
        assert a * a.inverse() == CycloScalar.one(N)


def test_laurent_unit_inverse():
    a = v(3, mpq(2, 5))
    assert a * a.unit_inverse() == LaurentScalar.one()
    with pytest.raises(ZeroDivisionError):
        (v(1) + v(2)).unit_inverse()


def test_even_order_rejected():
    with pytest.raises(ValueError):
        specialize(v(1), 2)
    with pytest.raises(ValueError):
        CycloRing(4)
    with pytest.raises(ValueError):
        specialize(v(1), 0)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        scalar_arith(v(1), CycloScalar.one(3), "add")
    with pytest.raises(RingMismatch):
        CycloScalar.one(3) + CycloScalar.one(5)


def test_serialization_roundtrip():
    rng = random.Random(99)
    for _ in range(50):
        a = rand_laurent(rng)
        assert LaurentScalar.from_json(a.to_json()) == a
    for N in (1, 3, 5):
        for _ in range(20):
            a = rand_cyclo(rng, N)
            assert CycloScalar.from_json(a.to_json()) == a


def test_q_shortcut():
    assert q(1) == v(2)
    assert q(-2) == v(-4)
    assert loop_value() == -(q(2) + q(-2))


def test_ring_handles():
    R = CycloRing(3)
    assert R.v_power(3) == CycloScalar.one(3)
    assert R.convert(v(4)) == CycloScalar.root_power(3, 1)
    assert LAURENT.convert(v(2)) == v(2)
