from gmpy2 import mpq

from skeinpoly.chebyshev import chebyshev_t, poly_mul, poly_sub, thread
from skeinpoly.torus import TorusElement


def test_base_cases():
    assert chebyshev_t(0) == (2,)
    assert chebyshev_t(1) == (0, 1)


def test_small_values():
    assert chebyshev_t(2) == (-2, 0, 1)
    assert chebyshev_t(5) == (0, 5, 0, -5, 0, 1)


def test_recurrence_to_50():
    for k in range(2, 51):
        lhs = chebyshev_t(k)
        rhs = poly_sub(poly_mul((0, 1), chebyshev_t(k - 1)), chebyshev_t(k - 2))
        assert lhs == rhs


def test_power_sum_identity():
    # T_m(z + 1/z) = z^m + z^(-m), checked as Laurent coefficient dicts
    for m in range(0, 21):
        acc: dict = {}
        for deg, c in enumerate(chebyshev_t(m)):
            if c == 0:
                continue
            # expand (z + z^-1)^deg
            for j in range(deg + 1):
                from math import comb

                e = deg - 2 * j
                acc[e] = acc.get(e, 0) + c * comb(deg, j)
        acc = {e: c for e, c in acc.items() if c != 0}
        expected = {m: 1, -m: 1} if m > 0 else {0: 2}
        assert acc == expected


def test_thread_identity_polynomial():
    x = TorusElement.basis(1, 0)
    powers = [TorusElement.unit()]
    for _ in range(4):
        powers.append(powers[-1] * x)
    assert thread(powers, (0, 1)) == x


def test_thread_constant_doubles():
    powers = [TorusElement.unit(), TorusElement.basis(1, 0)]
    got = thread(powers, chebyshev_t(0))
    assert got == TorusElement.unit().scale(2)


def test_thread_t2_gives_basis_element():
    x = TorusElement.basis(1, 0)
    powers = [TorusElement.unit(), x, x * x]
    assert thread(powers, chebyshev_t(2)) == TorusElement.basis(2, 0)


def test_thread_missing_power():
    import pytest

    with pytest.raises(ValueError):
        thread([TorusElement.unit()], (0, 0, 1))
