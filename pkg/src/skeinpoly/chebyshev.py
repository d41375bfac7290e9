"""First-kind Chebyshev polynomials (T_0 = 2 normalization) and threading.

A polynomial over the integers is a coefficient list with index = degree,
trailing zeros stripped, e.g. x^2 - 2 is [-2, 0, 1].
"""

from __future__ import annotations

import functools


def _trim(coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


def poly_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b) -> tuple:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


@functools.lru_cache(maxsize=None)
def chebyshev_t(k: int) -> tuple:
    """T_0 = 2, T_1 = x, T_k = x*T_{k-1} - T_{k-2}.

    >>> chebyshev_t(2)
    (-2, 0, 1)
    >>> chebyshev_t(5)
    (0, 5, 0, -5, 0, 1)
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    return poly_sub(poly_mul((0, 1), chebyshev_t(k - 1)), chebyshev_t(k - 2))


def thread(powers, Q) -> object:
    """Form sum_t Q[t] * powers[t] for a coefficient list Q.

    ``powers`` supplies the parallel-copy elements: powers[t] is the t-fold
    framed push-off of some component (powers[0] = the element with the
    component deleted).  The elements must support + and scalar
    multiplication by ints via ``element.scale(int)`` or int * element; we
    only rely on + and .scale here to stay agnostic about the module.
    """
    Q = _trim(Q)
    acc = None
    for t, k in enumerate(Q):
        if k == 0:
            continue
        if t >= len(powers):
            raise ValueError(f"missing power {t} for threading")
        term = powers[t].scale(k)
        acc = term if acc is None else acc + term
    if acc is None:
        return powers[0].scale(0)
    return acc
