"""Exact product-to-sum oracle for the skein algebra of the torus.

Basis: (p,q)_T over lattice classes (p,q) in Z^2 up to sign, the (p,q)
multicurve threaded by the first-kind Chebyshev polynomial of its gcd;
(0,0)_T = 2 * unit.  Product rule, with A := q = v^2:

    (p,q)_T * (r,s)_T = A^(ps-qr) (p+r, q+s)_T + A^-(ps-qr) (p-r, q-s)_T

This module exists to witness centrality of Chebyshev-threaded curves at
odd roots of unity in an ambient algebra that genuinely contains knots;
the polygon engine cannot supply one.
"""

from __future__ import annotations

import math

from .scalars import LAURENT, CycloRing, RingMismatch


def canon(p: int, q: int) -> tuple:
    """Canonical representative of {(p,q), (-p,-q)}: p > 0, or p = 0, q >= 0."""
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


class TorusElement:
    """Finitely supported map from canonical lattice classes to scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        t = {}
        if terms:
            for (p, q), c in terms.items():
                key = canon(int(p), int(q))
                acc = t.get(key)
                c = c if acc is None else acc + c
                if c.is_zero():
                    t.pop(key, None)
                else:
                    t[key] = c
        self.terms = t

    @staticmethod
    def basis(p: int, q: int, ring=LAURENT) -> "TorusElement":
        return TorusElement(ring, {canon(p, q): ring.one()})

    @staticmethod
    def unit(ring=LAURENT) -> "TorusElement":
        # (0,0)_T is twice the unit
        return TorusElement(ring, {(0, 0): ring.from_rational(1) * ring.v_power(0, 1)}).scale_rational(1, 2)

    def scale_rational(self, num, den=1) -> "TorusElement":
        from gmpy2 import mpq

        c = self.ring.from_rational(mpq(num, den))
        return TorusElement(self.ring, {k: v * c for k, v in self.terms.items()})

    def scale(self, c) -> "TorusElement":
        if isinstance(c, int):
            return self.scale_rational(c)
        return TorusElement(self.ring, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other: "TorusElement") -> "TorusElement":
        if other.ring != self.ring:
            raise RingMismatch("torus elements over different rings")
        t = dict(self.terms)
        out = TorusElement(self.ring)
        out.terms = t
        for k, c in other.terms.items():
            acc = t.get(k)
            s = c if acc is None else acc + c
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return out

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + other.scale(-1)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if other.ring != self.ring:
            raise RingMismatch("torus elements over different rings")
        R = self.ring
        acc: dict = {}
        for (p, q), c1 in self.terms.items():
            for (r, s), c2 in other.terms.items():
                det = p * s - q * r
                c = c1 * c2
                for sign in (1, -1):
                    key = canon(p + sign * r, q + sign * s)
                    coeff = c * R.v_power(2 * sign * det)
                    old = acc.get(key)
                    coeff = coeff if old is None else old + coeff
                    if coeff.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = coeff
        out = TorusElement(R)
        out.terms = acc
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusElement)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "TorusElement(0)"
        bits = ", ".join(f"{k}: {c!r}" for k, c in sorted(self.terms.items()))
        return f"TorusElement({bits})"

    def to_json(self) -> list:
        return [[list(k), c.to_json()] for k, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(data, ring=LAURENT) -> "TorusElement":
        from .scalars import CycloScalar, LaurentScalar

        terms = {}
        for (p, q), cjson in data:
            c = LaurentScalar.from_json(cjson) if ring.name == "laurent" else CycloScalar.from_json(cjson)
            terms[(int(p), int(q))] = c
        return TorusElement(ring, terms)


def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    return x * y


def torus_frobenius(p: int, q: int, N: int, ring=None) -> TorusElement:
    """(p,q) primitive goes to the basis element (Np, Nq)_T."""
    if math.gcd(p, q) != 1:
        raise ValueError("curve must be primitive (gcd 1)")
    if N < 1 or N % 2 == 0:
        raise ValueError("order must be odd and positive")
    if ring is None:
        ring = CycloRing(N)
    return TorusElement.basis(N * p, N * q, ring)


def central_commutator(threaded: tuple, probe: tuple, N: int) -> TorusElement:
    """[F(threaded), probe] over Q(zeta_N); expected to vanish."""
    ring = CycloRing(N)
    f = torus_frobenius(threaded[0], threaded[1], N, ring)
    b = TorusElement.basis(probe[0], probe[1], ring)
    return f * b - b * f
