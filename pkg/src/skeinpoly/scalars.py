"""Exact coefficient arithmetic.

Two rings are supported:

* ``LaurentScalar`` — Laurent polynomials in v = q^(1/2) with rational
  coefficients.  v is the atom, so q = v^2 and q^(-1/2) = v^(-1); no
  fractional exponents are ever needed.
* ``CycloScalar`` — the specialization v -> zeta_N, a primitive root of
  unity of odd order N, represented in the rational vector space with basis
  1, zeta, ..., zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial.
  N = 1 is allowed and is plain rational arithmetic (the classical case).

All values are immutable by convention; every operation returns a fresh
object.  Equality is coefficient-wise and exact.
"""

from __future__ import annotations

import functools

from gmpy2 import mpq

STATES = ("-", "+")


class RingMismatch(TypeError):
    """Raised when operands live in different coefficient rings."""


def bar(s: str) -> str:
    """The state involution: bar(+) = -, bar(-) = +."""
    if s == "+":
        return "-"
    if s == "-":
        return "+"
    raise ValueError(f"not a state: {s!r}")


# ---------------------------------------------------------------------------
# Laurent ring of v


class LaurentScalar:
    """A Laurent polynomial in v with rational coefficients.

    Stored as {exponent: mpq}; zero coefficients are never kept.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = mpq(c)
                if c != 0:
                    t[int(e)] = c
        self.terms = t

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentScalar":
        return LaurentScalar()

    @staticmethod
    def one() -> "LaurentScalar":
        return LaurentScalar({0: 1})

    @staticmethod
    def v_power(e: int, coeff=1) -> "LaurentScalar":
        return LaurentScalar({e: coeff})

    @staticmethod
    def from_rational(c) -> "LaurentScalar":
        return LaurentScalar({0: c})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            raise RingMismatch("cannot add LaurentScalar and %r" % type(other))
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s == 0:
                t.pop(e, None)
            else:
                t[e] = s
        out = LaurentScalar.__new__(LaurentScalar)
        out.terms = t
        return out

    def __neg__(self) -> "LaurentScalar":
        out = LaurentScalar.__new__(LaurentScalar)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            raise RingMismatch("cannot multiply LaurentScalar and %r" % type(other))
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s == 0:
                    t.pop(e, None)
                else:
                    t[e] = s
        out = LaurentScalar.__new__(LaurentScalar)
        out.terms = t
        return out

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentScalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """True iff self is c*v^e with c a nonzero rational."""
        return len(self.terms) == 1

    def unit_inverse(self) -> "LaurentScalar":
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentScalar({-e: 1 / mpq(c)})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*v")
            else:
                parts.append(f"{c}*v^{e}")
        return " + ".join(parts)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [
            [e, int(self.terms[e].numerator), int(self.terms[e].denominator)]
            for e in sorted(self.terms)
        ]

    @staticmethod
    def from_json(data) -> "LaurentScalar":
        return LaurentScalar({int(e): mpq(int(n), int(d)) for e, n, d in data})


def v(e: int = 1, coeff=1) -> LaurentScalar:
    """Shortcut: coeff * v^e."""
    return LaurentScalar.v_power(e, coeff)


def q(e: int = 1, coeff=1) -> LaurentScalar:
    """Shortcut: coeff * q^e = coeff * v^(2e)."""
    return LaurentScalar.v_power(2 * e, coeff)


def loop_value() -> LaurentScalar:
    """The value of a trivial loop: -(q^2 + q^(-2)) = -v^4 - v^(-4)."""
    return LaurentScalar({4: -1, -4: -1})


def c_const(s: str) -> LaurentScalar:
    """The half-twist constants: c(+) = -v^(-5), c(-) = v^(-1).

    Pinned jointly with the half-twist braid sign by the triangle-
    gluing identity (see maps.insertion_check); the opposite chirality
    c(+) = v, c(-) = -v^5 satisfies every one-marking relation but not
    that identity.  The same constants give the turnback values:
    an arc leaving and re-entering a marking with states (a, bar(a))
    contributes c(a).
    """
    if s == "+":
        return v(-5, -1)
    if s == "-":
        return v(-1)
    raise ValueError(f"not a state: {s!r}")


# ---------------------------------------------------------------------------
# Cyclotomic specialization


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients (constant first) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of the proper
    divisors of n; all arithmetic is exact.
    """
    if n <= 0:
        raise ValueError("order must be positive")
    # x^n - 1
    poly = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, [mpq(c) for c in cyclotomic_poly(d)])
    return tuple(poly)


def _poly_divexact(num: list, den: list) -> list:
    """Exact division of coefficient lists (constant term first)."""
    num = list(num)
    out = [mpq(0)] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1] / den[-1]
        out[shift] = c
        if c != 0:
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
    if any(c != 0 for c in num):
        raise ArithmeticError("division was not exact")
    return out


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class CycloScalar:
    """An element of Q(zeta_N), N odd, as a coefficient tuple of length phi(N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        if N < 1 or N % 2 == 0:
            raise ValueError("order must be odd and positive")
        self.N = N
        phi = euler_phi(N)
        cs = [mpq(c) for c in coeffs]
        if len(cs) != phi:
            raise ValueError(f"need {phi} coefficients for order {N}")
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(N: int) -> "CycloScalar":
        return CycloScalar(N, [0] * euler_phi(N))

    @staticmethod
    def one(N: int) -> "CycloScalar":
        return CycloScalar(N, [1] + [0] * (euler_phi(N) - 1))

    @staticmethod
    def root_power(N: int, e: int) -> "CycloScalar":
        """zeta_N^e, exponent taken modulo N and reduced mod Phi_N."""
        e %= N
        raw = [mpq(0)] * (e + 1)
        raw[e] = mpq(1)
        return CycloScalar(N, _cyclo_reduce(raw, N))

    @staticmethod
    def from_rational(N: int, c) -> "CycloScalar":
        return CycloScalar(N, [c] + [0] * (euler_phi(N) - 1))

    # -- field operations --------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CycloScalar) or other.N != self.N:
            raise RingMismatch("cyclotomic order mismatch")

    def __add__(self, other):
        self._check(other)
        out = CycloScalar.__new__(CycloScalar)
        out.N = self.N
        out.coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return out

    def __neg__(self):
        out = CycloScalar.__new__(CycloScalar)
        out.N = self.N
        out.coeffs = tuple(-a for a in self.coeffs)
        return out

    def __sub__(self, other):
        self._check(other)
        out = CycloScalar.__new__(CycloScalar)
        out.N = self.N
        out.coeffs = tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        return out

    def __mul__(self, other):
        self._check(other)
        n = len(self.coeffs)
        raw = [mpq(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    raw[i + j] += a * b
        out = CycloScalar.__new__(CycloScalar)
        out.N = self.N
        out.coeffs = tuple(_cyclo_reduce(raw, self.N))
        return out

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloScalar.one(self.N)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycloScalar":
        """Field inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        phi = [mpq(c) for c in cyclotomic_poly(self.N)]
        a = list(self.coeffs)
        # extended gcd of a and phi in Q[x]
        r0, r1 = phi, _poly_trim(a)
        s0, s1 = [mpq(0)], [mpq(1)]
        while _poly_deg(r1) > 0:
            qpoly, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(qpoly, s1))
        if _poly_deg(r1) < 0:
            raise ZeroDivisionError("not invertible (shares a factor with Phi_N)")
        c = r1[0]
        inv = [x / c for x in s1]
        return CycloScalar(self.N, _cyclo_reduce(inv, self.N))

    def __eq__(self, other):
        return (
            isinstance(other, CycloScalar)
            and other.N == self.N
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"Cyclo(N={self.N}, {list(map(str, self.coeffs))})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [self.N, [[int(c.numerator), int(c.denominator)] for c in self.coeffs]]

    @staticmethod
    def from_json(data) -> "CycloScalar":
        N, coeffs = data
        return CycloScalar(int(N), [mpq(int(n), int(d)) for n, d in coeffs])


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deg(p):
    return len(_poly_trim(p)) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [mpq(0)] * (n - len(a))
    b = list(b) + [mpq(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num, den):
    num = list(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    qout = [mpq(0)] * max(len(num) - len(den) + 1, 0)
    for shift in range(len(qout) - 1, -1, -1):
        c = num[shift + len(den) - 1] / den[-1]
        qout[shift] = c
        if c != 0:
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
    return _poly_trim(qout), _poly_trim(num)


def _cyclo_reduce(raw, N: int):
    """Reduce a coefficient list modulo Phi_N, padding to length phi(N)."""
    phi = [mpq(c) for c in cyclotomic_poly(N)]
    _, rem = _poly_divmod([mpq(c) for c in raw], phi)
    rem = list(rem) + [mpq(0)] * (len(phi) - 1 - len(rem))
    return rem


def specialize(a: LaurentScalar, N: int) -> CycloScalar:
    """Send v to a primitive N-th root of unity (N odd, N >= 1)."""
    if N < 1 or N % 2 == 0:
        raise ValueError("order must be odd and positive")
    phi = euler_phi(N)
    raw = [mpq(0)] * N
    for e, c in a.terms.items():
        raw[e % N] += c
    return CycloScalar(N, _cyclo_reduce(raw[: max(1, N)], N))


# ---------------------------------------------------------------------------
# Ring handles (so diagram code can run over either ring uniformly)


class LaurentRing:
    """Constructor bundle for the generic Laurent ring."""

    name = "laurent"

    def one(self):
        return LaurentScalar.one()

    def zero(self):
        return LaurentScalar.zero()

    def v_power(self, e: int, coeff=1):
        return LaurentScalar.v_power(e, coeff)

    def from_rational(self, c):
        return LaurentScalar.from_rational(c)

    def convert(self, a: LaurentScalar):
        """Map a generic Laurent scalar into this ring (identity here)."""
        if not isinstance(a, LaurentScalar):
            raise RingMismatch("expected a LaurentScalar")
        return a

    def scalar_from_json(self, data):
        return LaurentScalar.from_json(data)

    def __eq__(self, other):
        return isinstance(other, LaurentRing)

    def __hash__(self):
        return hash("laurent")

    def __repr__(self):
        return "LaurentRing()"


class CycloRing:
    """Constructor bundle for Q(zeta_N), N odd."""

    name = "cyclotomic"

    def __init__(self, N: int):
        if N < 1 or N % 2 == 0:
            raise ValueError("order must be odd and positive")
        self.N = N

    def one(self):
        return CycloScalar.one(self.N)

    def zero(self):
        return CycloScalar.zero(self.N)

    def v_power(self, e: int, coeff=1):
        z = CycloScalar.root_power(self.N, e)
        if coeff == 1:
            return z
        return z * CycloScalar.from_rational(self.N, coeff)

    def from_rational(self, c):
        return CycloScalar.from_rational(self.N, c)

    def convert(self, a):
        """Specialize a Laurent scalar, or pass a matching cyclotomic through."""
        if isinstance(a, LaurentScalar):
            return specialize(a, self.N)
        if isinstance(a, CycloScalar) and a.N == self.N:
            return a
        raise RingMismatch("cannot convert %r into Q(zeta_%d)" % (a, self.N))

    def scalar_from_json(self, data):
        out = CycloScalar.from_json(data)
        if out.N != self.N:
            raise RingMismatch("serialized order %d, ring order %d" % (out.N, self.N))
        return out

    def __eq__(self, other):
        return isinstance(other, CycloRing) and other.N == self.N

    def __hash__(self):
        return hash(("cyclo", self.N))

    def __repr__(self):
        return f"CycloRing({self.N})"


LAURENT = LaurentRing()


def scalar_arith(a, b, op: str):
    """Dispatch helper used by the CLI: op in {add, mul, neg, eq}."""
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    if type(a) is not type(b):
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
