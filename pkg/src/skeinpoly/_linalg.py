"""Exact linear algebra over the scalar rings.

Everything here is dense, small-scale Gaussian elimination.  The Laurent
ring is not a field, so elimination runs in its fraction field and the
results are converted back at the end; conversion insists the denominator
divides exactly.  Cyclotomic scalars already invert, so they get a thin
adapter.
"""

from .scalars import (
    LaurentScalar,
    CycloScalar,
    LaurentRing,
    CycloRing,
    _poly_divmod,
)


class LinAlgError(ArithmeticError):
    pass


class Underdetermined(LinAlgError):
    pass


def _as_poly(a: LaurentScalar):
    lo = min(a.terms)
    return [a.terms.get(lo + i, 0) for i in range(max(a.terms) - lo + 1)], lo


def _laurent_divexact(num: LaurentScalar, den: LaurentScalar) -> LaurentScalar:
    """num / den when the division is exact, else raise."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if num.is_zero():
        return LaurentScalar.zero()
    npoly, nlo = _as_poly(num)
    dpoly, dlo = _as_poly(den)
    quo, rem = _poly_divmod(npoly, dpoly)
    if any(rem):
        raise LinAlgError("inexact Laurent division")
    shift = nlo - dlo
    return LaurentScalar({shift + i: c for i, c in enumerate(quo) if c})


def _laurent_gcd(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Monic gcd, ignoring v-power units."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    pa, _ = _as_poly(a)
    pb, _ = _as_poly(b)
    while any(pb):
        _, pa = _poly_divmod(pa, pb)
        pa, pb = pb, pa
        while pa and not pa[-1]:
            pa.pop()
        while pb and not pb[-1]:
            pb.pop()
    lead = pa[-1]
    return LaurentScalar({i: c / lead for i, c in enumerate(pa) if c})


class _Frac:
    """Fraction of Laurent scalars; denominators stay unreduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


class LaurentField:
    """Fraction-field adapter used by the elimination routines.

    Fractions are reduced by a monic gcd after every operation; without
    that, elimination denominators grow out of control.
    """

    def __init__(self):
        self.ring = LaurentRing()

    def _make(self, num, den):
        if num.is_zero():
            return _Frac(LaurentScalar.zero(), LaurentScalar.one())
        g = _laurent_gcd(num, den)
        if len(g.terms) > 1 or min(g.terms) != 0 or g.terms[0] != 1:
            num = _laurent_divexact(num, g)
            den = _laurent_divexact(den, g)
        dlo = min(den.terms)
        c = den.terms[dlo]
        if dlo != 0 or c != 1:
            u = LaurentScalar.v_power(-dlo, 1 / c)
            num = num * u
            den = den * u
        return _Frac(num, den)

    def from_scalar(self, c):
        return _Frac(c, LaurentScalar.one())

    def zero(self):
        return _Frac(LaurentScalar.zero(), LaurentScalar.one())

    def is_zero(self, f):
        return f.num.is_zero()

    def add(self, a, b):
        return self._make(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a, b):
        return self._make(a.num * b.den - b.num * a.den, a.den * b.den)

    def mul(self, a, b):
        return self._make(a.num * b.num, a.den * b.den)

    def div(self, a, b):
        if b.num.is_zero():
            raise ZeroDivisionError
        return self._make(a.num * b.den, a.den * b.num)

    def neg(self, a):
        return _Frac(-a.num, a.den)

    def to_scalar(self, f):
        return _laurent_divexact(f.num, f.den)


class CycloField:
    def __init__(self, ring: CycloRing):
        self.ring = ring

    def from_scalar(self, c):
        return c

    def zero(self):
        return self.ring.zero()

    def is_zero(self, f):
        return f.is_zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a * b.inverse()

    def neg(self, a):
        return -a

    def to_scalar(self, f):
        return f


def field_over(ring):
    if isinstance(ring, CycloRing):
        return CycloField(ring)
    if isinstance(ring, LaurentRing):
        return LaurentField()
    raise TypeError(f"no field adapter for {ring!r}")


def _row_content(avec, bvec):
    g = LaurentScalar.zero()
    for c in avec.values():
        g = _laurent_gcd(g, c)
    for c in bvec.values():
        g = _laurent_gcd(g, c)
    return g


def _row_combine(pa, pb, pv, fac, qa, qb):
    """(qa, qb) := pv*(qa, qb) - fac*(pa, pb), dropping zeros."""
    for src, dst in ((pa, qa), (pb, qb)):
        keys = set(src) | set(dst)
        for k in keys:
            val = pv * dst.get(k, LaurentScalar.zero()) - fac * src.get(
                k, LaurentScalar.zero()
            )
            if val.is_zero():
                dst.pop(k, None)
            else:
                dst[k] = val


class IncrementalSystem:
    """Row-by-row exact solve of A x = b with sparse rows.

    Rows arrive as (avec, bvec): avec maps column -> scalar, bvec maps
    arbitrary keys -> scalar (a block of right-hand sides).  Laurent
    rows eliminate fraction-free with gcd content control; field rings
    use plain division.  Once rank reaches n, solution() back-substitutes
    and further rows can be cheap consistency checks via verify().
    """

    def __init__(self, ring, n):
        self.ring = ring
        self.n = n
        self.laurent = isinstance(ring, LaurentRing)
        self.F = None if self.laurent else field_over(ring)
        self.pivots = {}  # col -> (avec, bvec)
        self._solution = None

    @property
    def rank(self):
        return len(self.pivots)

    def _strip_content(self, avec, bvec):
        g = _row_content(avec, bvec)
        if len(g.terms) > 1 or g.terms.get(0) != 1:
            avec = {k: _laurent_divexact(c, g) for k, c in avec.items()}
            bvec = {k: _laurent_divexact(c, g) for k, c in bvec.items()}
        return avec, bvec

    def add(self, avec, bvec):
        """Eliminate one row; insert if it has a new pivot.

        Raises LinAlgError when the row reduces to 0 = nonzero.
        """
        self._solution = None
        avec = {k: c for k, c in avec.items() if not c.is_zero()}
        bvec = {k: c for k, c in bvec.items() if not c.is_zero()}
        steps = 0
        while avec:
            col = min(avec)
            hit = self.pivots.get(col)
            if hit is None:
                if self.laurent:
                    avec, bvec = self._strip_content(avec, bvec)
                self.pivots[col] = (avec, bvec)
                return
            pa, pb = hit
            fac = avec.pop(col)
            if self.laurent:
                _row_combine(pa, pb, pa[col], fac, avec, bvec)
                avec.pop(col, None)
                steps += 1
                if steps % 4 == 0 and avec:
                    avec, bvec = self._strip_content(avec, bvec)
            else:
                F = self.F
                f = F.div(fac, pa[col])
                for src, dst in ((pa, avec), (pb, bvec)):
                    for k, c in src.items():
                        if k == col and src is pa:
                            continue
                        val = F.sub(dst.get(k, F.zero()), F.mul(f, c))
                        if F.is_zero(val):
                            dst.pop(k, None)
                        else:
                            dst[k] = val
        if bvec:
            raise LinAlgError("inconsistent system")

    def solution(self):
        """Back-substitute; raises Underdetermined below full rank."""
        if self._solution is not None:
            return self._solution
        if len(self.pivots) < self.n:
            raise Underdetermined(
                f"underdetermined system (rank {len(self.pivots)} of {self.n})"
            )
        laurent = self.laurent
        F = self.F
        solution = [None] * self.n
        for col in sorted(self.pivots, reverse=True):
            avec, bvec = self.pivots[col]
            pv = avec[col]
            acc = dict(bvec)
            for c2, coeff in avec.items():
                if c2 == col:
                    continue
                for k, s in solution[c2].items():
                    if laurent:
                        val = acc.get(k, LaurentScalar.zero()) - coeff * s
                        dead = val.is_zero()
                    else:
                        val = F.sub(acc.get(k, F.zero()), F.mul(coeff, s))
                        dead = F.is_zero(val)
                    if dead:
                        acc.pop(k, None)
                    else:
                        acc[k] = val
            sol = {}
            for k, c in acc.items():
                if laurent:
                    val = _laurent_divexact(c, pv)
                else:
                    val = F.to_scalar(F.div(c, pv))
                if not val.is_zero():
                    sol[k] = val
            solution[col] = sol
        self._solution = solution
        return solution

    def verify(self, avec, bvec) -> bool:
        """Check a row against the solved values by substitution."""
        solution = self.solution()
        laurent = self.laurent
        F = self.F
        acc = {k: c for k, c in bvec.items() if not c.is_zero()}
        for c2, coeff in avec.items():
            if coeff.is_zero():
                continue
            for k, s in solution[c2].items():
                if laurent:
                    val = acc.get(k, LaurentScalar.zero()) - coeff * s
                    dead = val.is_zero()
                else:
                    val = F.sub(acc.get(k, F.zero()), F.mul(coeff, s))
                    dead = F.is_zero(val)
                if dead:
                    acc.pop(k, None)
                else:
                    acc[k] = val
        return not acc


def solve_unique(rows, rhs, ring):
    """Solve A x = b for a system with one exact solution.

    rows: list of sparse dicts col -> scalar, or dense lists.
    rhs:  list of dicts key -> ring scalar (a block of right-hand sides).
    Returns a list of n dicts.  Raises LinAlgError when inconsistent,
    Underdetermined when rank-deficient.
    """
    if not rows:
        raise Underdetermined("empty system")
    if isinstance(rows[0], list):
        n = len(rows[0])
        sparse = [
            {j: c for j, c in enumerate(row) if not c.is_zero()} for row in rows
        ]
    else:
        n = 1 + max((max(r) for r in rows if r), default=-1)
        sparse = [dict(r) for r in rows]
    sys_ = IncrementalSystem(ring, n)
    leftover = []
    for avec, bvec in zip(sparse, rhs):
        if sys_.rank == n:
            leftover.append((avec, bvec))
        else:
            sys_.add(avec, bvec)
    solution = sys_.solution()
    for avec, bvec in leftover:
        if not sys_.verify(avec, bvec):
            raise LinAlgError("inconsistent system")
    return solution


def rank(rows, ring):
    """Rank of a matrix of ring scalars, by field elimination.

    Rows may be dense lists or sparse {column: scalar} dicts.
    """
    rows = list(rows)
    if rows and isinstance(rows[0], dict):
        n = 1 + max((max(r) for r in rows if r), default=-1)
        zero = ring.zero()
        rows = [[r.get(j, zero) for j in range(n)] for r in rows]
    F = field_over(ring)
    A = [[F.from_scalar(c) for c in row] for row in rows]
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    for col in range(n):
        pick = None
        for i in range(r, m):
            if not F.is_zero(A[i][col]):
                pick = i
                break
        if pick is None:
            continue
        A[r], A[pick] = A[pick], A[r]
        pv = A[r][col]
        for i in range(r + 1, m):
            if F.is_zero(A[i][col]):
                continue
            f = F.div(A[i][col], pv)
            for j in range(col, n):
                A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]))
        r += 1
        if r == m:
            break
    return r


class SpanReducer:
    """Incremental row-space tracker over a field ring.

    Vectors are dicts key -> scalar.  add() returns True when the vector
    enlarged the span; residual() reduces without inserting.
    """

    def __init__(self, ring):
        self.F = field_over(ring)
        self.ring = ring
        self.pivots = {}  # key -> reduced row dict (field elements)
        self._cols = {}  # key -> set of pivot keys whose rows hit it

    def _reduce(self, vec):
        # Pivot rows never contain other pivot keys, so eliminating the
        # hits present in the vector cannot introduce new ones; one pass
        # over the (sparse) vector suffices and the order is immaterial.
        F = self.F
        work = {k: F.from_scalar(c) for k, c in vec.items()
                if not c.is_zero()}
        for key in [k for k in work if k in self.pivots]:
            if key not in work:  # cancelled by an earlier elimination
                continue
            row = self.pivots[key]
            f = work.pop(key)
            for k, c in row.items():
                val = F.sub(work.get(k, F.zero()), F.mul(f, c))
                if F.is_zero(val):
                    work.pop(k, None)
                else:
                    work[k] = val
        return work

    def residual(self, vec):
        work = self._reduce(vec)
        F = self.F
        return {k: F.to_scalar(c) for k, c in work.items()}

    def add(self, vec) -> bool:
        work = self._reduce(vec)
        if not work:
            return False
        F = self.F
        cols = self._cols
        key = sorted(work, key=repr)[0]
        pv = work.pop(key)
        row = {k: F.div(c, pv) for k, c in work.items()}
        # Back-eliminate the new pivot key from the rows that hit it; the
        # column index says which those are, so no full scan is needed.
        for pk in cols.pop(key, ()):
            prow = self.pivots[pk]
            f = prow.pop(key)
            for k, c in row.items():
                val = F.sub(prow.get(k, F.zero()), F.mul(f, c))
                if F.is_zero(val):
                    if prow.pop(k, None) is not None:
                        cols[k].discard(pk)
                else:
                    if k not in prow:
                        cols.setdefault(k, set()).add(pk)
                    prow[k] = val
        self.pivots[key] = row
        for k in row:
            cols.setdefault(k, set()).add(key)
        return True

    @property
    def dim(self):
        return len(self.pivots)

    def contains(self, vec) -> bool:
        return not self._reduce(vec)
