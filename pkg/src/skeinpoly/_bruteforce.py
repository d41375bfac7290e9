"""Independent dimension oracles for the bigon, built from raw diagrams.

Used only by the verification suites as a cross-check on the diagram
engine: nothing here imports the normal-form machinery or the shared
linear algebra, and nothing ever calls normalize().  Diagrams are bare
(matching, states) pairs; relations are instantiated directly from the
local rules.

Two routes, deliberately different in style:

  graded_orbit_count   top-degree shadow of the relations; same-side
                       arcs die and an adjacent (+,-) swaps at unit
                       cost, so classes are mergeable by union-find and
                       the count of surviving orbits is the graded
                       dimension at k chords.
  cumulative_rank      honest quotient of the span of every raw stated
                       diagram with at most 2k endpoints by every
                       instance of the turnback and state-sort rules,
                       by fraction-free elimination over Laurent
                       polynomials in v represented as plain dicts.
"""

from gmpy2 import mpq

# turnback values keyed by (state at lower slot, state at higher slot)
_TURNBACK = {
    ("-", "+"): {-1: mpq(1)},
    ("+", "-"): {-5: mpq(-1)},
    ("+", "+"): {},
    ("-", "-"): {},
}
_LOOP = {4: mpq(-1), -4: mpq(-1)}
_SWAP = {4: mpq(1)}
_JOIN = {-1: mpq(1)}


# ---------------------------------------------------------------------------
# Laurent dicts


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


# ---------------------------------------------------------------------------
# raw diagrams

# A raw bigon diagram with m0 points on marking 0 and m1 on marking 1 is
# a noncrossing perfect matching of the circle positions
# 0..m0-1 (marking 0, slot order) and m0..m0+m1-1 (marking 1, reversed
# slot order), plus a state per position.  Positions run around the
# boundary of the disk, so noncrossing is the usual chord condition.


def _noncrossing_matchings(n):
    if n % 2:
        return []

    def rec(points):
        if not points:
            return [()]
        a = points[0]
        out = []
        for i in range(1, len(points), 2):
            b = points[i]
            for left in rec(points[1:i]):
                for right in rec(points[i + 1 :]):
                    out.append(((a, b),) + left + right)
        return out

    return [tuple(sorted(m)) for m in rec(tuple(range(n)))]


def _raw_diagrams(m0, m1):
    """All (matching, states) pairs; states is a string over positions."""
    n = m0 + m1
    out = []
    for matching in _noncrossing_matchings(n):
        for bits in range(1 << n):
            states = "".join(
                "+" if bits & (1 << i) else "-" for i in range(n)
            )
            out.append((matching, states))
    return out


def _slot_order(m0, m1):
    """Position lists of each marking in increasing slot order.

    Walking the boundary visits marking 0 bottom-to-top and marking 1
    top-to-bottom, so marking 1's slot order reverses the positions.
    """
    return list(range(m0)), list(range(m0 + m1 - 1, m0 - 1, -1))


# ---------------------------------------------------------------------------
# graded orbit count


def graded_orbit_count(k):
    """Orbits of k-chord cross diagrams under the graded moves.

    At top degree every same-side arc is zero and an adjacent (+,-)
    pair swaps (the join term has fewer chords, so it drops out of the
    graded picture).  Surviving orbits are counted by union-find.
    """
    m0 = m1 = k
    # same-side arcs are graded zero, and the only noncrossing matching
    # with every arc crossing is the rainbow
    rainbow = tuple((i, 2 * k - 1 - i) for i in range(k))
    pool = [
        (rainbow, "".join("+" if bits & (1 << i) else "-" for i in range(2 * k)))
        for bits in range(1 << (2 * k))
    ]
    index = {d: i for i, d in enumerate(pool)}
    parent = list(range(len(pool)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    slots0, slots1 = _slot_order(m0, m1)
    for d in pool:
        matching, states = d
        for slots in (slots0, slots1):
            for lo, hi in zip(slots, slots[1:]):
                if states[lo] == "+" and states[hi] == "-":
                    swapped = list(states)
                    swapped[lo], swapped[hi] = "-", "+"
                    other = (matching, "".join(swapped))
                    union(index[d], index[other])
    return len({find(i) for i in range(len(pool))})


# ---------------------------------------------------------------------------
# full relation-span rank


def _remove_pair(matching, states, a, b):
    """Drop positions a and b and relabel the rest downward."""
    keep = [p for p in range(len(states)) if p not in (a, b)]
    relabel = {p: i for i, p in enumerate(keep)}
    new_matching = tuple(
        sorted(
            (relabel[x], relabel[y])
            for x, y in matching
            if x not in (a, b) and y not in (a, b)
        )
    )
    new_states = "".join(states[p] for p in keep)
    return new_matching, new_states


def _relation_rows(m0, m1, index_of):
    """Every turnback and state-sort instance inside the pool.

    Rows are sparse dicts diagram-index -> Laurent dict.  index_of
    resolves a (marking sizes, matching, states) triple produced by a
    rewrite; rewrites only ever shrink marking sizes or keep them.
    """
    rows = []
    slots0, slots1 = _slot_order(m0, m1)
    for matching, states in _raw_diagrams(m0, m1):
        me = index_of(m0, m1, matching, states)
        # turnback arcs: both ends on one marking, adjacent in slot order
        for slots, mm in ((slots0, 0), (slots1, 1)):
            for i in range(len(slots) - 1):
                a, b = slots[i], slots[i + 1]
                if (min(a, b), max(a, b)) not in matching:
                    continue
                value = _TURNBACK[(states[a], states[b])]
                rest_m, rest_s = _remove_pair(matching, states, a, b)
                nm0 = m0 - 2 if mm == 0 else m0
                nm1 = m1 - 2 if mm == 1 else m1
                row = {me: {0: mpq(1)}}
                if value:
                    rest = index_of(nm0, nm1, rest_m, rest_s)
                    row[rest] = _padd(row.get(rest, {}), _pneg(value))
                rows.append(row)
        # state-sort: adjacent (+,-) in slot order on one marking
        for slots in (slots0, slots1):
            for i in range(len(slots) - 1):
                a, b = slots[i], slots[i + 1]
                if not (states[a] == "+" and states[b] == "-"):
                    continue
                row = {me: {0: mpq(1)}}
                swapped = list(states)
                swapped[a], swapped[b] = "-", "+"
                other = index_of(m0, m1, matching, "".join(swapped))
                row[other] = _padd(row.get(other, {}), _pneg(_SWAP))
                # join: cap the two endpoints, reconnect their partners
                pa = next(x + y - a for x, y in matching if a in (x, y))
                pb = next(x + y - b for x, y in matching if b in (x, y))
                if pa == b:
                    # the pair was one arc; capping closes a loop
                    rest_m, rest_s = _remove_pair(matching, states, a, b)
                    nm0 = m0 - (2 if a < m0 else 0)
                    nm1 = m1 - (0 if a < m0 else 2)
                    rest = index_of(nm0, nm1, rest_m, rest_s)
                    coeff = _pneg(_pmul(_JOIN, _LOOP))
                    row[rest] = _padd(row.get(rest, {}), coeff)
                else:
                    kept = tuple(
                        sorted(
                            [
                                (min(pa, pb), max(pa, pb))
                            ]
                            + [
                                arc
                                for arc in matching
                                if a not in arc and b not in arc
                            ]
                        )
                    )
                    rest_m, rest_s = _remove_pair(kept, states, a, b)
                    nm0 = m0 - (2 if a < m0 else 0)
                    nm1 = m1 - (0 if a < m0 else 2)
                    rest = index_of(nm0, nm1, rest_m, rest_s)
                    row[rest] = _padd(row.get(rest, {}), _pneg(_JOIN))
                rows.append(row)
    return rows


def _diagram_key(m0, m1, matching, states):
    """Sort key compatible with termination of the rewrites.

    Turnback and join strictly drop the endpoint total; a state swap
    keeps total and matching but moves a '+' to a higher slot, which
    strictly lowers the slot-order word read with '+' as the high
    digit.  Eliminating on the max key therefore always rewrites
    downward and terminates.
    """
    word = states[:m0] + states[m0:][::-1]
    bits = "".join("1" if c == "+" else "0" for c in word)
    return (m0 + m1, m0, matching, bits)


def cumulative_rank(k):
    """Dimension of the span of all raw diagrams with <= 2k endpoints
    modulo every relation instance, by exact elimination."""
    pool = set()
    for total in range(0, 2 * k + 1, 2):
        for m0 in range(total + 1):
            m1 = total - m0
            for matching, states in _raw_diagrams(m0, m1):
                pool.add(_diagram_key(m0, m1, matching, states))

    def index_of(m0, m1, matching, states):
        key = _diagram_key(m0, m1, matching, states)
        if key not in pool:
            raise AssertionError("rewrite left the diagram pool: %r" % (key,))
        return key

    rows = []
    for total in range(0, 2 * k + 1, 2):
        for m0 in range(total + 1):
            rows.extend(_relation_rows(m0, total - m0, index_of))

    # fraction-free sparse elimination; rows stay polynomial throughout
    pivots = {}
    rank = 0
    for row in rows:
        row = {i: p for i, p in row.items() if p}
        while row:
            lead = max(row)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = row
                rank += 1
                break
            fac = row.pop(lead)
            pv = hit[lead]
            merged = {}
            for i in set(row) | set(hit):
                if i == lead:
                    continue
                val = _padd(
                    _pmul(pv, row.get(i, {})),
                    _pneg(_pmul(fac, hit.get(i, {}))),
                )
                if val:
                    merged[i] = val
            row = merged
    return len(pool) - rank
