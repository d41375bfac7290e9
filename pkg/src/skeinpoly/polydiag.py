"""Diagram calculus for stated tangles in thickened marked polygons.

A surface here is a disjoint union of disks, each carrying finitely
many marked boundary intervals ("markings", numbered globally).
Strand endpoints sit on markings at distinct integer heights, and
heights increase counterclockwise along the boundary at every marking.

A ``StatedDiagram`` records strands, over/under crossings, endpoint
states and free loops.  Each crossing stores the counterclockwise
rotation of its four legs; the over strand always occupies legs 0 and
2.  ``normalize`` rewrites any diagram into the basis of crossingless
diagrams with no arc returning to its own marking and with states
nondecreasing ("-" below "+") at every marking, producing an exact
linear combination over the Laurent ring in v (q = v^2).

Rewriting rules, with (lower, upper) the states of two endpoints at
adjacent heights on one marking:

* crossing         = q * (join legs 0-3, 1-2) + q^-1 * (join 0-1, 2-3)
* free loop        = -q^2 - q^-2
* returning arc    = q^-1/2 if states (-,+); zero if (+,+) or (-,-)
* pattern (+,-)    = q^2 * (states swapped) + q^-1/2 * (ends joined)
"""

from __future__ import annotations

import itertools

from .scalars import LAURENT, LaurentScalar, STATES, loop_value

__all__ = [
    "BIGON",
    "DiagramError",
    "MarkedPolygon",
    "MONOGON",
    "NormalDiagram",
    "SkeinVector",
    "StatedDiagram",
    "TRIANGLE",
    "canonical_compare",
    "clear_cache",
    "normalize",
    "smooth_crossing",
    "validate",
]


class DiagramError(ValueError):
    """Raised when diagram data fails structural validation."""


class MarkedPolygon:
    """Disjoint union of disks; component i carries components[i] markings.

    Markings are numbered globally: component 0 owns 0..n0-1, component 1
    owns n0..n0+n1-1, and so on, each in counterclockwise boundary order.
    """

    __slots__ = ("components", "_offsets")

    def __init__(self, components):
        comps = tuple(int(n) for n in components)
        if any(n < 0 for n in comps):
            raise DiagramError("marking counts must be nonnegative")
        self.components = comps
        offs = [0]
        for n in comps:
            offs.append(offs[-1] + n)
        self._offsets = tuple(offs)

    @property
    def n_markings(self):
        return self._offsets[-1]

    def component_of(self, marking):
        if not 0 <= marking < self.n_markings:
            raise DiagramError("no such marking: %r" % (marking,))
        for c in range(len(self.components)):
            if marking < self._offsets[c + 1]:
                return c
        raise AssertionError

    def markings_of(self, component):
        return range(self._offsets[component], self._offsets[component + 1])

    def __eq__(self, other):
        return isinstance(other, MarkedPolygon) and self.components == other.components

    def __hash__(self):
        return hash(("MarkedPolygon", self.components))

    def __repr__(self):
        return "MarkedPolygon(%r)" % (self.components,)

    def to_json(self):
        return {"components": [{"markings": n} for n in self.components]}

    @staticmethod
    def from_json(data):
        try:
            comps = [entry["markings"] for entry in data["components"]]
        except (KeyError, TypeError) as exc:
            raise DiagramError("bad surface data: %s" % exc)
        return MarkedPolygon(comps)


MONOGON = MarkedPolygon((1,))
BIGON = MarkedPolygon((2,))
TRIANGLE = MarkedPolygon((3,))


def _check_word(word):
    if any(ch not in STATES for ch in word):
        raise DiagramError("bad state letter in %r" % word)
    if "+-" in word:
        raise DiagramError("states not sorted in %r" % word)


class NormalDiagram:
    """Basis diagram: crossingless, no returning arcs, sorted states.

    words[m] is the state word of marking m read in increasing height;
    chords are pairs ((m, slot), (m', slot')) with m != m'.
    """

    __slots__ = ("surface", "words", "chords")

    def __init__(self, surface, words, chords, check=True):
        self.surface = surface
        self.words = tuple(str(w) for w in words)
        self.chords = tuple(sorted(tuple(sorted(map(tuple, ch))) for ch in chords))
        if check:
            self._check()

    def _check(self):
        surf = self.surface
        if len(self.words) != surf.n_markings:
            raise DiagramError("need one state word per marking")
        for w in self.words:
            _check_word(w)
        seen = set()
        for (m1, s1), (m2, s2) in self.chords:
            if m1 == m2:
                raise DiagramError("returning arc (%d,%d)-(%d,%d)" % (m1, s1, m2, s2))
            if surf.component_of(m1) != surf.component_of(m2):
                raise DiagramError("chord spans two components")
            for m, s in ((m1, s1), (m2, s2)):
                if not 0 <= s < len(self.words[m]):
                    raise DiagramError("slot %d out of range at marking %d" % (s, m))
                if (m, s) in seen:
                    raise DiagramError("slot (%d,%d) used twice" % (m, s))
                seen.add((m, s))
        if len(seen) != sum(len(w) for w in self.words):
            raise DiagramError("unmatched endpoint slots")
        # pairwise noncrossing within each component
        pos = self._positions()
        total = {c: 0 for c in range(len(surf.components))}
        for m in range(surf.n_markings):
            total[surf.component_of(m)] += len(self.words[m])
        for ch1, ch2 in itertools.combinations(self.chords, 2):
            c = surf.component_of(ch1[0][0])
            if c != surf.component_of(ch2[0][0]):
                continue
            n = total[c]
            a, b = pos[ch1[0]], pos[ch1[1]]
            x, y = pos[ch2[0]], pos[ch2[1]]
            if _cyclic_between(a, x, b, n) != _cyclic_between(a, y, b, n):
                raise DiagramError("chords %r and %r cross" % (ch1, ch2))

    def _positions(self):
        """Boundary position of each (marking, slot) within its component."""
        pos = {}
        for c in range(len(self.surface.components)):
            p = 0
            for m in self.surface.markings_of(c):
                for s in range(len(self.words[m])):
                    pos[(m, s)] = p
                    p += 1
        return pos

    @property
    def n_chords(self):
        return len(self.chords)

    def sort_key(self):
        return (self.n_chords, self.words, self.chords)

    def __eq__(self, other):
        return (
            isinstance(other, NormalDiagram)
            and self.surface == other.surface
            and self.words == other.words
            and self.chords == other.chords
        )

    def __hash__(self):
        return hash((self.surface, self.words, self.chords))

    def __repr__(self):
        return "NormalDiagram(%s; %s)" % (
            "|".join(w or "." for w in self.words),
            ", ".join("%d.%d-%d.%d" % (a + b) for a, b in self.chords),
        )

    def to_stated(self):
        endpoints = []
        index = {}
        for m in range(self.surface.n_markings):
            for s, st in enumerate(self.words[m]):
                index[(m, s)] = len(endpoints)
                endpoints.append((m, s, st))
        edges = tuple(
            tuple(sorted((("b", index[a]), ("b", index[b])))) for a, b in self.chords
        )
        return StatedDiagram(self.surface, endpoints, (), edges)

    def to_json(self):
        return self.to_stated().to_json()

    @staticmethod
    def from_json(data):
        return StatedDiagram.from_json(data).to_normal()


def _cyclic_between(a, x, b, n):
    """True when x lies in the open counterclockwise arc from a to b."""
    return 0 < (x - a) % n < (b - a) % n


def canonical_compare(d1, d2):
    """Total order on basis diagrams; returns -1, 0 or 1."""
    if d1.surface != d2.surface:
        raise DiagramError("cannot compare diagrams on different surfaces")
    k1, k2 = d1.sort_key(), d2.sort_key()
    return (k1 > k2) - (k1 < k2)


class StatedDiagram:
    """Tangle diagram, possibly with crossings and free loops.

    endpoints: tuple of (marking, height, state), sorted by (marking,
    height); the endpoint id is the index in this tuple.  crossings is a
    sorted tuple of ids.  edges is a sorted tuple of sorted end pairs,
    where an end is ("b", endpoint_id) or ("x", crossing_id, leg).
    """

    __slots__ = ("surface", "endpoints", "crossings", "edges", "free_loops")

    def __init__(self, surface, endpoints, crossings, edges, free_loops=0, check=True):
        self.surface = surface
        self.endpoints = tuple(tuple(e) for e in endpoints)
        self.crossings = tuple(sorted(crossings))
        self.edges = tuple(sorted(tuple(sorted(map(tuple, e))) for e in edges))
        self.free_loops = int(free_loops)
        if check:
            self._check()

    def _check(self):
        if self.free_loops < 0:
            raise DiagramError("negative loop count")
        if list(self.endpoints) != sorted(self.endpoints, key=lambda e: (e[0], e[1])):
            raise DiagramError("endpoints must be sorted by (marking, height)")
        seen_h = set()
        for m, h, st in self.endpoints:
            if not 0 <= m < self.surface.n_markings:
                raise DiagramError("endpoint on unknown marking %r" % (m,))
            if st not in STATES:
                raise DiagramError("bad state %r" % (st,))
            if (m, h) in seen_h:
                raise DiagramError("duplicate height %d at marking %d" % (h, m))
            seen_h.add((m, h))
        if len(set(self.crossings)) != len(self.crossings):
            raise DiagramError("duplicate crossing id")
        want = {("b", i) for i in range(len(self.endpoints))}
        want |= {("x", c, l) for c in self.crossings for l in range(4)}
        got = []
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1]:
                raise DiagramError("bad edge %r" % (e,))
            got.extend(e)
        if len(got) != len(set(got)):
            raise DiagramError("strand end used by two edges")
        if set(got) != want:
            raise DiagramError("edges do not pair up the strand ends")

    # -- basic views -------------------------------------------------

    def marking_blocks(self):
        """Endpoint ids grouped per marking, in increasing height."""
        blocks = [[] for _ in range(self.surface.n_markings)]
        for i, (m, _, _) in enumerate(self.endpoints):
            blocks[m].append(i)
        return blocks

    def boundary_order(self, component):
        """Endpoint ids along the component boundary, counterclockwise."""
        out = []
        for m in self.surface.markings_of(component):
            for i, (m2, _, _) in enumerate(self.endpoints):
                if m2 == m:
                    out.append(i)
        return out

    def _partner(self):
        partner = {}
        for a, b in self.edges:
            partner[a] = b
            partner[b] = a
        return partner

    def __eq__(self, other):
        return (
            isinstance(other, StatedDiagram)
            and self.surface == other.surface
            and self.endpoints == other.endpoints
            and self.crossings == other.crossings
            and self.edges == other.edges
            and self.free_loops == other.free_loops
        )

    def __hash__(self):
        return hash((self.surface, self.endpoints, self.crossings, self.edges, self.free_loops))

    def __repr__(self):
        return "StatedDiagram(%d endpoints, %d crossings, %d loops)" % (
            len(self.endpoints),
            len(self.crossings),
            self.free_loops,
        )

    # -- serialization -----------------------------------------------

    def to_json(self):
        def enc(end):
            if end[0] == "b":
                return ["b", end[1]]
            return ["x", end[1], end[2]]

        edge_index = {e: i for i, e in enumerate(self.edges)}

        def edge_at(cid, leg):
            for e in self.edges:
                if ("x", cid, leg) in e:
                    return edge_index[e]
            raise AssertionError

        return {
            "components": [{"markings": n} for n in self.surface.components],
            "endpoints": [
                {"marking": m, "height": h, "state": st} for m, h, st in self.endpoints
            ],
            "crossings": [
                {
                    "id": cid,
                    "over": [edge_at(cid, 0), edge_at(cid, 2)],
                    "under": [edge_at(cid, 1), edge_at(cid, 3)],
                }
                for cid in self.crossings
            ],
            "edges": [[enc(a), enc(b)] for a, b in self.edges],
            "free_loops": self.free_loops,
        }

    @staticmethod
    def from_json(data):
        surface = MarkedPolygon.from_json(data)
        try:
            endpoints = [
                (e["marking"], e["height"], e["state"]) for e in data.get("endpoints", [])
            ]
            raw_edges = data.get("edges", [])
            raw_cross = data.get("crossings", [])
            loops = data.get("free_loops", 0)
        except (KeyError, TypeError) as exc:
            raise DiagramError("bad diagram data: %s" % exc)
        order = sorted(range(len(endpoints)), key=lambda i: (endpoints[i][0], endpoints[i][1]))
        remap = {old: new for new, old in enumerate(order)}
        endpoints = [endpoints[i] for i in order]

        def dec(end):
            if not isinstance(end, (list, tuple)) or not end:
                raise DiagramError("bad strand end %r" % (end,))
            if end[0] == "b" and len(end) == 2:
                if int(end[1]) not in remap:
                    raise DiagramError("edge references endpoint %r" % (end[1],))
                return ("b", remap[int(end[1])])
            if end[0] == "x" and len(end) == 3:
                return ("x", int(end[1]), int(end[2]))
            raise DiagramError("bad strand end %r" % (end,))

        edges = [tuple(dec(e) for e in pair) for pair in raw_edges]
        crossings = [c["id"] for c in raw_cross]
        diagram = StatedDiagram(surface, endpoints, crossings, edges, loops)
        # cross-check the redundant over/under lists when present
        edge_index = {e: i for i, e in enumerate(diagram.edges)}
        for c in raw_cross:
            cid = c["id"]
            for legs, key in (((0, 2), "over"), ((1, 3), "under")):
                if key not in c:
                    continue
                claimed = sorted(c[key])
                actual = sorted(
                    edge_index[e] for e in diagram.edges for leg in legs if ("x", cid, leg) in e
                )
                if claimed != actual:
                    raise DiagramError("crossing %r: %s legs disagree with edges" % (cid, key))
        return diagram

    # -- rewriting steps ----------------------------------------------

    def replace(self, **kw):
        data = {
            "surface": self.surface,
            "endpoints": self.endpoints,
            "crossings": self.crossings,
            "edges": self.edges,
            "free_loops": self.free_loops,
        }
        data.update(kw)
        return StatedDiagram(check=False, **data)

    def smooth(self, cid, positive):
        """Replace crossing cid by parallel arcs.

        positive joins legs 0-3 and 1-2 (the q term); negative joins
        0-1 and 2-3 (the q^-1 term).
        """
        if cid not in self.crossings:
            raise DiagramError("no crossing %r" % (cid,))
        p = [("x", cid, l) for l in range(4)]
        welds = [(p[0], p[3]), (p[1], p[2])] if positive else [(p[0], p[1]), (p[2], p[3])]
        edges, loops = _weld(self.edges, welds)
        return self.replace(
            crossings=tuple(c for c in self.crossings if c != cid),
            edges=edges,
            free_loops=self.free_loops + loops,
        )

    def _drop_endpoints(self, gone, edges):
        keep = [i for i in range(len(self.endpoints)) if i not in gone]
        remap = {old: new for new, old in enumerate(keep)}

        def fix(end):
            if end[0] == "b":
                return ("b", remap[end[1]])
            return end

        return self.replace(
            endpoints=tuple(self.endpoints[i] for i in keep),
            edges=tuple(tuple(fix(e) for e in pair) for pair in edges),
        )

    def remove_arc(self, i, j):
        """Delete the arc whose two ends are boundary endpoints i and j."""
        target = tuple(sorted((("b", i), ("b", j))))
        if target not in self.edges:
            raise DiagramError("no arc between endpoints %d and %d" % (i, j))
        rest = tuple(e for e in self.edges if e != target)
        return self._drop_endpoints({i, j}, rest)

    def swap_states(self, i, j):
        eps = list(self.endpoints)
        mi, hi, si = eps[i]
        mj, hj, sj = eps[j]
        eps[i] = (mi, hi, sj)
        eps[j] = (mj, hj, si)
        return self.replace(endpoints=tuple(eps))

    def join_ends(self, i, j):
        """Connect the strands at boundary endpoints i and j."""
        edges, loops = _weld(self.edges, [(("b", i), ("b", j))])
        out = self.replace(edges=edges, free_loops=self.free_loops + loops)
        return out._drop_endpoints({i, j}, out.edges)

    def find_reduction(self, strategy="low"):
        """Next rewrite per the strategy's scan order, or None if normal."""
        if strategy not in ("low", "high"):
            raise DiagramError("unknown strategy %r" % (strategy,))
        if self.crossings:
            cid = min(self.crossings) if strategy == "low" else max(self.crossings)
            return ("smooth", cid)
        partner = self._partner()
        blocks = self.marking_blocks()
        scan = blocks if strategy == "low" else [list(reversed(b)) for b in reversed(blocks)]
        for block in scan:
            for a, b in zip(block, block[1:]):
                i, j = (a, b) if self.endpoints[a][1] < self.endpoints[b][1] else (b, a)
                lo, hi = self.endpoints[i][2], self.endpoints[j][2]
                same = partner.get(("b", i)) == ("b", j)
                if same and (lo, hi) == ("-", "+"):
                    return ("turnback", i, j)
                if same and lo == hi:
                    return ("dead", i, j)
                if (lo, hi) == ("+", "-"):
                    return ("sort", i, j)
        return None

    def to_normal(self):
        if self.crossings or self.free_loops:
            raise DiagramError("diagram is not crossingless and loop free")
        blocks = self.marking_blocks()
        words = []
        rank = {}
        for m, block in enumerate(blocks):
            words.append("".join(self.endpoints[i][2] for i in block))
            for s, i in enumerate(block):
                rank[i] = (m, s)
        chords = []
        for a, b in self.edges:
            if a[0] != "b" or b[0] != "b":
                raise AssertionError("crossingless diagram with crossing ends")
            chords.append((rank[a[1]], rank[b[1]]))
        return NormalDiagram(self.surface, words, chords)

    # -- canonical key for memoization ---------------------------------

    def canonical_key(self):
        """Hashable key invariant under relabeling, or None.

        None is returned when a closed strand runs through crossings
        without touching the boundary; those rare diagrams are simply
        not memoized.
        """
        partner = self._partner()
        new_cid = {}
        shift = {}
        visited = set()
        for i in range(len(self.endpoints)):
            start = ("b", i)
            if start in visited:
                continue
            visited.add(start)
            cur = start
            while True:
                nxt = partner[cur]
                if nxt[0] == "b":
                    visited.add(nxt)
                    break
                _, cid, leg = nxt
                if cid not in new_cid:
                    new_cid[cid] = len(new_cid)
                    shift[cid] = 0 if leg in (0, 1) else 2
                cur = ("x", cid, (leg + 2) % 4)
        if len(new_cid) != len(self.crossings):
            return None

        def enc(end):
            if end[0] == "b":
                return ("b", end[1])
            _, cid, leg = end
            return ("x", new_cid[cid], (leg + shift[cid]) % 4)

        edges = tuple(sorted(tuple(sorted((enc(a), enc(b)))) for a, b in self.edges))
        eps = tuple((m, st) for m, _, st in self.endpoints)
        return (self.surface.components, eps, edges, self.free_loops)

    # -- planarity ------------------------------------------------------

    def validate(self):
        """Return a list of problems; empty means the diagram is sound."""
        try:
            self._check()
        except DiagramError as exc:
            return [str(exc)]
        problems = []
        sigma = {}
        alpha = {}
        vertex = {}
        for cid in self.crossings:
            for l in range(4):
                h = ("x", cid, l)
                sigma[h] = ("x", cid, (l + 1) % 4)
                vertex[h] = ("vx", cid)
        for a, b in self.edges:
            alpha[a] = b
            alpha[b] = a
        for i in range(len(self.endpoints)):
            vertex[("b", i)] = ("vb", i)
        comp_of_endpoint = {}
        for comp in range(len(self.surface.components)):
            bd = self.boundary_order(comp)
            m = len(bd)
            for i in bd:
                comp_of_endpoint[i] = comp
            for k, e in enumerate(bd):
                af = ("af", comp, k)
                ah = ("ah", comp, (k - 1) % m)
                sigma[af] = ("b", e)
                sigma[("b", e)] = ah
                sigma[ah] = af
                vertex[af] = ("vb", e)
                vertex[ah] = ("vb", e)
            for k in range(m):
                alpha[("af", comp, k)] = ("ah", comp, k)
                alpha[("ah", comp, k)] = ("af", comp, k)

        halves = set(sigma)
        if set(alpha) != halves:
            # lone crossing legs or endpoints were caught by _check already
            return ["internal half-edge mismatch"]

        parent = {h: h for h in halves}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for h in halves:
            union(h, sigma[h])
            union(h, alpha[h])

        faces = {}
        seen = set()
        for h in halves:
            if h in seen:
                continue
            orbit = []
            cur = h
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = sigma[alpha[cur]]
            faces.setdefault(find(h), []).append(orbit)

        groups = {}
        for h in halves:
            groups.setdefault(find(h), set()).add(h)
        for root, hs in groups.items():
            verts = {vertex[h] for h in hs}
            n_edges = len(hs) // 2
            n_faces = len(faces.get(root, ()))
            if len(verts) - n_edges + n_faces != 2:
                problems.append("component fails the planarity count")
            comps = {
                comp_of_endpoint[v[1]] for v in verts if v[0] == "vb"
            }
            if len(comps) > 1:
                problems.append("strand connects two different disks")

        for comp in range(len(self.surface.components)):
            bd = self.boundary_order(comp)
            if not bd:
                continue
            start = ("af", comp, 0)
            orbit = set()
            cur = start
            while cur not in orbit:
                orbit.add(cur)
                cur = sigma[alpha[cur]]
            wanted = {("af", comp, k) for k in range(len(bd))}
            if orbit != wanted:
                problems.append("a strand escapes the disk of component %d" % comp)
        return problems


def validate(diagram):
    """Module-level convenience wrapper around StatedDiagram.validate."""
    return diagram.validate()


def crossingless_diagram(surface, words, chords):
    """Stated diagram from per-marking words and (marking, slot) chords.

    Unlike NormalDiagram this places no sortedness condition on the
    words, so the result may still need normalizing.
    """
    endpoints = []
    index = {}
    for m in range(surface.n_markings):
        for s, st in enumerate(words[m]):
            index[(m, s)] = len(endpoints)
            endpoints.append((m, s, st))
    edges = []
    for a, b in chords:
        edges.append(tuple(sorted((("b", index[tuple(a)]), ("b", index[tuple(b)])))))
    return StatedDiagram(surface, endpoints, (), edges)


def _weld(edge_list, weld_pairs):
    """Splice strand ends pairwise; returns (new edges, closed loop count)."""
    partner = {}
    for a, b in edge_list:
        partner[a] = b
        partner[b] = a
    loops = 0
    for p, r in weld_pairs:
        a = partner.pop(p)
        b = partner.pop(r)
        if a == r:
            loops += 1
            continue
        partner[a] = b
        partner[b] = a
    out = []
    done = set()
    for a, b in partner.items():
        if a in done:
            continue
        done.add(a)
        done.add(b)
        out.append((a, b))
    return tuple(sorted(tuple(sorted(e)) for e in out)), loops


def smooth_crossing(diagram, cid, positive):
    """Public wrapper; see StatedDiagram.smooth for the leg convention."""
    return diagram.smooth(cid, positive)


class SkeinVector:
    """Finite linear combination of basis diagrams on one surface."""

    __slots__ = ("surface", "ring", "terms")

    def __init__(self, surface, ring, terms):
        self.surface = surface
        self.ring = ring
        clean = {}
        for d, c in terms.items() if isinstance(terms, dict) else terms:
            if d.surface != surface:
                raise DiagramError("term on the wrong surface")
            c = ring.convert(c)
            if not c.is_zero():
                clean[d] = clean[d] + c if d in clean else c
        self.terms = {d: c for d, c in clean.items() if not c.is_zero()}

    @staticmethod
    def unit(surface, ring=LAURENT):
        empty = NormalDiagram(surface, ("",) * surface.n_markings, ())
        return SkeinVector(surface, ring, {empty: ring.one()})

    @staticmethod
    def zero(surface, ring=LAURENT):
        return SkeinVector(surface, ring, {})

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __add__(self, other):
        if self.surface != other.surface or self.ring != other.ring:
            raise DiagramError("cannot add vectors from different modules")
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return SkeinVector(self.surface, self.ring, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = self.ring.from_rational(c)
        else:
            c = self.ring.convert(c)
        return SkeinVector(
            self.surface, self.ring, {d: x * c for d, x in self.terms.items()}
        )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SkeinVector)
            and self.surface == other.surface
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.surface, self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "SkeinVector(0)"
        bits = ["(%r) * %r" % (c, d) for d, c in self.items_sorted()]
        return "SkeinVector(%s)" % " + ".join(bits)

    def to_json(self):
        return [[d.to_json(), c.to_json()] for d, c in self.items_sorted()]

    @staticmethod
    def from_json(data, surface, ring):
        terms = {}
        for entry in data:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise DiagramError("bad vector entry %r" % (entry,))
            d = NormalDiagram.from_json(entry[0])
            c = ring.scalar_from_json(entry[1])
            terms[d] = terms.get(d, ring.zero()) + c
        return SkeinVector(surface, ring, terms)


# -- normalization ----------------------------------------------------

_CACHE = {}
_ONE = LaurentScalar.one()
_Q = LaurentScalar.v_power(2)
_QINV = LaurentScalar.v_power(-2)
_Q2 = LaurentScalar.v_power(4)
_HALF_INV = LaurentScalar.v_power(-1)


def clear_cache():
    _CACHE.clear()


def _accumulate(dst, src, coeff):
    for d, c in src.items():
        x = c * coeff
        if d in dst:
            x = dst[d] + x
        if x.is_zero():
            dst.pop(d, None)
        else:
            dst[d] = x


def _norm(sd, strategy):
    factor = _ONE
    if sd.free_loops:
        factor = loop_value() ** sd.free_loops
        sd = sd.replace(free_loops=0)
    key = sd.canonical_key()
    cached = _CACHE.get((strategy, key)) if key is not None else None
    if cached is None:
        cached = _norm_core(sd, strategy)
        if key is not None:
            _CACHE[(strategy, key)] = cached
    if factor == _ONE:
        return cached
    return {d: c * factor for d, c in cached.items()}


def _norm_core(sd, strategy):
    step = sd.find_reduction(strategy)
    if step is None:
        return {sd.to_normal(): _ONE}
    kind = step[0]
    out = {}
    if kind == "smooth":
        cid = step[1]
        _accumulate(out, _norm(sd.smooth(cid, True), strategy), _Q)
        _accumulate(out, _norm(sd.smooth(cid, False), strategy), _QINV)
    elif kind == "dead":
        pass
    elif kind == "turnback":
        i, j = step[1], step[2]
        _accumulate(out, _norm(sd.remove_arc(i, j), strategy), _HALF_INV)
    elif kind == "sort":
        i, j = step[1], step[2]
        _accumulate(out, _norm(sd.swap_states(i, j), strategy), _Q2)
        _accumulate(out, _norm(sd.join_ends(i, j), strategy), _HALF_INV)
    else:
        raise AssertionError(kind)
    return out


def normalize(diagram, ring=LAURENT, strategy="low"):
    """Expand a diagram in the basis; exact coefficients in the ring.

    Normalization always runs over the Laurent ring and is memoized;
    cyclotomic results are obtained by specializing afterwards, which
    is safe because specialization is a ring map.
    """
    if isinstance(diagram, NormalDiagram):
        diagram = diagram.to_stated()
    raw = _norm(diagram, strategy)
    return SkeinVector(diagram.surface, ring, raw)
