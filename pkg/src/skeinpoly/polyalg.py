"""Algebra structure on stated-diagram vectors.

The product stacks the left factor above the right factor in the
thickened polygon: at every marking the left factor's endpoints take
the higher heights, and at every crossing of the projected chords the
left factor runs over.  Chords cross exactly when their endpoints
interleave along the boundary, and the crossings along a chord are met
in increasing counterclockwise distance from its starting endpoint.
"""

from __future__ import annotations

import itertools

from .polydiag import (
    DiagramError,
    MarkedPolygon,
    NormalDiagram,
    SkeinVector,
    StatedDiagram,
    _cyclic_between,
    normalize,
)
from .scalars import CycloRing, LAURENT

__all__ = [
    "Algebra",
    "bigon_chord",
    "chord_diagram",
    "classical_form",
    "disjoint_union",
    "graded_basis",
    "mul",
    "stack",
]


def stack(top, bottom):
    """Overlay two basis diagrams, top above bottom; coefficient is 1."""
    if top.surface != bottom.surface:
        raise DiagramError("factors live on different surfaces")
    surface = top.surface

    endpoints = []
    index = {}
    for m in range(surface.n_markings):
        nb = len(bottom.words[m])
        for s, st in enumerate(bottom.words[m]):
            index[("y", m, s)] = len(endpoints)
            endpoints.append((m, s, st))
        for s, st in enumerate(top.words[m]):
            index[("x", m, s)] = len(endpoints)
            endpoints.append((m, nb + s, st))

    pos = {}
    comp_total = []
    for c in range(len(surface.components)):
        p = 0
        for m in surface.markings_of(c):
            for s in range(len(bottom.words[m])):
                pos[("y", m, s)] = p
                p += 1
            for s in range(len(top.words[m])):
                pos[("x", m, s)] = p
                p += 1
        comp_total.append(p)

    tops = [(("x",) + tuple(a), ("x",) + tuple(b)) for a, b in top.chords]
    bots = [(("y",) + tuple(a), ("y",) + tuple(b)) for a, b in bottom.chords]

    def comp_of(tag):
        return surface.component_of(tag[1])

    rotation = {}
    cross_on = {("x", i): [] for i in range(len(tops))}
    cross_on.update({("y", j): [] for j in range(len(bots))})
    cid = 0
    for i, (u, w) in enumerate(tops):
        c = comp_of(u)
        n = comp_total[c]
        for j, (r, s) in enumerate(bots):
            if comp_of(r) != c:
                continue
            if _cyclic_between(pos[u], pos[r], pos[w], n) == _cyclic_between(
                pos[u], pos[s], pos[w], n
            ):
                continue
            tags = sorted((u, w, r, s), key=lambda t: pos[t])
            if tags[0][0] != "x":
                tags = tags[1:] + tags[:1]
            assert [t[0] for t in tags] == ["x", "y", "x", "y"]
            rotation[cid] = tuple(tags)
            cross_on[("x", i)].append(cid)
            cross_on[("y", j)].append(cid)
            cid += 1

    legmap = {}
    for c_, tags in rotation.items():
        for leg, t in enumerate(tags):
            legmap[(c_, t)] = leg

    edges = []
    labeled = [(("x", i), uw) for i, uw in enumerate(tops)]
    labeled += [(("y", j), rs) for j, rs in enumerate(bots)]
    for key, (u, w) in labeled:
        c = comp_of(u)
        n = comp_total[c]
        if pos[w] < pos[u]:
            u, w = w, u
        order = []
        for c_ in cross_on[key]:
            others = [t for t in rotation[c_] if t != u and t != w]
            inside = [t for t in others if _cyclic_between(pos[u], pos[t], pos[w], n)]
            assert len(inside) == 1
            order.append(((pos[inside[0]] - pos[u]) % n, c_))
        order.sort()
        prev = ("b", index[u])
        for _, c_ in order:
            edges.append((prev, ("x", c_, legmap[(c_, u)])))
            prev = ("x", c_, legmap[(c_, w)])
        edges.append((prev, ("b", index[w])))

    return StatedDiagram(surface, endpoints, tuple(rotation), edges)


def mul(x, y, strategy="low"):
    """Product of two vectors on the same surface over the same ring."""
    if x.surface != y.surface:
        raise DiagramError("factors live on different surfaces")
    if x.ring != y.ring:
        raise DiagramError("factors live over different rings")
    out = SkeinVector.zero(x.surface, x.ring)
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            piece = normalize(stack(dx, dy), x.ring, strategy)
            out = out + piece.scale(cx * cy)
    return out


def disjoint_union(x, y):
    """Place two vectors on the disjoint union of their surfaces."""
    if x.ring != y.ring:
        raise DiagramError("factors live over different rings")
    surface = MarkedPolygon(x.surface.components + y.surface.components)
    shift = x.surface.n_markings
    terms = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            words = dx.words + dy.words
            chords = dx.chords + tuple(
                ((m1 + shift, s1), (m2 + shift, s2)) for (m1, s1), (m2, s2) in dy.chords
            )
            d = NormalDiagram(surface, words, chords)
            c = cx * cy
            terms[d] = terms[d] + c if d in terms else c
    return SkeinVector(surface, x.ring, terms)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _noncrossing_matchings(seq):
    """Noncrossing perfect matchings of seq, no same-marking pairs.

    seq is a tuple of (marking, slot) in boundary order.
    """
    if not seq:
        yield ()
        return
    first = seq[0]
    for t in range(1, len(seq), 2):
        if seq[t][0] == first[0]:
            continue
        for left in _noncrossing_matchings(seq[1:t]):
            for right in _noncrossing_matchings(seq[t + 1 :]):
                yield ((first, seq[t]),) + left + right


def _component_matchings(surface, component, n_chords):
    """All chord systems with n_chords chords on one disk."""
    marks = list(surface.markings_of(component))
    if not marks:
        return [()] if n_chords == 0 else []
    out = []
    for counts in _compositions(2 * n_chords, len(marks)):
        seq = tuple((m, s) for m, cnt in zip(marks, counts) for s in range(cnt))
        out.extend(_noncrossing_matchings(seq))
    return out


def graded_basis(surface, k):
    """All basis diagrams with exactly k chords, in canonical order."""
    if k < 0:
        raise DiagramError("chord count must be nonnegative")
    per_comp = [
        {j: _component_matchings(surface, c, j) for j in range(k + 1)}
        for c in range(len(surface.components))
    ]
    out = []
    for split in _compositions(k, len(surface.components)):
        pools = [per_comp[c][j] for c, j in enumerate(split)]
        for combo in itertools.product(*pools):
            chords = tuple(ch for part in combo for ch in part)
            counts = [0] * surface.n_markings
            for (m1, _), (m2, _) in chords:
                counts[m1] += 1
                counts[m2] += 1
            word_pools = [
                ["-" * i + "+" * (n - i) for i in range(n + 1)] for n in counts
            ]
            for words in itertools.product(*word_pools):
                out.append(NormalDiagram(surface, words, chords))
    out.sort(key=lambda d: d.sort_key())
    return out


def classical_form(x):
    """Specialize a vector at v = 1 (the commutative case)."""
    classical = CycloRing(1)
    return SkeinVector(x.surface, classical, dict(x.terms))


def chord_diagram(surface, m1, state1, m2, state2):
    """Single stated chord between two markings (slot 0 at each)."""
    words = [""] * surface.n_markings
    words[m1] = state1
    words[m2] = state2
    return NormalDiagram(surface, words, (((m1, 0), (m2, 0)),))


def bigon_chord(left_state, right_state, surface=None):
    from .polydiag import BIGON

    return chord_diagram(surface or BIGON, 0, left_state, 1, right_state)


class Algebra:
    """Convenience handle bundling a surface with a coefficient ring."""

    def __init__(self, surface, ring=LAURENT):
        self.surface = surface
        self.ring = ring

    def unit(self):
        return SkeinVector.unit(self.surface, self.ring)

    def zero(self):
        return SkeinVector.zero(self.surface, self.ring)

    def vector(self, diagram, coeff=1):
        if isinstance(coeff, int):
            coeff = self.ring.from_rational(coeff)
        return SkeinVector(self.surface, self.ring, {diagram: coeff})

    def mul(self, x, y):
        return mul(x, y)

    def graded_basis(self, k):
        return graded_basis(self.surface, k)

    def __repr__(self):
        return "Algebra(%r, %r)" % (self.surface, self.ring)
