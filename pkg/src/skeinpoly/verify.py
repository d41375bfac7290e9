"""Named verification suites with machine-readable reports.

Each suite function returns a dict

    {"suite": name, "parameters": {...}, "checks": [...], "pass": bool}

where checks are sorted by name and each carries a pass flag plus a
witness for the first failure, serialized exactly (no decimals).  The
CLI exposes every suite; the acceptance tests call them directly.

Sample character points live here rather than in the kernel: they are
verification data, chosen to cover identity, diagonal, unipotent,
negated-identity, and fully generic behaviour.
"""

import random

from gmpy2 import mpq

from . import maps
from ._bruteforce import cumulative_rank, graded_orbit_count
from .chebyshev import chebyshev_t, poly_mul, poly_sub
from .frobenius import frobenius, transparency_defect
from .polyalg import graded_basis, mul, stack
from .polydiag import (
    BIGON,
    MONOGON,
    MarkedPolygon,
    SkeinVector,
    StatedDiagram,
    TRIANGLE,
    normalize,
)
from .reduced import (
    CharacterPoint,
    bigon_point,
    induced_matrix,
    injectivity_check,
    merge_pushforward,
    product_point,
    pullback,
    reduced_dim,
    reduced_presentation,
    tensor_decompose,
    trivial_point,
)
from .scalars import CycloRing, LAURENT, loop_value, q, v
from .torus import TorusElement, canon, central_commutator

TWO_BIGONS = MarkedPolygon((2, 2))

DEFAULT_SEED = 20260814


def _lift(diagram, ring=LAURENT):
    return SkeinVector(diagram.surface, ring, {diagram: ring.one()})


def _basis_vectors(surface, kmax, ring=LAURENT):
    return [
        _lift(d, ring) for k in range(kmax + 1) for d in graded_basis(surface, k)
    ]


def _report(name, parameters, checks):
    checks = sorted(checks, key=lambda c: c["name"])
    return {
        "suite": name,
        "parameters": parameters,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def _check(name, ok, **extra):
    out = {"name": name, "pass": bool(ok)}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# sample character points


def sample_bigon_points():
    """Identity, diagonal, unipotent, negated identity, generic."""
    return {
        "identity": bigon_point(1, 0, 0, 1),
        "diagonal": bigon_point(2, 0, 0, mpq(1, 2)),
        "unipotent": bigon_point(1, 1, 0, 1),
        "neg_identity": bigon_point(-1, 0, 0, -1),
        "generic": bigon_point(2, 3, 1, 2),
    }


def sample_triangle_points():
    """Welded from bigon samples; welding is the only exact source."""
    b = sample_bigon_points()
    pairs = [
        ("identity*identity", b["identity"], b["identity"]),
        ("diagonal*unipotent", b["diagonal"], b["unipotent"]),
        ("generic*identity", b["generic"], b["identity"]),
        ("neg_identity*diagonal", b["neg_identity"], b["diagonal"]),
        ("generic*generic", b["generic"], b["generic"]),
    ]
    return {
        name: merge_pushforward(r1, r2, 1, 2) for name, r1, r2 in pairs
    }


def sample_product_points():
    b = sample_bigon_points()
    pairs = [
        ("identity*identity", b["identity"], b["identity"]),
        ("generic*diagonal", b["generic"], b["diagonal"]),
        ("unipotent*neg_identity", b["unipotent"], b["neg_identity"]),
    ]
    return {name: product_point(r1, r2) for name, r1, r2 in pairs}


# ---------------------------------------------------------------------------
# diagram builders for the relation suite


def _arc(states):
    endpoints = [(0, 0, states[0]), (0, 1, states[1])]
    return StatedDiagram(BIGON, endpoints, (), ((("b", 0), ("b", 1)),))


def _cross_pair(w0, w1):
    """Two parallel chords between the markings, states w0 at 0, w1 at 1."""
    endpoints = [(0, 0, w0[0]), (0, 1, w0[1]), (1, 0, w1[0]), (1, 1, w1[1])]
    edges = ((("b", 0), ("b", 3)), (("b", 1), ("b", 2)))
    return StatedDiagram(BIGON, endpoints, (), edges)


def _marking1_arc(w1):
    endpoints = [(1, 0, w1[0]), (1, 1, w1[1])]
    return StatedDiagram(BIGON, endpoints, (), ((("b", 0), ("b", 1)),))


def suite_relations():
    checks = []

    lv = loop_value()
    want = -(q(2) + q(-2))
    checks.append(
        _check(
            "loop-constant",
            lv == want,
            value=lv.to_json(),
        )
    )
    got = normalize(StatedDiagram(BIGON, (), (), (), free_loops=1))
    empty = normalize(StatedDiagram(BIGON, (), (), ()))
    checks.append(
        _check("loop-eliminates", got == empty.scale(lv), value=got.to_json())
    )

    turnback_values = {
        ("-", "+"): v(-1),
        ("+", "+"): LAURENT.zero(),
        ("-", "-"): LAURENT.zero(),
    }
    for (s0, s1), value in sorted(turnback_values.items()):
        got = normalize(_arc(s0 + s1))
        want_vec = empty.scale(value)
        checks.append(
            _check(
                "turnback-%s%s" % (s0, s1),
                got == want_vec,
                value=got.to_json(),
            )
        )

    # two-term rewriting identity for a (+,-) pattern at one marking
    ok = True
    witness = None
    for w1 in ("--", "-+", "+-", "++"):
        lhs = normalize(_cross_pair("+-", w1))
        swapped = normalize(_cross_pair("-+", w1))
        joined = normalize(_marking1_arc(w1))
        rhs = swapped.scale(q(2)) + joined.scale(v(-1))
        if lhs != rhs:
            ok = False
            witness = {"other_states": w1, "lhs": lhs.to_json(), "rhs": rhs.to_json()}
            break
    checks.append(_check("state-sort-two-term", ok, witness=witness))

    return _report("relations", {}, checks)


# ---------------------------------------------------------------------------


def _kink(surface, positive):
    if positive:
        edges = ((("x", 0, 0), ("x", 0, 3)), (("x", 0, 1), ("x", 0, 2)))
    else:
        edges = ((("x", 0, 0), ("x", 0, 1)), (("x", 0, 2), ("x", 0, 3)))
    return StatedDiagram(surface, (), (0,), edges)


def suite_confluence(count=200, seed=DEFAULT_SEED):
    rng = random.Random(seed)
    surfaces = [MONOGON, BIGON, TRIANGLE]
    pools = {
        s: [d for k in range(3) for d in graded_basis(s, k)] for s in surfaces
    }
    failures = []
    max_crossings = 0
    max_endpoints = 0
    for trial in range(count):
        surface = rng.choice(surfaces)
        if trial % 17 == 0:
            d = _kink(surface, rng.random() < 0.5)
        else:
            top = rng.choice(pools[surface])
            bottom = rng.choice(pools[surface])
            d = stack(top, bottom)
            if rng.random() < 0.25:
                d = d.replace(free_loops=1)
        max_crossings = max(max_crossings, len(d.crossings))
        max_endpoints = max(max_endpoints, len(d.endpoints))
        low = normalize(d, strategy="low")
        high = normalize(d, strategy="high")
        if low != high:
            failures.append(
                {
                    "trial": trial,
                    "diagram": d.to_json(),
                    "low": low.to_json(),
                    "high": high.to_json(),
                }
            )
            break
    checks = [
        _check(
            "strategies-agree",
            not failures,
            trials=count,
            max_crossings=max_crossings,
            max_endpoints=max_endpoints,
            witness=failures[0] if failures else None,
        )
    ]
    return _report("confluence", {"count": count, "seed": seed}, checks)


# ---------------------------------------------------------------------------


def suite_graded_dims(kmax=6, span_kmax=3):
    checks = []
    counts = {}
    for k in range(kmax + 1):
        counts[k] = len(graded_basis(BIGON, k))
        checks.append(
            _check(
                "closed-form-k%d" % k,
                counts[k] == (k + 1) ** 2,
                count=counts[k],
                expected=(k + 1) ** 2,
            )
        )
        orbit = graded_orbit_count(k)
        checks.append(
            _check(
                "orbit-oracle-k%d" % k,
                counts[k] == orbit,
                count=counts[k],
                oracle=orbit,
            )
        )
    for k in range(min(span_kmax, kmax) + 1):
        want = sum(counts[j] for j in range(k + 1))
        got = cumulative_rank(k)
        checks.append(
            _check(
                "span-rank-k%d" % k,
                got == want,
                oracle=got,
                expected=want,
            )
        )
    return _report(
        "graded-dims", {"kmax": kmax, "span_kmax": span_kmax}, checks
    )


# ---------------------------------------------------------------------------


def suite_frobenius_central(orders=(3, 5)):
    checks = []
    gens = graded_basis(BIGON, 1)
    for N in orders:
        ring = CycloRing(N)
        basis = _basis_vectors(BIGON, 2, ring)
        witness = None
        pairs = 0
        for g in gens:
            for b in basis:
                pairs += 1
                defect = transparency_defect(_lift(g), b, N)
                if not defect.is_zero():
                    witness = {
                        "generator": g.to_json(),
                        "element": b.to_json(),
                        "defect": defect.to_json(),
                    }
                    break
            if witness:
                break
        checks.append(
            _check("central-N%d" % N, witness is None, pairs=pairs, witness=witness)
        )
    return _report("frobenius-central", {"orders": list(orders)}, checks)


# ---------------------------------------------------------------------------

BEHAVES_WELL_CASES = [
    ("embedding", {"extra": (2,)}, BIGON),
    ("add_marking", {"component": 0, "gap": 0}, BIGON),
    ("split", {"component": 0, "gap1": 0, "gap2": 1}, BIGON),
    ("qf_merge", {"mark1": 1, "mark2": 2}, TWO_BIGONS),
    ("half_twist", {"marking": 1}, BIGON),
]


def suite_behaves_well(N=3):
    checks = []
    for kind, params, surface in BEHAVES_WELL_CASES:
        classical = _basis_vectors(surface, 1, CycloRing(1))
        quantum = _basis_vectors(surface, 1, CycloRing(N))
        report = maps.behaves_well_report(kind, params, N, classical, quantum)
        checks.append(
            _check(
                "map-%s" % kind,
                report["pass"],
                conditions=report["conditions"],
            )
        )
    return _report("behaves-well", {"N": N}, checks)


# ---------------------------------------------------------------------------


def suite_reduced_dims(triangle=True):
    checks = []

    for N in (3, 5):
        p = reduced_presentation(MONOGON, trivial_point(MONOGON), N)
        checks.append(
            _check("monogon-dim-N%d" % N, reduced_dim(p) == 1, dim=reduced_dim(p))
        )

    bigon_points = sample_bigon_points()
    for N, want in ((3, 27), (5, 125)):
        dims = {}
        for name, rho in sorted(bigon_points.items()):
            dims[name] = reduced_dim(reduced_presentation(BIGON, rho, N))
        checks.append(
            _check(
                "bigon-dims-N%d" % N,
                all(d == want for d in dims.values()),
                dims=dims,
                expected=want,
            )
        )

    if not triangle:
        return _report("reduced-dims", {"triangle": False}, checks)

    tri_points = sample_triangle_points()
    dims = {}
    for name, rho in sorted(tri_points.items()):
        dims[name] = reduced_dim(reduced_presentation(TRIANGLE, rho, 3))
    checks.append(
        _check(
            "triangle-dims-N3",
            all(d == 729 for d in dims.values()),
            dims=dims,
            expected=729,
        )
    )

    # adding a marking: dimension law and injectivity of the induced map
    law = {}
    ranks = {}
    law_ok = True
    rank_ok = True
    for name in ("identity*identity", "diagonal*unipotent", "generic*generic"):
        rho = tri_points[name]
        sigma = pullback("add_marking", {"component": 0, "gap": 0}, BIGON, rho)
        dim_t = reduced_dim(reduced_presentation(TRIANGLE, rho, 3))
        dim_b = reduced_dim(reduced_presentation(BIGON, sigma, 3))
        law[name] = {"triangle": dim_t, "bigon": dim_b}
        law_ok = law_ok and dim_t == 27 * dim_b
        m = induced_matrix("add_marking", {"component": 0, "gap": 0}, BIGON, rho, 3)
        info = injectivity_check(m)
        ranks[name] = info["rank"]
        rank_ok = rank_ok and info["injective"] and info["rank"] == 27
    checks.append(_check("marking-law-N3", law_ok, dims=law, factor=27))
    checks.append(_check("marking-rank-N3", rank_ok, ranks=ranks, expected=27))

    # tensor decomposition across disjoint unions
    b = bigon_points
    t1 = tensor_decompose(product_point(b["generic"], b["diagonal"]), 3)
    checks.append(
        _check(
            "tensor-bigon-bigon-N3",
            t1["bijective"] and t1["dim_union"] == 729,
            detail=t1,
        )
    )
    t2 = tensor_decompose(product_point(b["identity"], trivial_point(MONOGON)), 3)
    checks.append(
        _check(
            "tensor-bigon-monogon-N3",
            t2["bijective"] and t2["dim_union"] == 27,
            detail=t2,
        )
    )

    points_json = {
        "bigon": {k: p.to_json() for k, p in sorted(bigon_points.items())},
        "triangle": {k: p.to_json() for k, p in sorted(tri_points.items())},
    }
    return _report("reduced-dims", {"triangle": True, "points": points_json}, checks)


# ---------------------------------------------------------------------------


def suite_splitting_injective():
    checks = []
    params = {"component": 0, "gap1": 0, "gap2": 1}
    targets = sample_product_points()
    for name, rho in sorted(targets.items()):
        m = induced_matrix("split", params, BIGON, rho, 3)
        info = injectivity_check(m)
        checks.append(
            _check(
                "split-rank-%s" % name.replace("*", "-"),
                info["injective"]
                and info["rank"] == 27
                and m["source_dim"] == 27
                and m["target_dim"] == 729,
                rank=info["rank"],
                source_dim=m["source_dim"],
                target_dim=m["target_dim"],
            )
        )
    return _report(
        "splitting-injective",
        {"cut": params, "targets": {k: p.to_json() for k, p in sorted(targets.items())}},
        checks,
    )


# ---------------------------------------------------------------------------


def suite_key_lemma(seed=DEFAULT_SEED):
    checks = []

    for ring, tag in ((CycloRing(3), "root-order-3"), (LAURENT, "laurent")):
        witness = None
        for x in _basis_vectors(BIGON, 2, ring):
            lhs, rhs, equal = maps.insertion_check(x, 0, 0, 1)
            if not equal:
                witness = {
                    "input": x.to_json(),
                    "lhs": lhs.to_json(),
                    "rhs": rhs.to_json(),
                }
                break
        checks.append(_check("basis-%s" % tag, witness is None, witness=witness))

    rng = random.Random(seed)
    pool = [d for k in range(3) for d in graded_basis(BIGON, k)]
    x = SkeinVector.zero(BIGON, LAURENT)
    for d in rng.sample(pool, 5):
        x = x + _lift(d).scale(v(rng.randrange(-4, 5), rng.randrange(1, 4)))
    lhs, rhs, equal = maps.insertion_check(x, 0, 0, 1)
    checks.append(
        _check(
            "generic-laurent",
            equal,
            witness=None if equal else {"input": x.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json()},
        )
    )
    return _report("key-lemma", {"seed": seed}, checks)


# ---------------------------------------------------------------------------


def _lattice_classes(bound, primitive):
    import math

    out = []
    for p in range(0, bound + 1):
        for qq in range(-bound, bound + 1):
            if (p, qq) != canon(p, qq) or (p, qq) == (0, 0):
                continue
            if primitive and math.gcd(p, qq) != 1:
                continue
            out.append((p, qq))
    return sorted(out)


def suite_torus_transparency(orders=(3, 5, 7), bound=3):
    checks = []
    threaded = _lattice_classes(bound, primitive=True)
    probes = _lattice_classes(bound, primitive=False)
    for N in orders:
        witness = None
        pairs = 0
        for t in threaded:
            for pr in probes:
                pairs += 1
                defect = central_commutator(t, pr, N)
                if not defect.is_zero():
                    witness = {"threaded": list(t), "probe": list(pr)}
                    break
            if witness:
                break
        checks.append(
            _check("commutator-N%d" % N, witness is None, pairs=pairs, witness=witness)
        )
    return _report(
        "torus-transparency", {"orders": list(orders), "bound": bound}, checks
    )


# ---------------------------------------------------------------------------


def suite_chebyshev(kmax=50, mmax=20):
    checks = []

    bad = [
        k
        for k in range(2, kmax + 1)
        if chebyshev_t(k)
        != poly_sub(poly_mul((0, 1), chebyshev_t(k - 1)), chebyshev_t(k - 2))
    ]
    checks.append(_check("recurrence", not bad, kmax=kmax, failures=bad))

    # independent spot values: T_k(2) = 2 and T_k(-2) = 2 (-1)^k
    def eval_at(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    bad = [
        k
        for k in range(kmax + 1)
        if eval_at(chebyshev_t(k), 2) != 2
        or eval_at(chebyshev_t(k), -2) != 2 * (-1) ** k
    ]
    checks.append(_check("edge-values", not bad, kmax=kmax, failures=bad))

    from math import comb

    bad = []
    for m in range(mmax + 1):
        acc = {}
        for deg, c in enumerate(chebyshev_t(m)):
            if c == 0:
                continue
            for j in range(deg + 1):
                e = deg - 2 * j
                acc[e] = acc.get(e, 0) + c * comb(deg, j)
        acc = {e: c for e, c in acc.items() if c != 0}
        expected = {m: 1, -m: 1} if m > 0 else {0: 2}
        if acc != expected:
            bad.append(m)
    checks.append(_check("power-sum", not bad, mmax=mmax, failures=bad))

    return _report("chebyshev", {"kmax": kmax, "mmax": mmax}, checks)


# ---------------------------------------------------------------------------

SUITES = {
    "relations": suite_relations,
    "confluence": suite_confluence,
    "graded-dims": suite_graded_dims,
    "frobenius-central": suite_frobenius_central,
    "behaves-well": suite_behaves_well,
    "reduced-dims": suite_reduced_dims,
    "splitting-injective": suite_splitting_injective,
    "key-lemma": suite_key_lemma,
    "torus-transparency": suite_torus_transparency,
    "chebyshev": suite_chebyshev,
}


def run_suite(name, **params):
    if name not in SUITES:
        raise ValueError("unknown suite %r" % (name,))
    return SUITES[name](**params)
