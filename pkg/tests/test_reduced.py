import pytest
from gmpy2 import mpq

from skeinpoly import reduced
from skeinpoly.polyalg import graded_basis, mul
from skeinpoly.polydiag import (
    BIGON,
    MONOGON,
    MarkedPolygon,
    NormalDiagram,
    SkeinVector,
    TRIANGLE,
)
from skeinpoly.reduced import (
    CharacterError,
    CharacterPoint,
    bigon_point,
    character_value,
    classical_values,
    diagram_from_profile,
    factor_points,
    generator_diagrams,
    induced_matrix,
    injectivity_check,
    merge_pushforward,
    product_point,
    profile_of,
    pullback,
    reduced_dim,
    reduced_presentation,
    tensor_decompose,
    trivial_point,
    validate_character,
)
from skeinpoly.scalars import CycloRing

TWO_BIGONS = MarkedPolygon((2, 2))


def five_bigon_points():
    return {
        "identity": bigon_point(1, 0, 0, 1),
        "diagonal": bigon_point(2, 0, 0, "1/2"),
        "unipotent": bigon_point(1, 1, 0, 1),
        "neg_identity": bigon_point(-1, 0, 0, -1),
        "generic": bigon_point(2, 3, 1, 2),
    }


def five_triangle_points():
    pts = five_bigon_points()
    pairs = [
        (pts["identity"], pts["identity"]),
        (pts["diagonal"], pts["unipotent"]),
        (pts["generic"], pts["identity"]),
        (pts["neg_identity"], pts["diagonal"]),
        (pts["generic"], pts["generic"]),
    ]
    return [merge_pushforward(r1, r2, 1, 2) for r1, r2 in pairs]


# ---------------------------------------------------------------------------
# profiles


@pytest.mark.parametrize(
    "surface,kmax",
    [(BIGON, 5), (TRIANGLE, 4), (TWO_BIGONS, 3)],
)
def test_profile_round_trip_on_graded_bases(surface, kmax):
    for k in range(kmax + 1):
        for d in graded_basis(surface, k):
            p = profile_of(d)
            assert diagram_from_profile(surface, p) == d


def test_profiles_separate_basis_diagrams():
    seen = {}
    for k in range(5):
        for d in graded_basis(TRIANGLE, k):
            p = profile_of(d)
            assert p not in seen
            seen[p] = d


def test_infeasible_profile_refused():
    # both corner states in one family cannot nest
    _, types, tidx = reduced._surface_types(BIGON)
    counts = [0] * len(types)
    counts[tidx[(0, 1, "+", "+")]] = 1
    counts[tidx[(0, 1, "-", "-")]] = 1
    assert diagram_from_profile(BIGON, counts) is None


# ---------------------------------------------------------------------------
# character points


def test_bigon_points_validate():
    for name, p in five_bigon_points().items():
        assert validate_character(p)["ok"], name


def test_non_character_rejected():
    report = validate_character(bigon_point(1, 0, 0, 2))
    assert not report["ok"]
    assert report["violations"]


def test_monogon_character_is_trivial():
    p = trivial_point(MONOGON)
    assert validate_character(p)["ok"]
    with pytest.raises(CharacterError):
        trivial_point(BIGON)


def test_character_json_round_trip():
    p = bigon_point(2, 3, 1, 2)
    q = CharacterPoint.from_json(p.to_json())
    assert q == p
    blob = p.to_json()
    blob["generators"] = list(reversed(blob["generators"]))
    blob["values"] = list(reversed(blob["values"]))
    assert CharacterPoint.from_json(blob) == p


def test_character_value_multiplicative():
    rho = bigon_point(2, 3, 1, 2)
    gens = generator_diagrams(BIGON)
    one = reduced.RATIONALS.one()
    x = SkeinVector(BIGON, reduced.RATIONALS, {gens[0]: one})
    y = SkeinVector(BIGON, reduced.RATIONALS, {gens[3]: one})
    lhs = character_value(rho, mul(x, y))
    assert lhs == rho.values[0] * rho.values[3]


def test_product_factor_round_trip():
    pts = five_bigon_points()
    u = product_point(pts["identity"], pts["generic"])
    assert validate_character(u)["ok"]
    f1, f2 = factor_points(u)
    assert f1 == pts["identity"]
    assert f2 == pts["generic"]


# ---------------------------------------------------------------------------
# characters along maps


def test_merge_pushforward_identity_pair():
    pts = five_bigon_points()
    tri = merge_pushforward(pts["identity"], pts["identity"], 1, 2)
    assert tri.surface == TRIANGLE
    assert [str(v) for v in tri.values] == [
        "1", "0", "0", "1", "1", "0", "0", "-1", "0", "1", "1", "0",
    ]
    assert validate_character(tri)["ok"]


def test_naive_identity_pattern_is_not_a_character():
    naive = CharacterPoint(TRIANGLE, (1, 0, 0, 1) * 3)
    assert not validate_character(naive)["ok"]


def test_triangle_points_validate():
    for tri in five_triangle_points():
        assert validate_character(tri)["ok"]


def test_split_pullback_is_a_character():
    pts = five_bigon_points()
    target = product_point(pts["generic"], pts["diagonal"])
    rho = pullback(
        "split", {"component": 0, "gap1": 0, "gap2": 1}, BIGON, target
    )
    assert rho.surface == BIGON
    assert validate_character(rho)["ok"]


def test_embedding_pullback_keeps_values():
    pts = five_bigon_points()
    target = product_point(pts["generic"], trivial_point(MONOGON))
    rho = pullback("embedding", {"extra": (1,)}, BIGON, target)
    assert rho == pts["generic"]


def test_pullback_rejects_welding():
    pts = five_bigon_points()
    tri = merge_pushforward(pts["identity"], pts["identity"], 1, 2)
    with pytest.raises(CharacterError):
        pullback("qf_merge", {"mark1": 1, "mark2": 2}, TWO_BIGONS, tri)


# ---------------------------------------------------------------------------
# reduced dimensions


def test_monogon_dimension_one():
    p = trivial_point(MONOGON)
    for N in (3, 5):
        pres = reduced_presentation(MONOGON, p, N)
        assert reduced_dim(pres) == 1
        assert pres.certificate["ok"]


def test_bigon_dimension_27_at_five_points():
    for name, p in five_bigon_points().items():
        pres = reduced_presentation(BIGON, p, 3)
        assert reduced_dim(pres) == 27, name
        assert pres.certificate["ok"], name


def test_bigon_dimension_125_at_level_five():
    for name, p in five_bigon_points().items():
        pres = reduced_presentation(BIGON, p, 5)
        assert reduced_dim(pres) == 125, name


def test_level_must_be_odd():
    with pytest.raises(ValueError):
        reduced_presentation(BIGON, bigon_point(1, 0, 0, 1), 4)


def test_presentation_rejects_non_character():
    with pytest.raises(CharacterError):
        reduced_presentation(BIGON, bigon_point(1, 0, 0, 2), 3)


def test_unit_residue_is_a_basis_class():
    pres = reduced_presentation(BIGON, bigon_point(1, 0, 0, 1), 3)
    ring = CycloRing(3)
    res = pres.residue(SkeinVector.unit(BIGON, ring))
    assert list(res) == [0]
    assert res[0] == ring.one()


def test_structure_constants_match_direct_residue():
    pres = reduced_presentation(BIGON, bigon_point(2, 3, 1, 2), 3)
    ring = CycloRing(3)
    gens = generator_diagrams(BIGON)
    cols = pres.structure_constants(1)
    for j, b in enumerate(pres.basis[:6]):
        x = SkeinVector(BIGON, ring, {gens[1]: ring.one()})
        y = SkeinVector(BIGON, ring, {b: ring.one()})
        assert pres.residue(mul(x, y)) == cols[j]


@pytest.mark.slow
def test_triangle_dimension_729_at_five_points():
    for tri in five_triangle_points():
        pres = reduced_presentation(TRIANGLE, tri, 3)
        assert reduced_dim(pres) == 729
        assert pres.certificate["ok"]


# ---------------------------------------------------------------------------
# induced maps


@pytest.mark.slow
def test_split_induced_matrix_injective():
    pts = five_bigon_points()
    targets = [
        product_point(pts["identity"], pts["identity"]),
        product_point(pts["generic"], pts["diagonal"]),
        product_point(pts["unipotent"], pts["neg_identity"]),
    ]
    for target in targets:
        m = induced_matrix(
            "split", {"component": 0, "gap1": 0, "gap2": 1}, BIGON, target, 3
        )
        assert (m["target_dim"], m["source_dim"]) == (729, 27)
        verdict = injectivity_check(m)
        assert verdict["rank"] == 27
        assert verdict["injective"]


@pytest.mark.slow
def test_add_marking_induced_matrix_injective():
    for tri in five_triangle_points()[:3]:
        m = induced_matrix(
            "add_marking", {"component": 0, "gap": 0}, BIGON, tri, 3
        )
        assert (m["target_dim"], m["source_dim"]) == (729, 27)
        verdict = injectivity_check(m)
        assert verdict["rank"] == 27
        assert verdict["injective"]


@pytest.mark.slow
def test_add_marking_dimension_law():
    # dim of the triangle module equals N^3 times the bigon dim at the
    # pulled back point
    N = 3
    for tri in five_triangle_points()[:3]:
        rho_b = pullback("add_marking", {"component": 0, "gap": 0}, BIGON, tri)
        pres_b = reduced_presentation(BIGON, rho_b, N)
        pres_t = reduced_presentation(TRIANGLE, tri, N)
        assert reduced_dim(pres_t) == N**3 * reduced_dim(pres_b)


def test_injectivity_check_zero_matrix():
    verdict = injectivity_check(
        {"N": 3, "columns": [{} for _ in range(4)]}
    )
    assert verdict["rank"] == 0
    assert not verdict["injective"]


# ---------------------------------------------------------------------------
# tensor decomposition


@pytest.mark.slow
def test_tensor_two_bigons():
    pts = five_bigon_points()
    rho = product_point(pts["generic"], pts["diagonal"])
    report = tensor_decompose(rho, 3)
    assert report["dim_factor1"] == 27
    assert report["dim_factor2"] == 27
    assert report["dim_union"] == 729
    assert report["bijective"]


def test_tensor_bigon_monogon():
    rho = product_point(five_bigon_points()["generic"], trivial_point(MONOGON))
    report = tensor_decompose(rho, 3)
    assert report["dim_factor1"] == 27
    assert report["dim_factor2"] == 1
    assert report["dim_union"] == 27
    assert report["bijective"]


def test_tensor_monogon_monogon():
    rho = product_point(trivial_point(MONOGON), trivial_point(MONOGON))
    report = tensor_decompose(rho, 3)
    assert report["dim_union"] == 1
    assert report["bijective"]
