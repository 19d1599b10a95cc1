import pytest

from nilqp import (
    Bigrading,
    LieAlgebra,
    SearchBounds,
    Subspace,
    apply_basis_change,
    bigrading_from_filtrations,
    complexify,
    filtrations_from_bigrading,
    lower_central_series,
    search_bigrading,
    verify_bigrading,
)
from nilqp.bigrading import FiltrationPair
from nilqp.catalog import catalog_keys, get
from nilqp.errors import (
    GradingNotCompatible,
    MissingRealStructure,
    NotAFiltration,
)
from nilqp.scalars import Gaussian

from conftest import random_invertible_t

I = Gaussian(0, 1)


def eg_grading_n3():
    return Bigrading.build(
        [
            (-1, 0, [(1, I, 0)]),
            (0, -1, [(1, -I, 0)]),
            (-1, -1, [(0, 0, 1)]),
        ]
    )


def test_build_rejects_bad_bidegrees():
    with pytest.raises(GradingNotCompatible):
        Bigrading.build([(0, 0, [(1,)])])
    with pytest.raises(GradingNotCompatible):
        Bigrading.build([(-1, 0, [(1, 0)]), (-1, 0, [(0, 1)])])


def test_verify_eg2_abelian_diagonal():
    entry = get("abelian_4")
    report = verify_bigrading(entry.algebra, entry.known_bigradings[0])
    assert report.valid and report.shape == "restricted"
    assert report.conjugation == "exact"


def test_verify_eg3_strict():
    report = verify_bigrading(complexify(get("n3").algebra), eg_grading_n3())
    assert report.valid
    assert report.shape == "restricted"
    assert report.support_box_ok


def test_verify_misplaced_center_fails_bracket_check():
    # Z moved into the (-1, 0) component: [X1, conj X1] = -2iZ escapes.
    g = Bigrading.build(
        [
            (-1, 0, [(1, I, 0), (0, 0, 1)]),
            (0, -1, [(1, -I, 0)]),
        ]
    )
    report = verify_bigrading(complexify(get("n3").algebra), g)
    assert not report.valid
    assert not report.bracket_compatible
    assert any(f["check"] == "bracket" for f in report.failures)


def test_verify_requires_real_structure():
    alg = get("N1_84").algebra
    stripped = LieAlgebra(
        alg.name, alg.dim, alg.field, alg.basis_names, alg.brackets, None
    )
    with pytest.raises(MissingRealStructure):
        verify_bigrading(stripped, get("N1_84").known_bigradings[0])


def test_verify_spans_failure_reported():
    g = Bigrading.build([(-1, -1, [(1, 0, 0), (0, 1, 0)])])
    report = verify_bigrading(complexify(get("n3").algebra), g)
    assert not report.valid and not report.spans


def test_strict_vs_lax_conjugation():
    # (0,-1) component spanned by conj(X1) + Z: equal to conj(-1,0) only
    # modulo the lower-weight (-1,-1) part.
    g = Bigrading.build(
        [
            (-1, 0, [(1, I, 0)]),
            (0, -1, [(1, -I, 1)]),
            (-1, -1, [(0, 0, 1)]),
        ]
    )
    n3c = complexify(get("n3").algebra)
    strict = verify_bigrading(n3c, g, mode="strict")
    lax = verify_bigrading(n3c, g, mode="lax")
    assert strict.conjugation == "mod_lower_weight"
    assert not strict.valid
    assert lax.valid


def test_verify_eg4_and_dim8_gradings_strict():
    for key in ("37B", "37D", "N1_84", "N1_82", "N2_82", "N3_82", "N4_82", "N5_82"):
        entry = get(key)
        report = verify_bigrading(entry.algebra, entry.known_bigradings[0])
        assert report.valid, (key, report.failures)
        assert report.shape == "restricted"
        assert report.conjugation == "exact"


def test_verify_g_sec6_general_shape():
    entry = get("g_sec6")
    report = verify_bigrading(entry.algebra, entry.known_bigradings[0])
    assert report.valid
    assert report.shape == "general"
    assert report.conjugation == "exact"
    # The weight band holds in every degree, the Deligne box does not: this
    # grading is structurally fine yet cannot come from the restricted shape.
    assert report.cohomology_support_ok
    assert not report.support_box_ok
    assert lower_central_series(entry.algebra).nilpotency_class == 3


def test_restricted_shape_gradings_satisfy_full_box():
    for key in catalog_keys():
        entry = get(key)
        for g in entry.known_bigradings:
            if not g.is_restricted_shape():
                continue
            report = verify_bigrading(entry.algebra, g)
            assert report.valid and report.support_box_ok, key


def test_restricted_shape_implies_two_step():
    for key in catalog_keys():
        entry = get(key)
        for g in entry.known_bigradings:
            if g.is_restricted_shape():
                cls = lower_central_series(entry.algebra).nilpotency_class
                assert cls <= 2, key


# -- filtrations --------------------------------------------------------------


def test_filtrations_eg3():
    fp = filtrations_from_bigrading(eg_grading_n3())
    assert fp.w(-3).dim == 0
    assert fp.w(-2).dim == 1  # the center
    assert fp.w(-1).dim == 3
    assert fp.w(0).dim == 3
    assert fp.f(-1).dim == 3
    assert fp.f(0).dim == 1  # the (0, -1) part
    assert fp.f(1).dim == 0


def test_filtrations_abelian_diagonal():
    g = get("abelian_3").known_bigradings[0]
    fp = filtrations_from_bigrading(g)
    assert fp.w(-3).dim == 0
    assert fp.w(-2).dim == 3
    assert fp.f(-1).dim == 3
    assert fp.f(0).dim == 0


def test_filtrations_single_component_jumps_once():
    g = Bigrading.build([(-2, -1, [(1, 0), (0, 1)])])
    fp = filtrations_from_bigrading(g)
    assert fp.w(-4).dim == 0 and fp.w(-3).dim == 2
    assert fp.f(-2).dim == 2 and fp.f(-1).dim == 0


def test_not_a_filtration_rejected():
    s1 = Subspace.full(2)
    s0 = Subspace.from_spanning([[1, 0]], ambient_dim=2)
    with pytest.raises(NotAFiltration):
        FiltrationPair.build(2, {-2: s1, -1: s0}, {0: s0})
    with pytest.raises(NotAFiltration):
        FiltrationPair.build(2, {-1: s0}, {-1: s0, 0: s1})


def test_roundtrip_on_all_stored_gradings():
    for key in catalog_keys():
        entry = get(key)
        alg = entry.algebra
        carrier = alg if alg.field == "Qi" else complexify(alg)
        for g in entry.known_bigradings:
            fp = filtrations_from_bigrading(g)
            back = bigrading_from_filtrations(fp, carrier.real_structure)
            assert back.canonical() == g.canonical(), key


def test_roundtrip_exercises_lower_weight_correction():
    # g_sec6 has components at (-2,-1)/(-1,-2); recovering (-1,-1) needs the
    # i >= 2 correction terms in the splitting formula.
    entry = get("g_sec6")
    g = entry.known_bigradings[0]
    fp = filtrations_from_bigrading(g)
    carrier = complexify(entry.algebra)
    back = bigrading_from_filtrations(fp, carrier.real_structure)
    assert back.canonical() == g.canonical()
    assert {(-2, -1), (-1, -2)} <= set(back.bidegrees())


# -- search -------------------------------------------------------------------


def test_search_finds_grading_for_n3():
    out = search_bigrading(get("n3").algebra)
    assert out.found
    assert out.report.valid and out.report.shape == "restricted"


def test_search_class_obstruction():
    out = search_bigrading(get("filiform_4").algebra)
    assert out.status == "obstructed"
    assert out.reason == "nilpotency_class"
    assert out.witness["nilpotency_class"] == 3


def test_search_parity_obstruction():
    out = search_bigrading(get("L5_parity").algebra)
    assert out.status == "obstructed"
    assert out.reason == "b1_parity"
    assert out.witness["b1_core"] == 3
    assert out.witness["abelian_factor"] == 0


@pytest.mark.parametrize(
    "key",
    [
        "abelian_1",
        "abelian_6",
        "n3",
        "n5",
        "n7",
        "n3+n3",
        "n3+C2",
        "n5+C2",
        "n3+n3+C1",
        "n7_142",
        "n7_143",
        "N1_84_real",
        "N1_84",
        "N1_82",
        "N2_82",
        "N3_82",
        "N4_82",
        "N5_82",
        "37B",
        "37D",
    ],
)
def test_search_finds_gradings_across_catalog(key):
    out = search_bigrading(get(key).algebra)
    assert out.found, (key, out.status)
    assert out.report.valid
    assert out.bigrading.is_restricted_shape()


def test_search_deterministic():
    a = search_bigrading(get("N5_82").algebra)
    b = search_bigrading(get("N5_82").algebra)
    assert a.bigrading == b.bigrading


def test_search_respects_node_budget():
    # With an absurdly small budget the DFS family cannot run; the scalar
    # and exterior-square constructions do not apply to N5_82 transformed.
    bounds = SearchBounds(max_nodes=1)
    out = search_bigrading(get("N5_82").algebra, bounds)
    assert out.status in ("found", "not_found_within_bounds")
    if out.status == "not_found_within_bounds":
        assert out.bounds == bounds


def test_search_robust_under_basis_change(rng):
    for key in ("n3", "n5", "n3+n3", "N1_84_real", "N1_82", "N5_82"):
        alg = get(key).algebra
        for _ in range(2):
            t = random_invertible_t(alg.dim, rng)
            moved = apply_basis_change(alg, t)
            out = search_bigrading(moved)
            assert out.found, key
            assert out.report.valid


def test_search_found_gradings_reverify_strict():
    for key in ("n5", "N1_82", "N1_84_real"):
        out = search_bigrading(get(key).algebra)
        report = verify_bigrading(get(key).algebra, out.bigrading, mode="strict")
        assert report.valid
