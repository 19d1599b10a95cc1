import pytest

from nilqp import betti_numbers, validate, verify_bigrading, verify_isomorphism
from nilqp.catalog import catalog_keys, export_entry, get
from nilqp.errors import JacobiViolation, UnknownKey
from nilqp.jsonio import lie_algebra_from_json, load_json
from nilqp.liealg import apply_basis_change, commutator_ideal

REQUIRED_KEYS = {
    *(f"abelian_{n}" for n in range(1, 9)),
    "n3",
    "n5",
    "n7",
    "filiform_3",
    "filiform_4",
    "filiform_5",
    "n7_142",
    "n7_143",
    "37B",
    "37D",
    "L5_parity",
    "N1_84",
    "N1_84_real",
    "N1_82",
    "N2_82",
    "N3_82",
    "N4_82",
    "N5_82",
    "g_sec6",
    "n3+C1",
    "n3+C2",
    "n3+C3",
    "n3+C4",
    "n5+C1",
    "n5+C2",
    "n3+n3",
    "n3+n3+C1",
}


def test_required_keys_present_and_sorted():
    keys = catalog_keys()
    assert REQUIRED_KEYS <= set(keys)
    assert list(keys) == sorted(keys)


def test_unknown_key():
    with pytest.raises(UnknownKey):
        get("nope")


def test_full_catalog_self_test():
    for key in catalog_keys():
        entry = get(key)
        assert entry.key == key
        assert validate(entry.algebra).valid
        for g in entry.known_bigradings:
            report = verify_bigrading(entry.algebra, g, mode="strict")
            assert report.valid, (key, report.failures)
        for target, t in entry.transformations:
            assert verify_isomorphism(entry.algebra, get(target).algebra, t), (
                key,
                target,
            )


# First Betti numbers implied by the classification tables.
EXPECTED_B1 = {
    "n3": 2,
    "n5": 4,
    "n7": 6,
    "n7_142": 4,
    "n7_143": 4,
    "37B": 4,
    "37D": 4,
    "N1_84": 4,
    "N1_84_real": 4,
    "N1_82": 6,
    "N2_82": 6,
    "N3_82": 6,
    "N4_82": 6,
    "N5_82": 6,
    "g_sec6": 4,
    "L5_parity": 3,
    "abelian_8": 8,
}


@pytest.mark.parametrize("key", sorted(EXPECTED_B1))
def test_first_betti_numbers(key):
    alg = get(key).algebra
    assert betti_numbers(alg).betti[1] == EXPECTED_B1[key]
    assert alg.dim - commutator_ideal(alg).dim == EXPECTED_B1[key]


def test_export_roundtrip(tmp_path):
    files = export_entry("n3", tmp_path)
    algebra_file = [f for f in files if f.endswith(".algebra.json")][0]
    parsed = lie_algebra_from_json(load_json(algebra_file), path=algebra_file)
    assert parsed.same_brackets(get("n3").algebra)
    assert parsed.basis_names == get("n3").algebra.basis_names


def test_export_mutate_breaks_jacobi(tmp_path):
    import json

    export_entry("filiform_4", tmp_path)
    path = tmp_path / "filiform_4.algebra.json"
    data = json.loads(path.read_text())
    # Redirect [X1, X3] = X4 to X1: Jacobi on (X1, X2, X3) now fails.
    for item in data["brackets"]:
        if (item["i"], item["j"]) == (0, 2):
            item["coeffs"] = {"0": "1"}
    with pytest.raises(JacobiViolation):
        lie_algebra_from_json(data, path=str(path))


def test_export_transformation_sidecar_matches_target(tmp_path):
    from nilqp.jsonio import matrix_from_json

    files = export_entry("n7_142", tmp_path)
    sidecar = [f for f in files if ".transform." in f][0]
    payload = load_json(sidecar)
    assert payload["source"] == "n7_142" and payload["target"] == "37D"
    t = matrix_from_json(payload["matrix"], path=sidecar)
    image = apply_basis_change(get("n7_142").algebra, t)
    assert image.same_brackets(get("37D").algebra)


def test_entries_are_immutable_and_cached():
    assert get("n3") is get("n3")
    assert get("n3").algebra.brackets == get("n3").algebra.brackets
