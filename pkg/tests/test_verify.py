import json

import jsonschema
import pytest

from prism_turan import verify as V
from prism_turan.search import SearchResult
from prism_turan.verify import Certificate, load_schema

CERT_SCHEMA = load_schema("certificate")
INDEX_SCHEMA = load_schema("index")


def test_certificate_rejects_unknown_verdict():
    with pytest.raises(ValueError):
        Certificate("x", {}, 1, 1, "maybe")


def test_small_value_certificates():
    certs = V.verify_theorem_1_2(7)
    assert [c.claim_id for c in certs] == [f"thm1.2/n={n}" for n in range(1, 8)]
    assert all(c.verdict == "pass" for c in certs)
    five = certs[4]
    assert five.expected == 10 and five.note


def test_extremal_set_certificates():
    certs = {c.claim_id: c for c in V.verify_theorem_1_3(8)}
    assert all(c.verdict == "pass" for c in certs.values())
    assert len(certs["thm1.3/n=7"].observed["extremal"]) == 4
    eight = certs["thm1.3/n=8"]
    assert len(eight.inputs["constructions"]) == 5
    assert len(eight.observed["extremal"]) == 4
    assert "F(8,4,4)" in eight.note and "F(8,5,5)" in eight.note


def test_certificates_are_reproducible():
    a = [c.to_json() for c in V.verify_theorem_1_3(8) + V.verify_section_4_lemmas()]
    b = [c.to_json() for c in V.verify_theorem_1_3(8) + V.verify_section_4_lemmas()]
    assert a == b
    assert all("time" not in doc for doc in a)


def test_non_exhaustive_search_never_passes(monkeypatch):
    def partial(n, pattern, mode, workers, allow_large=False):
        return SearchResult(n, ("prism:1",), mode, 12, (), False, None)

    monkeypatch.setattr(V, "_oracle", partial)
    assert V.verify_theorem_1_2(6, n_min=6)[0].verdict == "inconclusive"
    assert V.verify_theorem_1_3(6)[0].verdict == "inconclusive"
    assert V.verify_theorem_5_1(9).verdict == "inconclusive"


def test_wrong_expectation_fails(monkeypatch):
    def off_by_one(n, pattern, mode, workers, allow_large=False):
        return SearchResult(n, ("prism:1",), mode, 13, (), True, None)

    monkeypatch.setattr(V, "_oracle", off_by_one)
    assert V.verify_theorem_1_2(6, n_min=6)[0].verdict == "fail"


def test_p6square_consequence_regimes():
    assert V.verify_theorem_5_1(6).verdict == "unverified-regime"
    eight = V.verify_theorem_5_1(8)
    assert eight.verdict == "unverified-regime"
    assert eight.observed == {"G3_contains_P6^2": True}
    assert V.verify_theorem_5_1(9).verdict == "pass"


def test_fixed_body_certificates():
    certs = {c.claim_id: c for c in V.verify_section_4_lemmas()}
    assert set(certs) == {"lem4.3", "claim4.4", "lem4.5", "lem4.6", "lem4.7"}
    assert all(c.verdict == "pass" for c in certs.values())
    assert certs["claim4.4"].observed["aut_order"] == 2
    assert certs["lem4.5"].observed["free_with_xy_edge"] == 0


def test_attachment_orbits_are_types():
    info = V.attachment_orbits()
    assert len(info["free"]) == 6
    assert sorted(len(o) for o in info["orbits"]) == [1, 1, 2, 2]
    # the reversal v_i -> v_{7-i} pairs Type 1 with {v3,v4,v5,v6} and Type 4 with {v1,v2,v4,v6}
    assert [(0, 1, 2, 3), (2, 3, 4, 5)] in info["orbits"]
    assert [(0, 1, 3, 5), (0, 2, 4, 5)] in info["orbits"]


def test_decomposition_and_join_certificates():
    certs = V.verify_lemma_3_1(2) + V.verify_lemma_3_2(2)
    assert all(c.verdict == "pass" for c in certs)
    b1 = next(c for c in certs if c.claim_id == "lem3.2b/k=1")
    assert b1.observed["embedding"]


def test_lower_bound_and_regime():
    certs = {c.claim_id: c for c in V.verify_main_lower_bound()}
    assert certs["thm1.1/lower-bound/k=1"].verdict == "pass"
    assert certs["thm1.1/lower-bound/k=2"].verdict == "pass"
    assert certs["thm1.1/k=2"].verdict == "unverified-regime"


def test_bundle_is_valid_and_sorted(tmp_path):
    report = V.run_all("quick", tmp_path)
    assert report["failed"] == []
    index = json.loads((tmp_path / "index.json").read_text())
    jsonschema.validate(index, INDEX_SCHEMA)
    ids = [e["claim_id"] for e in index["certificates"]]
    assert ids == sorted(ids)
    for entry in index["certificates"]:
        doc = json.loads((tmp_path / entry["file"]).read_text())
        jsonschema.validate(doc, CERT_SCHEMA)
        assert doc["claim_id"] == entry["claim_id"]
    assert not list(tmp_path.glob("*.tmp"))


def test_bundle_rewrite_is_byte_identical(tmp_path):
    certs = V.verify_section_4_lemmas() + V.verify_theorem_1_2(6)
    V.write_bundle(certs, tmp_path / "a")
    V.write_bundle(list(reversed(certs)), tmp_path / "b")
    for f in (tmp_path / "a").glob("*.json"):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_full_profile_jobs_extend_orders():
    names = [name for name, _ in V.claim_jobs("full")]
    assert "thm1.3/n=13" in names and "thm1.3/n=14" in names
    last = dict(V.claim_jobs("full"))["thm1.3/n=14"]()
    assert last[0].verdict == "not-attempted"


def test_bad_profile():
    with pytest.raises(ValueError):
        V.run_all("medium")
