"""HTTP endpoint behaviour, including the 400-versus-422 error contract."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from cfbayes import FIXTURE_ATTRIBUTES, FIXTURE_TABLES, ROW_COLUMNS, SUMMARY_COLUMNS
from cfbayes.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def body(name: str) -> dict:
    return {
        "attributes": list(FIXTURE_ATTRIBUTES),
        "probabilities": list(FIXTURE_TABLES[name]),
    }


def error_name(response) -> str:
    return response.json()["detail"]["error"]


class TestHealth:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}


class TestGenerate:
    def test_generates_and_classifies_under_all_variants(self, client):
        r = client.post(
            "/generate", json={"family": "naive-bayes", "attrs": 3, "seed": 5}
        )
        assert r.status_code == 200
        out = r.json()
        assert out["attributes"] == ["h", "e1", "e2"]
        assert out["hypothesis"] == "h"
        assert len(out["probabilities"]) == 8
        assert sum(out["probabilities"]) == pytest.approx(1.0, abs=1e-9)
        variants = {c["variant"] for c in out["classifications"]}
        assert variants == {"h-true", "h-false", "symmetric"}
        # Conditional independence is built into the family; the mixture
        # over h still couples the evidence marginally.
        for c in out["classifications"]:
            assert c["problem_class"] == "WeaklyDecomposable"

    def test_deterministic_for_fixed_seed(self, client):
        req = {"family": "dirichlet", "attrs": 3, "seed": 11}
        a = client.post("/generate", json=req).json()
        b = client.post("/generate", json=req).json()
        assert a == b

    def test_unknown_family_is_400(self, client):
        r = client.post("/generate", json={"family": "cauchy", "attrs": 3})
        assert r.status_code == 400
        assert error_name(r) == "UnknownFamily"

    def test_oversized_space_is_400(self, client):
        r = client.post("/generate", json={"family": "dirichlet", "attrs": 21})
        assert r.status_code == 400
        assert error_name(r) == "SpaceTooLarge"


class TestClassify:
    def test_nb1_is_weakly_decomposable(self, client):
        r = client.post(
            "/classify", json={"distribution": body("NB1"), "hypothesis": "h"}
        )
        assert r.status_code == 200
        out = r.json()
        assert out["problem_class"] == "WeaklyDecomposable"
        assert out["variant"] == "symmetric"
        assert out["ci_gap"] <= 1e-12
        assert out["marginal_gap"] == pytest.approx(0.04, abs=1e-12)

    def test_xor1_is_holistic(self, client):
        r = client.post(
            "/classify", json={"distribution": body("XOR1"), "hypothesis": "h"}
        )
        assert r.json()["problem_class"] == "Holistic"

    def test_dstrict1_depends_on_the_variant(self, client):
        strict = client.post(
            "/classify",
            json={
                "distribution": body("DSTRICT1"),
                "hypothesis": "h",
                "variant": "h-true",
            },
        ).json()
        loose = client.post(
            "/classify",
            json={
                "distribution": body("DSTRICT1"),
                "hypothesis": "h",
                "variant": "h-false",
            },
        ).json()
        assert strict["problem_class"] == "Decomposable"
        assert loose["problem_class"] == "Holistic"

    def test_unknown_hypothesis_is_400(self, client):
        r = client.post(
            "/classify", json={"distribution": body("NB1"), "hypothesis": "z"}
        )
        assert r.status_code == 400
        assert error_name(r) == "UnknownAttribute"

    def test_zero_tolerance_is_400(self, client):
        r = client.post(
            "/classify",
            json={"distribution": body("NB1"), "hypothesis": "h", "tol": 0.0},
        )
        assert r.status_code == 400

    def test_bad_mass_is_400(self, client):
        payload = {
            "attributes": ["h", "a"],
            "probabilities": [0.5, 0.5, 0.5, 0.5],
        }
        r = client.post(
            "/classify", json={"distribution": payload, "hypothesis": "h"}
        )
        assert r.status_code == 400
        assert error_name(r) == "MassNotOne"


class TestCf:
    def test_nb1_pair_evidence(self, client):
        r = client.post(
            "/cf",
            json={
                "distribution": body("NB1"),
                "hypothesis": "h",
                "evidence": {"a": True, "b": True},
            },
        )
        assert r.status_code == 200
        out = r.json()
        assert out["prior"] == pytest.approx(0.5, abs=1e-12)
        assert out["posterior"] == pytest.approx(6 / 7, abs=1e-12)
        assert out["direct"]["mb"] == pytest.approx(5 / 7, abs=1e-12)
        assert out["direct"]["md"] == 0.0
        assert out["m1_gap"] == pytest.approx(1 / 21, abs=1e-12)
        assert out["m2_gap"] == 0.0

    def test_zero_probability_evidence_is_422(self, client):
        payload = {
            "attributes": ["h", "a"],
            "probabilities": [0.5, 0.0, 0.5, 0.0],
        }
        r = client.post(
            "/cf",
            json={
                "distribution": payload,
                "hypothesis": "h",
                "evidence": {"a": True},
            },
        )
        assert r.status_code == 422
        assert error_name(r) == "ZeroProbabilityEvidence"

    def test_conditioning_on_the_hypothesis_is_400(self, client):
        r = client.post(
            "/cf",
            json={
                "distribution": body("NB1"),
                "hypothesis": "h",
                "evidence": {"h": True, "a": True},
            },
        )
        assert r.status_code == 400
        assert error_name(r) == "NotEvidenceAttribute"

    def test_malformed_body_is_400(self, client):
        r = client.post(
            "/cf", json={"distribution": body("NB1"), "hypothesis": "h"}
        )
        assert r.status_code == 400
        assert error_name(r) == "RequestValidation"


class TestAudit:
    def test_small_audit_round_trip(self, client):
        req = {
            "families": ["dirichlet"],
            "count": 3,
            "attrs": 3,
            "seed": 1,
        }
        r = client.post("/audit", json=req)
        assert r.status_code == 200
        out = r.json()
        assert out["row_count"] == 3
        rows = out["rows_csv"].splitlines()
        assert rows[0] == ",".join(ROW_COLUMNS)
        assert len(rows) == 4
        summary = out["summary_csv"].splitlines()
        assert summary[0] == ",".join(SUMMARY_COLUMNS)
        assert len(summary) == 1 + 3 * 3 * 4 * 3

    def test_audit_is_deterministic(self, client):
        req = {"families": ["product"], "count": 2, "attrs": 3, "seed": 7}
        a = client.post("/audit", json=req).json()
        b = client.post("/audit", json=req).json()
        assert a["rows_csv"] == b["rows_csv"]
        assert a["summary_csv"] == b["summary_csv"]

    def test_unknown_family_is_400(self, client):
        r = client.post(
            "/audit",
            json={"families": ["weibull"], "count": 1, "attrs": 3},
        )
        assert r.status_code == 400
        assert error_name(r) == "UnknownFamily"

    def test_zero_count_is_400(self, client):
        r = client.post(
            "/audit",
            json={"families": ["dirichlet"], "count": 0, "attrs": 3},
        )
        assert r.status_code == 400


class TestDecompose:
    def test_xor1_merges_once(self, client):
        r = client.post(
            "/decompose",
            json={
                "distribution": body("XOR1"),
                "hypothesis": "h",
                "max_group_size": 2,
            },
        )
        assert r.status_code == 200
        out = r.json()
        assert out["partition"] == [["a", "b"]]
        assert out["max_error"] == 0.0
        assert len(out["merges"]) == 1
        assert out["merges"][0]["merged"] == [["a"], ["b"]]

    def test_nb1_needs_no_merges(self, client):
        r = client.post(
            "/decompose", json={"distribution": body("NB1"), "hypothesis": "h"}
        )
        out = r.json()
        assert out["partition"] == [["a"], ["b"]]
        assert out["merges"] == []

    def test_zero_tolerance_is_400(self, client):
        r = client.post(
            "/decompose",
            json={"distribution": body("NB1"), "hypothesis": "h", "tol": 0.0},
        )
        assert r.status_code == 400
