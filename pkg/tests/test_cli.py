"""End-to-end command line flows, exit codes, and artifact determinism."""

from __future__ import annotations

import json
import socket
import threading
import time
from pathlib import Path

import httpx
import pytest

from cfbayes import ROW_COLUMNS, SUMMARY_COLUMNS
from cfbayes.cli import main, parse_evidence, parse_tolerances
from cfbayes.service import create_app

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_writes_distribution_and_prints_classes(self, capsys, tmp_path):
        out = tmp_path / "d.json"
        code, stdout, stderr = run(
            capsys,
            "gen", "--family", "naive-bayes", "--attrs", "3",
            "--seed", "4", "--out", str(out),
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["attributes"] == ["h", "e1", "e2"]
        assert len(payload["probabilities"]) == 8
        lines = stdout.splitlines()
        assert lines[0] == "hypothesis=h"
        assert len(lines) == 4
        assert all("ci_gap=" in line for line in lines[1:])
        assert "wrote distribution to" in stderr

    def test_unknown_family_exits_1_and_writes_nothing(self, capsys, tmp_path):
        out = tmp_path / "d.json"
        code, _, stderr = run(
            capsys, "gen", "--family", "zipf", "--attrs", "3", "--out", str(out)
        )
        assert code == 1
        assert "UnknownFamily" in stderr
        assert not out.exists()

    def test_oversized_space_exits_1(self, capsys, tmp_path):
        code, _, stderr = run(
            capsys,
            "gen", "--family", "dirichlet", "--attrs", "21",
            "--out", str(tmp_path / "d.json"),
        )
        assert code == 1
        assert "SpaceTooLarge" in stderr


class TestClassify:
    def test_nb1(self, capsys):
        code, stdout, _ = run(
            capsys,
            "classify", "--dist", str(FIXTURE_DIR / "NB1.json"), "--hypothesis", "h",
        )
        assert code == 0
        assert stdout.startswith("WeaklyDecomposable variant=symmetric")

    def test_variant_flag(self, capsys):
        code, stdout, _ = run(
            capsys,
            "classify", "--dist", str(FIXTURE_DIR / "DSTRICT1.json"),
            "--hypothesis", "h", "--variant", "h-true",
        )
        assert code == 0
        assert stdout.startswith("Decomposable variant=h-true")

    def test_unknown_hypothesis_exits_1(self, capsys):
        code, _, stderr = run(
            capsys,
            "classify", "--dist", str(FIXTURE_DIR / "NB1.json"), "--hypothesis", "zz",
        )
        assert code == 1
        assert "UnknownAttribute" in stderr

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, _, stderr = run(
            capsys,
            "classify", "--dist", str(tmp_path / "nope.json"), "--hypothesis", "h",
        )
        assert code == 1
        assert "cannot read" in stderr

    def test_malformed_json_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, stderr = run(
            capsys, "classify", "--dist", str(bad), "--hypothesis", "h"
        )
        assert code == 1
        assert "not valid JSON" in stderr

    def test_non_object_file_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "list.json"
        bad.write_text("[1, 2, 3]")
        code, _, stderr = run(
            capsys, "classify", "--dist", str(bad), "--hypothesis", "h"
        )
        assert code == 1

    def test_empty_object_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "empty.json"
        bad.write_text("{}")
        code, _, stderr = run(
            capsys, "classify", "--dist", str(bad), "--hypothesis", "h"
        )
        assert code == 1
        assert "RequestValidation" in stderr


class TestCf:
    def test_nb1_pair(self, capsys):
        code, stdout, _ = run(
            capsys,
            "cf", "--dist", str(FIXTURE_DIR / "NB1.json"),
            "--hypothesis", "h", "--evidence", "a=true,b=true",
        )
        assert code == 0
        lines = stdout.splitlines()
        assert lines[0] == "prior=0.5 posterior=0.857142857143"
        assert lines[1].startswith("direct: mb=0.714285714286 md=0 ")
        assert lines[3].startswith("gaps: m1=0.047619047619")

    def test_partial_evidence_is_allowed(self, capsys):
        code, stdout, _ = run(
            capsys,
            "cf", "--dist", str(FIXTURE_DIR / "NB1.json"),
            "--hypothesis", "h", "--evidence", "a=true",
        )
        assert code == 0
        assert "posterior=0.666666666667" in stdout.splitlines()[0]

    def test_zero_probability_evidence_exits_2(self, capsys, tmp_path):
        dist = tmp_path / "degenerate.json"
        dist.write_text(
            json.dumps(
                {"attributes": ["h", "a"], "probabilities": [0.5, 0.0, 0.5, 0.0]}
            )
        )
        code, _, stderr = run(
            capsys,
            "cf", "--dist", str(dist), "--hypothesis", "h", "--evidence", "a=true",
        )
        assert code == 2
        assert "ZeroProbabilityEvidence" in stderr

    def test_bad_evidence_grammar_exits_3(self, capsys):
        code, _, stderr = run(
            capsys,
            "cf", "--dist", str(FIXTURE_DIR / "NB1.json"),
            "--hypothesis", "h", "--evidence", "a=yes",
        )
        assert code == 3
        assert "usage error" in stderr

    def test_duplicate_evidence_exits_3(self, capsys):
        code, _, _ = run(
            capsys,
            "cf", "--dist", str(FIXTURE_DIR / "NB1.json"),
            "--hypothesis", "h", "--evidence", "a=true,a=false",
        )
        assert code == 3


class TestAudit:
    def test_writes_both_csvs(self, capsys, tmp_path):
        out_dir = tmp_path / "audit"
        code, _, stderr = run(
            capsys,
            "audit", "--families", "dirichlet,product", "--count", "2",
            "--attrs", "3", "--seed", "9", "--out-dir", str(out_dir),
        )
        assert code == 0
        rows = (out_dir / "audit_rows.csv").read_text()
        summary = (out_dir / "audit_summary.csv").read_text()
        assert rows.splitlines()[0] == ",".join(ROW_COLUMNS)
        assert len(rows.splitlines()) == 1 + 4
        assert summary.splitlines()[0] == ",".join(SUMMARY_COLUMNS)
        assert "wrote 4 rows" in stderr

    def test_byte_identical_across_runs(self, capsys, tmp_path):
        args = [
            "audit", "--families", "naive-bayes", "--count", "3",
            "--attrs", "4", "--seed", "123",
        ]
        run(capsys, *args, "--out-dir", str(tmp_path / "one"))
        run(capsys, *args, "--out-dir", str(tmp_path / "two"))
        for name in ("audit_rows.csv", "audit_summary.csv"):
            a = (tmp_path / "one" / name).read_bytes()
            b = (tmp_path / "two" / name).read_bytes()
            assert a == b, name

    def test_bad_tolerances_exit_3(self, capsys, tmp_path):
        code, _, _ = run(
            capsys,
            "audit", "--families", "dirichlet", "--count", "1", "--attrs", "3",
            "--tols", "abc", "--out-dir", str(tmp_path),
        )
        assert code == 3


class TestDecompose:
    def test_xor1_json_output(self, capsys):
        code, stdout, _ = run(
            capsys,
            "decompose", "--dist", str(FIXTURE_DIR / "XOR1.json"),
            "--hypothesis", "h", "--max-group-size", "2",
        )
        assert code == 0
        body = json.loads(stdout)
        assert body["partition"] == [["a", "b"]]
        assert body["max_error"] == 0.0
        assert len(body["merges"]) == 1

    def test_zero_tol_exits_1(self, capsys):
        code, _, _ = run(
            capsys,
            "decompose", "--dist", str(FIXTURE_DIR / "XOR1.json"),
            "--hypothesis", "h", "--tol", "0.0",
        )
        assert code == 1


class TestUsage:
    def test_no_command_exits_3(self, capsys):
        code, _, stderr = run(capsys)
        assert code == 3
        assert "choose a command" in stderr

    def test_unknown_command_exits_3(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 3

    def test_missing_required_flag_exits_3(self, capsys):
        code, _, _ = run(capsys, "gen", "--family", "dirichlet")
        assert code == 3

    def test_unreachable_server_exits_1(self, capsys):
        code, _, stderr = run(
            capsys,
            "classify", "--server", "http://127.0.0.1:9",
            "--dist", str(FIXTURE_DIR / "NB1.json"), "--hypothesis", "h",
        )
        assert code == 1
        assert "cannot reach service" in stderr


class TestParsers:
    def test_parse_evidence(self):
        assert parse_evidence("a=true, b=FALSE") == {"a": True, "b": False}

    def test_parse_tolerances(self):
        assert parse_tolerances("1e-9,0.001") == [1e-9, 0.001]


class TestAgainstRealServer:
    def test_classify_over_http(self, capsys):
        import uvicorn

        with socket.socket() as sock:
            sock.bind(("127.0.0.1", 0))
            port = sock.getsockname()[1]
        config = uvicorn.Config(
            create_app(), host="127.0.0.1", port=port, log_level="error"
        )
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        base = f"http://127.0.0.1:{port}"
        try:
            deadline = time.monotonic() + 15.0
            while time.monotonic() < deadline:
                try:
                    if httpx.get(f"{base}/health", timeout=1.0).status_code == 200:
                        break
                except httpx.HTTPError:
                    time.sleep(0.05)
            else:
                pytest.fail("service did not come up")
            code, stdout, _ = run(
                capsys,
                "classify", "--server", base,
                "--dist", str(FIXTURE_DIR / "XOR1.json"), "--hypothesis", "h",
            )
            assert code == 0
            assert stdout.startswith("Holistic")
        finally:
            server.should_exit = True
            thread.join(timeout=5.0)
