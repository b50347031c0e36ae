import json

import pytest

from lienilq import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def payload_of(out):
    doc = json.loads(out)
    doc.pop("timing", None)
    return doc


def test_scan_payload_and_determinism(capsys):
    code1, out1 = run_cli(capsys, "scan", "--max-sum", "3")
    assert code1 == 0
    code2, out2 = run_cli(capsys, "scan", "--max-sum", "3")
    doc1, doc2 = payload_of(out1), payload_of(out2)
    assert doc1 == doc2
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)
    assert doc1["not_null_pairs"] == []
    assert doc1["parity_conjecture_agreement"] is True


def test_json_keys_sorted(capsys):
    _, out = run_cli(capsys, "scan", "--max-sum", "3")
    lines = [l for l in out.splitlines()]
    keys = [l.split('"')[1] for l in lines
            if l.startswith('  "') and '":' in l]
    assert keys == sorted(keys)


def test_nullpair_shortcut(capsys):
    code, out = run_cli(capsys, "nullpair", "--m", "1", "--l", "9")
    assert code == 0
    doc = payload_of(out)
    assert doc["is_null"] is True
    assert doc["shortcut"] == "m=1"


def test_nullpair_verdict_payload(capsys):
    code, out = run_cli(capsys, "nullpair", "--m", "2", "--l", "2",
                        "--exact")
    assert code == 0
    doc = payload_of(out)
    assert doc["is_null"] is False
    assert doc["verdicts"]["exact"] is False
    assert doc["component_dim"] == 24


def test_hilbert_payload(capsys):
    code, out = run_cli(capsys, "hilbert", "--n", "2", "--i", "2",
                        "--max-degree", "4")
    assert code == 0
    doc = payload_of(out)
    assert doc["series"] == [1, 2, 3, 4, 5]
    assert doc["lambda_weights"] == {"0,0": 1}
    assert doc["lambda_dim"] == 1
    assert doc["stabilized"] is True


def test_verify_four_term(capsys):
    code, out = run_cli(capsys, "verify", "four-term")
    assert code == 0
    assert payload_of(out)["passed"] is True


def test_verify_fs_model_small(capsys):
    code, out = run_cli(capsys, "verify", "fs-model", "--n", "2",
                        "--max-degree", "3")
    assert code == 0
    doc = payload_of(out)
    assert doc["passed"] is True
    assert doc["dims"] == [1, 2, 4, 6]


def test_exit_codes(capsys):
    code, out = run_cli(capsys, "nullpair", "--m", "2", "--l", "6",
                        "--max-component", "100")
    assert code == 2
    assert payload_of(out)["kind"] == "resource-guard"
    code, _ = run_cli(capsys, "scan", "--max-sum", "1")
    assert code == 3
    code = cli.main(["nullpair", "--m", "2"])  # missing --l
    assert code == 3


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, "verify", "four-term",
                        "--output", str(target))
    assert code == 0
    assert json.loads(target.read_text())["passed"] is True


def test_cache_commands(tmp_path, capsys):
    code, out = run_cli(capsys, "cache", "info",
                        "--cache-dir", str(tmp_path))
    assert code == 0
    assert payload_of(out)["files"] == 0
    run_cli(capsys, "hilbert", "--n", "2", "--i", "2", "--max-degree", "2",
            "--cache-dir", str(tmp_path))
    code, out = run_cli(capsys, "cache", "info",
                        "--cache-dir", str(tmp_path))
    assert payload_of(out)["files"] > 0
    code, out = run_cli(capsys, "cache", "clear",
                        "--cache-dir", str(tmp_path))
    assert payload_of(out)["removed"] > 0
