import json

from krein.cli import main
from krein.pairdoc import parse_document, serialize_pair
from krein.spaces import direct_sum
from krein.witnesses import witness_complex_b


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_generate_b_family(tmp_path, capsys):
    out = tmp_path / "b2.json"
    rc, _, _ = run(capsys, "generate", "--family", "b", "--k", "2",
                   "--l1", "0", "--l2", "1", "--out", str(out))
    assert rc == 0
    pair, meta = parse_document(out.read_text())
    assert pair.n == 4
    assert meta["expected_case"] == "ComplexB"
    assert pair == witness_complex_b(2, 0, 1).pair


def test_generate_rejects_odd_k_for_family_d(capsys):
    rc, _, err = run(capsys, "generate", "--family", "d", "--k", "3")
    assert rc == 2
    assert "even" in err


def test_generate_upper_default_r_in_metadata(capsys):
    rc, out, _ = run(capsys, "generate", "--family", "a-upper", "--k", "1")
    assert rc == 0
    doc = json.loads(out)
    assert doc["metadata"]["r"] == ["4/5"]


def test_generate_pretty_format(capsys):
    rc, out, _ = run(capsys, "generate", "--family", "c-odd", "--k", "1", "--format", "pretty")
    assert rc == 0
    assert "N (2x2, real):" in out


def test_verify_ok_and_failure(tmp_path, capsys):
    good = tmp_path / "good.json"
    rc, _, _ = run(capsys, "generate", "--family", "e", "--k", "2", "--out", str(good))
    assert rc == 0
    rc, out, _ = run(capsys, "verify", str(good))
    assert rc == 0
    assert json.loads(out.splitlines()[0])["h_normal"] is True

    # tamper one operator entry: still parses, no longer H-normal
    doc = json.loads(good.read_text())
    doc["N"][0][0] = "7"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    rc, out, _ = run(capsys, "verify", str(bad))
    assert rc == 1
    assert json.loads(out.splitlines()[0])["h_normal"] is False


def test_classify_out_of_scope_is_exit_zero(tmp_path, capsys):
    doc = {
        "schema_version": "1",
        "field": "complex",
        "n": 3,
        "N": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "3"]],
        "H": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]],
    }
    path = tmp_path / "oos.json"
    path.write_text(json.dumps(doc))
    rc, out, _ = run(capsys, "classify", str(path))
    assert rc == 0
    report = json.loads(out.splitlines()[0])
    assert report["case"] == "OutOfTheoremScope"
    assert report["notes"]


def test_classify_non_h_normal_is_exit_one(tmp_path, capsys):
    doc = {
        "schema_version": "1",
        "field": "complex",
        "n": 2,
        "N": [["0", "1"], ["0", "0"]],
        "H": [["1", "0"], ["0", "1"]],
    }
    path = tmp_path / "nn.json"
    path.write_text(json.dumps(doc))
    rc, out, _ = run(capsys, "classify", str(path))
    assert rc == 1


def test_decompose_glued_pair(tmp_path, capsys):
    g = direct_sum(witness_complex_b(1, 0, 1).pair, witness_complex_b(1, 2, 3).pair)
    path = tmp_path / "glued.json"
    path.write_text(serialize_pair(g))
    rc, out, _ = run(capsys, "decompose", str(path), "--budget", "200", "--seed", "7")
    assert rc == 0
    verdict = json.loads(out.splitlines()[0])
    assert verdict["status"] == "decomposable"
    assert verdict["witness_subspace"]


def test_reduce_single_eigenvalue(tmp_path, capsys):
    path = tmp_path / "al.json"
    rc, _, _ = run(capsys, "generate", "--family", "a-lower", "--k", "2",
                   "--lambda", "1i", "--out", str(path))
    assert rc == 0
    rc, out, _ = run(capsys, "reduce", str(path), "--lambda", "1i")
    assert rc == 0
    doc = json.loads(out)
    assert doc["block_dims"] == [2, 0, 2]


def test_reduce_hypothesis_failure_is_exit_one(tmp_path, capsys):
    path = tmp_path / "b.json"
    run(capsys, "generate", "--family", "b", "--k", "2", "--out", str(path))
    rc, out, _ = run(capsys, "reduce", str(path), "--lambda", "0")
    assert rc == 1
    assert "spectrum" in json.loads(out)["error"]


def test_missing_file_is_exit_two(capsys):
    rc, _, err = run(capsys, "verify", "/nonexistent/nothing.json")
    assert rc == 2


def test_audit_small_run(tmp_path, capsys):
    log = tmp_path / "audit.jsonl"
    rc, out, err = run(capsys, "audit", "--kmax", "2", "--families", "b,e",
                       "--budget", "40", "--log", str(log))
    assert rc == 0
    lines = [json.loads(line) for line in log.read_text().splitlines()]
    assert len(lines) == 3  # b: k=1,2; e: k=2
    assert all(rec["passed"] for rec in lines)


def test_audit_empty_family_warns_but_passes(tmp_path, capsys):
    log = tmp_path / "audit.jsonl"
    rc, out, err = run(capsys, "audit", "--kmax", "1", "--families", "d",
                       "--log", str(log))
    assert rc == 0
    assert "no admissible k" in err


def test_audit_tampered_extra_fails(tmp_path, capsys):
    doc = {
        "schema_version": "1",
        "field": "complex",
        "n": 2,
        "N": [["0", "1"], ["0", "0"]],
        "H": [["1", "0"], ["0", "1"]],
        "metadata": {"expected_case": "ComplexA"},
    }
    extra = tmp_path / "tampered.json"
    extra.write_text(json.dumps(doc))
    log = tmp_path / "audit.jsonl"
    rc, out, err = run(capsys, "audit", "--kmax", "1", "--families", "b",
                       "--budget", "20", "--log", str(log), "--extra", str(extra))
    assert rc == 1
    records = [json.loads(line) for line in log.read_text().splitlines()]
    assert any(not rec["passed"] for rec in records)


def test_version_flag(capsys):
    rc, out, _ = run(capsys, "--version")
    assert rc == 0
