import json

import pytest

from modlie.cli import load_records, main, summarise


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_algebra_command(capsys, tmp_path):
    code, out, _ = run(capsys, "algebra", "C", "3", "7", "--out", str(tmp_path))
    assert code == 0 and "n = 21" in out and "m = 9" in out
    assert (tmp_path / "C3_p7.txt").read_text().startswith("# algebra C 3")
    code, out, _ = run(capsys, "algebra", "A", "2", "7", "--out", str(tmp_path))
    assert "n = 8" in out and "m = 3" in out


def test_small_characteristic_is_a_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "algebra", "A", "2", "5", "--out", str(tmp_path))
    assert code == 2 and "7" in err


def test_bad_arguments(capsys):
    assert run(capsys, "check", "nonsense")[0] == 2
    assert run(capsys, "algebra", "B", "2", "7")[0] == 2


def test_casimir(capsys):
    code, out, _ = run(capsys, "check", "casimir", "--family", "A", "--rank", "1", "--p", "7")
    recs = records(out)
    assert code == 0
    assert [r["status"] for r in recs if r["claim"] == "casimir.w_central"] == ["pass"]


def test_basis_sl2(capsys):
    code, out, _ = run(capsys, "check", "basis", "--family", "A", "--rank", "1", "--p", "7",
                       "--chi", "h=1")
    ind = [r for r in records(out) if r["claim"] == "basis.independence"]
    assert code == 0
    assert ind[0]["witness"]["rank"] == 49 and ind[0]["witness"]["size"] == 49


def test_modules_c3_infeasible(capsys):
    code, out, _ = run(capsys, "check", "modules", "--family", "C", "--rank", "3", "--p", "7")
    recs = records(out)
    assert code == 0 and recs
    assert all(r["status"] == "infeasible" and r["witness"]["reason"] for r in recs)


def test_wrong_character_pattern(capsys):
    code, _, err = run(capsys, "check", "g", "--chi", "f=1")
    assert code == 2 and "chi" in err


def test_records_sorted_and_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    out = []
    for d in (a, b):
        code, text, _ = run(capsys, "check", "all", "--rank", "1", "--p", "7", "--out", str(d))
        assert code == 0
        out.append(text)
    assert out[0] == out[1]
    assert (a / "all-A1-p7.jsonl").read_bytes() == (b / "all-A1-p7.jsonl").read_bytes()
    claims = [r["claim"] for r in records(out[0])]
    assert claims == sorted(claims)
    assert all("seconds" not in r for r in records(out[0]))
    assert (a / "all-A1-p7.timings.jsonl").exists()


def test_report(capsys, tmp_path):
    code, out, _ = run(capsys, "report", str(tmp_path))
    assert code == 0 and out.splitlines()[1] == "records 0"
    run(capsys, "check", "casimir", "--out", str(tmp_path))
    first = run(capsys, "report", str(tmp_path))
    assert first[0] == 0 and "casimir.w_central" in first[1]
    assert run(capsys, "report", str(tmp_path)) == first
    bad = {"claim": "x.broken", "status": "fail", "params": {}, "anchor": "", "witness": None}
    (tmp_path / "extra.jsonl").write_text(json.dumps(bad) + "\n")
    code, out, _ = run(capsys, "report", str(tmp_path))
    assert code == 1 and "x.broken" in out and "FAIL" in out


def test_report_errors(capsys, tmp_path):
    assert run(capsys, "report", str(tmp_path / "missing"))[0] == 2
    (tmp_path / "bad.jsonl").write_text("{not json\n")
    assert run(capsys, "report", str(tmp_path))[0] == 3
    with pytest.raises(ValueError):
        load_records(tmp_path)


def test_summary_counts():
    recs = [{"claim": "a", "status": "pass"}, {"claim": "a", "status": "finding"},
            {"claim": "b", "status": "infeasible"}]
    text = summarise(recs)
    assert "pass=1" in text and "FINDING" in text and text.startswith("modlie-report 1")
