"""CLI behavior: exit codes, output selection, JSON determinism."""

import json

import pytest

from conics800 import cli, leech, report


def test_golay_subcommand(capsys, tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["golay", "--stats", "--json", str(out)])
    assert code == 0
    captured = capsys.readouterr().out
    assert "codeword_count" in captured
    data = json.loads(out.read_text())
    assert data["schema"] == report.SCHEMA
    assert data["overall"] is True
    assert set(data["stages"]) == {"golay"}


def test_golay_exports(tmp_path):
    words = tmp_path / "w.txt"
    basis = tmp_path / "b.txt"
    assert cli.main(["golay", "--export", str(words), "--export-basis", str(basis)]) == 0
    assert len(words.read_text().splitlines()) == 4096
    assert len(basis.read_text().splitlines()) == 12


def test_leech_counts_line(capsys):
    assert cli.main(["leech", "--counts"]) == 0
    out = capsys.readouterr().out
    assert "total_minimal_vectors: 196560" in out
    assert "[98304, 97152, 1104]" in out


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc2:
        cli.main(["conics", "--octad-choice", "9"])
    assert exc2.value.code == 2


def test_verification_failure_exit_1(monkeypatch, capsys):
    monkeypatch.setattr(leech, "MINIMAL_COUNT", 196561)
    assert cli.main(["leech"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out and "overall: FAIL" in out


def test_construction_failure_exit_3(monkeypatch, capsys):
    from conics800.errors import ConstructionError

    def boom(vectors):
        raise ConstructionError("synthetic failure")

    monkeypatch.setattr(leech, "extract_basis", boom)
    assert cli.main(["leech"]) == 3
    assert "construction failed" in capsys.readouterr().err


def test_json_determinism_across_threads(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["conics", "--threads", "1", "--json", str(a)]) == 0
    assert cli.main(["conics", "--threads", "3", "--json", str(b)]) == 0
    ra = report.strip_volatile(json.loads(a.read_text()))
    rb = report.strip_volatile(json.loads(b.read_text()))
    sa = json.dumps(ra, indent=2, ensure_ascii=False)
    sb = json.dumps(rb, indent=2, ensure_ascii=False)
    assert sa == sb


def test_octad_choice_flag(tmp_path):
    out = tmp_path / "c.json"
    assert cli.main(["conics", "--octad-choice", "2", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["environment"]["octad_choice"] == "2"
    conics_checks = {c["name"]: c for c in data["stages"]["conics"]["checks"]}
    assert conics_checks["pattern_split"]["pass"] is True


def test_clique_all_mode(tmp_path):
    out = tmp_path / "k.json"
    assert cli.main(["conics", "--clique", "all", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    cc = data["stages"]["conics"]["clique_count"]
    assert cc["count"] >= 1
