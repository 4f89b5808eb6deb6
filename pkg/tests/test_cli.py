import json
import subprocess
import sys

import pytest

from liederive import cli, io
from liederive.corpus import twisted_almost_abelian
from liederive.integrability import SoundnessError
from liederive.rings import matrix_algebra


def run(argv, capsys):
    rc = cli.main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for fam, n, extra in (("sl2", 1, []), ("r2", 1, []), ("heisenberg", 1, []),
                          ("almost_abelian", 4, ["--gf", "3"]), ("standard_filiform", 4, [])):
        p = tmp_path / f"{fam}{n}.json"
        assert cli.main(["builtin", fam, str(n), "-o", str(p)] + extra) == 0
        paths[fam] = str(p)
    p = tmp_path / "twisted.json"
    p.write_text(io.dumps(io.algebra_to_json(twisted_almost_abelian())))
    paths["twisted"] = str(p)
    capsys.readouterr()
    return paths


def test_analyze(files, tmp_path, capsys):
    out_json = tmp_path / "a.json"
    rc, out, _ = run(["analyze", files["sl2"], "--json", str(out_json)], capsys)
    assert rc == 0 and "dim Der = 3" in out
    rep = json.loads(out_json.read_text())
    assert rep["composition_length"] == 1 and rep["perfect"] and "timing_seconds" not in rep
    run(["analyze", files["sl2"], "--json", str(out_json), "--timing"], capsys)
    assert "timing_seconds" in json.loads(out_json.read_text())


def test_check_and_verify_roundtrip(files, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    rc, out, _ = run(["check-derived", files["standard_filiform"], "--certificate", str(cert)], capsys)
    assert rc == 0 and "YES [codim1]" in out
    rc, out, _ = run(["verify", str(cert)], capsys)
    assert rc == 0 and out.startswith("verified")
    doc = json.loads(cert.read_text())
    assert [doc["derivation"][i][i] for i in range(4)] == ["1/1", "2/1", "3/1", "4/1"]
    doc["embedding"][1][0] = "7/1"
    cert.write_text(io.dumps(doc))
    rc, _, err = run(["verify", str(cert)], capsys)
    assert rc == 1 and "rejected" in err


def test_no_verdict_lists_all_codes(files, capsys):
    rc, out, _ = run(["check-derived", files["r2"]], capsys)
    assert rc == 0 and "NO [" in out and "also:" in out and "ad-not-in-der-squared" in out


def test_almost_abelian_char_p(files, tmp_path, capsys):
    cert = tmp_path / "aa.json"
    rc, out, _ = run(["check-derived", files["almost_abelian"], "--certificate", str(cert)], capsys)
    assert "YES [almost-abelian-char-p]" in out
    assert run(["verify", str(cert)], capsys)[0] == 0


def test_unknown_reports_diagnostics(files, tmp_path, capsys):
    out_json = tmp_path / "u.json"
    rc, out, _ = run(["check-derived", files["twisted"], "--json", str(out_json)], capsys)
    assert rc == 0 and "UNKNOWN" in out and "passed:" in out and "skipped:" in out
    rep = json.loads(out_json.read_text())
    assert rep["verdict"]["status"] == "unknown" and rep["certificate"] is None
    assert len(rep["obstruction_table"]) >= 8


def test_input_errors(files, tmp_path, capsys):
    doc = json.loads(open(files["sl2"]).read())
    doc["brackets"][0]["terms"][0][1] = "3/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    rc, _, err = run(["check-derived", str(bad)], capsys)
    assert rc == 2 and "Jacobi violation" in err
    assert run(["analyze", str(tmp_path / "missing.json")], capsys)[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(["verify", str(tmp_path / "junk.json")], capsys)[0] == 2
    assert run(["builtin", "nope", "3"], capsys)[0] == 2
    assert run(["builtin", "sl2", "1", "--gf", "4"], capsys)[0] == 2
    assert run(["tower", files["heisenberg"]], capsys)[0] == 2


def test_reports_are_deterministic(files, tmp_path, capsys):
    paths = [files[k] for k in ("sl2", "r2", "heisenberg", "standard_filiform")]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["check-derived", "--json", str(a)] + paths, capsys)
    rc, out_seq, _ = run(["check-derived", "--json", str(b)] + paths, capsys)
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    rc, out_par, _ = run(["check-derived", "--jobs", "3", "--json", str(c)] + paths, capsys)
    assert rc == 0 and c.read_bytes() == a.read_bytes() and out_par == out_seq


def test_tower(files, tmp_path, capsys):
    rc, out, _ = run(["tower", files["r2"]], capsys)
    assert rc == 0 and "complete at step 0" in out
    j = tmp_path / "t.json"
    rc, out, _ = run(["tower", files["almost_abelian"], "--json", str(j)], capsys)
    rep = json.loads(j.read_text())
    assert rep["complete"] and rep["unverified_theory"] and "unverified-theory" in out


def test_ring(tmp_path, capsys):
    p = tmp_path / "upper2.json"
    p.write_text(io.dumps(io.assoc_to_json(matrix_algebra(2, upper=True))))
    j = tmp_path / "r.json"
    rc, out, _ = run(["ring", str(p), "--json", str(j)], capsys)
    assert rc == 0 and "delta series dims [3, 1, 0]" in out
    assert "ring-solvable-not-nilpotent" in out
    rep = json.loads(j.read_text())
    assert rep["derived_ring_nilpotent"] and rep["dorroh_delta_dims"] == [4, 1, 0]


def test_corpus(tmp_path, capsys):
    rc, out, _ = run(["corpus"], capsys)
    assert rc == 0 and "sl2\tdim 3\tQ" in out
    rc, out, _ = run(["corpus", "--out", str(tmp_path / "c")], capsys)
    assert len(list((tmp_path / "c").glob("*.json"))) >= 40


def test_unsound_exit_code(files, monkeypatch, capsys):
    def boom(L, seed=0):
        raise SoundnessError("forced")
    monkeypatch.setattr(cli, "is_derived_algebra", boom)
    rc, _, err = run(["check-derived", files["sl2"]], capsys)
    assert rc == 3 and "internal contradiction" in err


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "liederive.cli", "check-derived", files["sl2"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "YES [self-perfect]" in res.stdout
