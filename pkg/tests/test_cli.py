import json
import os
import subprocess
import sys

import pytest

from conftest import SPECS
from solenoid.cli import main, parse_word, verify_witness_json
from solenoid.errors import BadWord
from solenoid.gallery import GallerySpec, build
from solenoid.chains import verify_chain
from solenoid.groups import KleinBottle


def run(*args, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "solenoid.cli", *map(str, args)],
                          capture_output=True, text=True, env=full)


def report(capsys, *args):
    code = main([str(a) for a in args])
    return code, json.loads(capsys.readouterr().out)


def test_invariants_klein(capsys):
    code, r = report(capsys, "invariants", SPECS / "klein2.json", "--depth", 4)
    assert code == 0 and r["schema_version"] == 1
    assert r["chain"]["indices"] == [1, 2, 4, 8, 16]
    assert "b" in r["kernel"]["surviving"] and "a" not in r["kernel"]["surviving"]


def test_invariants_heisenberg(capsys):
    code, r = report(capsys, "invariants", SPECS / "heis_phi.json", "--depth", 2)
    assert r["cores"][1]["core"] == "(4a,4b,4c)"
    assert r["normality"]["verdict"] == "Holds"


def test_invariants_trivial(capsys):
    code, r = report(capsys, "invariants", SPECS / "trivial.json", "--depth", 3)
    assert r["chain"]["indices"] == [1, 1, 1, 1] and r["steinitz"] == "1"


def test_invariants_writes_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["invariants", str(SPECS / "vietoris2.json"), "--json", str(out)]) == 0
    assert json.loads(out.read_text())["steinitz"] == "2^∞"


@pytest.mark.parametrize("a,b,rel,code", [
    ("vietoris2", "vietoris3", "return", 3),
    ("vietoris2", "vietoris4", "equiv", 0),
    ("klein2", "klein2", "conj", 0),
    ("heis_dyer", "heis_dyer", "return", 0),
])
def test_compare_exit_codes(capsys, a, b, rel, code):
    got, r = report(capsys, "compare", SPECS / f"{a}.json", SPECS / f"{b}.json", "--relation", rel)
    assert got == code and r["relation"] == rel
    if code == 3:
        assert "Steinitz" in r["certificate"]


def test_compare_unknown_exit(tmp_path, capsys):
    spec = {"schema_version": 1, "family": "free_abelian", "kind": "patterns",
            "parameters": {"levels": [1, 6, 12, 24]}, "depth": 3}
    (tmp_path / "p.json").write_text(json.dumps(spec))
    code, r = report(capsys, "compare", SPECS / "vietoris2.json", tmp_path / "p.json", "--depth", 3)
    assert code == 4 and r["verdict"] == "UnknownAtDepth"


def test_witness_round_trip(capsys):
    _, r = report(capsys, "compare", SPECS / "vietoris2.json", SPECS / "vietoris4.json")
    A, B = build(GallerySpec.vietoris(2)), build(GallerySpec.vietoris(4))
    verify_chain(A, 6), verify_chain(B, 6)
    assert verify_witness_json(A, B, r["witness"])
    # 8Z does not contain 4Z, so A_3 cannot sit above B_1
    r["witness"]["pairs"][1] = [3, 1]
    assert not verify_witness_json(A, B, r["witness"])


def test_action_examples(capsys):
    _, r = report(capsys, "action", SPECS / "klein2.json", "--word", "b^2")
    assert all(r["fixes_basepoint"]) and r["end"] == r["start"]
    _, r = report(capsys, "action", SPECS / "vietoris2.json", "--word", "g^1", "--depth", 3)
    assert [rep[0] % 2**l for l, rep in enumerate(r["end_representatives"])] == [0, 1, 1, 1]
    _, r = report(capsys, "action", SPECS / "klein2.json", "--word", "")
    assert r["end"] == r["start"] == [0] * 5


def test_action_from_coordinates(capsys):
    code, r = report(capsys, "action", SPECS / "vietoris2.json", "--depth", 2,
                     "--word", "g", "--start", "0,1,1")
    assert code == 0 and r["start"] == [0, 1, 1]
    assert main(["action", str(SPECS / "vietoris2.json"), "--depth", "2", "--start", "0,1,0"]) == 1


def test_parse_word():
    K = KleinBottle()
    assert parse_word(K, "a^3,b^-1") == [(0, 3), (1, -1)]
    assert parse_word(K, "") == []
    with pytest.raises(BadWord):
        parse_word(K, "c")


def test_subprocess_exit_codes(tmp_path):
    assert run("action", SPECS / "klein2.json", "--word", "q").returncode == 1
    assert run("compare", SPECS / "klein2.json", SPECS / "vietoris2.json").returncode == 1
    assert run("invariants", tmp_path / "missing.json").returncode == 1
    (tmp_path / "bad.json").write_text('{"kind": "lattice", "parameters": {"matrix": [[0]]}}')
    assert run("invariants", tmp_path / "bad.json", "--depth", 2).returncode == 1
    r = run("invariants", SPECS / "heis_phi.json", env={"SOLENOID_BUDGET": "10"})
    assert r.returncode == 2 and "budget" in r.stderr


def test_reports_are_byte_identical():
    for args in (("invariants", SPECS / "klein2.json"),
                 ("compare", SPECS / "heis_dyer.json", SPECS / "heis_dyer.json", "--relation", "conj"),
                 ("action", SPECS / "klein2.json", "--word", "a,b^-1")):
        first, second = run(*args), run(*args)
        assert first.returncode == 0
        assert first.stdout == second.stdout


def test_golden_klein_report():
    golden = (SPECS.parent / "tests" / "golden" / "klein2_invariants.json").read_text()
    assert run("invariants", SPECS / "klein2.json").stdout == golden
