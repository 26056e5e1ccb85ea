import json
import subprocess
import sys


from smlab.cli import main


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


Z12 = {"ring": {"kind": "zmod", "n": 12}, "module": {"kind": "regular"}}


def test_analyze_z12(tmp_path, capsys):
    f = write(tmp_path, "a.json", {**Z12, "submodule": {"gens": [4]}})
    code, out, _ = run(capsys, "analyze", f)
    doc = json.loads(out)
    assert code == 0
    props = doc["properties"]
    assert props["strongly_irreducible"]["verdict"] is True
    assert props["primal"]["verdict"] is True
    assert props["primal"]["data"]["adjoint_prime"] == [0, 2, 4, 6, 8, 10]


def test_analyze_zero_and_whole(tmp_path, capsys):
    f = write(tmp_path, "z.json", {**Z12, "submodule": {"gens": []}})
    code, out, _ = run(capsys, "analyze", f, "--props", "strongly_irreducible")
    assert code == 0 and json.loads(out)["N"] == [0]
    g = write(tmp_path, "w.json", {**Z12, "submodule": {"gens": [1]}})
    code, _, err = run(capsys, "analyze", g)
    assert code == 3 and "proper" in err


def test_analyze_pretty_labels(tmp_path, capsys):
    doc = {"ring": {"kind": "truncpoly", "p": 2, "nvars": 2, "degree": 2}, "submodule": {"gens": [2]}}
    f = write(tmp_path, "p.json", doc)
    code, out, _ = run(capsys, "analyze", f, "--props", "strongly_irreducible", "--pretty")
    w = json.loads(out)["properties"]["strongly_irreducible"]["witness"]
    assert code == 0 and all(isinstance(x, str) for x in w["K"])


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", write(tmp_path, "k.json", {"ring": {"kind": "nope"}}))[0] == 2
    assert run(capsys, "lattice", write(tmp_path, "r.json", {"ring": {"kind": "zmod", "n": 4},
                                                              "module": {"kind": "cyclic", "ideal_gens": [1]}}))[0] == 3
    assert run(capsys, "frobnicate")[0] == 2


def test_caps_from_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SMLAB_CAPS", "ring=8,module=200,lattice=512")
    code, _, err = run(capsys, "lattice", write(tmp_path, "c.json", Z12))
    assert code == 4 and "cap" in err
    monkeypatch.setenv("SMLAB_CAPS", "ring=64,module=4")
    assert run(capsys, "lattice", write(tmp_path, "d.json", Z12))[0] == 4
    monkeypatch.setenv("SMLAB_CAPS", "garbage")
    assert run(capsys, "lattice", write(tmp_path, "e.json", Z12))[0] == 2


def test_lattice_dumps(tmp_path, capsys):
    code, out, _ = run(capsys, "lattice", write(tmp_path, "l.json", Z12))
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 6
    sizes = [n["size"] for n in doc["nodes"]]
    # divisor lattice of 12: every cover multiplies the size by a prime
    for i, j in doc["covers"]:
        assert sizes[j] // sizes[i] in (2, 3) and sizes[j] % sizes[i] == 0
    assert len(doc["covers"]) == 7
    field = write(tmp_path, "f.json", {"ring": {"kind": "zmod", "n": 7}})
    assert json.loads(run(capsys, "lattice", field)[1])["count"] == 2
    sq = write(tmp_path, "s.json", {"ring": {"kind": "zmod", "n": 2},
                                    "module": {"kind": "dsum", "parts": [{"kind": "regular"}] * 2}})
    doc = json.loads(run(capsys, "lattice", sq)[1])
    atoms = [j for i, j in doc["covers"] if i == 0]
    assert doc["count"] == 5 and len(atoms) == 3


def test_decide_z(tmp_path, capsys):
    z4 = write(tmp_path, "z4.json", {"zmodule": {"rank": 1}, "zsub": {"gens": [[4]]}})
    doc = json.loads(run(capsys, "decide-z", z4)[1])
    assert (doc["verdict"], doc["path"], doc["data"]["p"], doc["data"]["n"]) == ("true", "thm47", 2, 2)
    m2 = write(tmp_path, "m2.json", {"zmodule": {"rank": 2}})
    sub = write(tmp_path, "s.json", {"zsub": {"gens": [[4, 0], [0, 4]]}})
    doc = json.loads(run(capsys, "decide-z", m2, sub)[1])
    assert doc["verdict"] == "false" and doc["witness"] == [[1, 0], [0, 1]]
    zero = write(tmp_path, "zero.json", {"zsub": {"gens": []}})
    doc = json.loads(run(capsys, "decide-z", m2, zero)[1])
    assert doc["verdict"] == "false" and doc["path"] == "witness-only" and doc["witness"]
    whole = write(tmp_path, "whole.json", {"zsub": {"gens": [[1, 0], [0, 1]]}})
    assert run(capsys, "decide-z", m2, whole)[0] == 3
    ragged = write(tmp_path, "rag.json", {"zsub": {"gens": [[1]]}})
    assert run(capsys, "decide-z", m2, ragged)[0] == 2


def test_witness_command(tmp_path, capsys):
    z6 = write(tmp_path, "z6.json", {"zmodule": {"rank": 1}, "zsub": {"gens": [[6]]}})
    doc = json.loads(run(capsys, "witness", z6, "--bound", "3")[1])
    assert sorted(doc["witness"]) == [[2], [3]]
    f = write(tmp_path, "f.json", {**Z12, "submodule": {"gens": [6]}})
    doc = json.loads(run(capsys, "witness", f)[1])
    assert doc["witness"]["K"] == [0, 4, 8]


def test_laws_command(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "laws", "--suite", "core", "--law", "P2_10", "--out", str(out))
    assert code == 0 and "0 fail" in err
    assert json.loads(out.read_text())["summary"]["fail"] == 0
    assert run(capsys, "laws", "--suite", "bogus")[0] == 2
    code, md, _ = run(capsys, "laws", "--suite", "core", "--law", "T3_1", "--markdown")
    assert code == 0 and md.startswith("# Law suite")
    assert run(capsys, "laws", "--law", "P2_10", "--mutation", "si-as-irreducible")[0] == 1


def test_laws_jobs_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "laws", "--suite", "core", "--seed", "42", "--law", "T3_2", "--jobs", "1", "--out", str(a))
    run(capsys, "laws", "--suite", "core", "--seed", "42", "--law", "T3_2", "--jobs", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "z4.json", {"zmodule": {"rank": 1}, "zsub": {"gens": [[4]]}})
    proc = subprocess.run([sys.executable, "-m", "smlab", "decide-z", f], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "true"
