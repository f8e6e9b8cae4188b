import io
import json
import subprocess
import sys

import pytest

from ccrgraph.cli import run

K3 = "n=3;0 1;0 2;1 2"
P3 = "n=3;0 1;1 2"


def call(*argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv, **kw):
    code, out, err = call(*argv, **kw)
    assert code == 0, err
    return json.loads(out)


def test_classify_null_four():
    r = report("classify", "n=4")
    assert r["schema_version"] == "1" and r["verb"] == "classify"
    res = r["results"]
    assert (res["k"], res["l"], res["label"], res["simple"]) == (0, 4, "M_1 ⊗ C^16", False)


def test_classify_from_file_and_stdin(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text("n=3\n0 1\n0 2\n1 2\n")
    a = report("classify", str(path))
    b = report("classify", "-", stdin_text=path.read_text())
    assert a == b and a["results"]["label"] == "M_2 ⊗ C^2"


def test_equiv_and_iso():
    r = report("equiv", K3, P3)
    assert r["results"]["equivalent"] is True
    assert report("equiv", "n=4", "n=4;0 1;2 3")["results"]["equivalent"] is False
    assert report("iso", K3, P3)["results"] == {"isomorphic": False, "mapping": None}


def test_enumerate_four():
    res = report("enumerate", "--n", "4")["results"]
    assert res["classes"] == 3
    assert [row["types"] for row in res["rows"]] == [1, 6, 4]


def test_canonicalize_and_ginf():
    res = report("canonicalize", K3)["results"]
    assert (res["k"], res["l"]) == (1, 1)
    assert res["canonical_edges"] == [[0, 1]]
    gi = report("ginf", "n=2;0 1")["results"]
    assert gi["vertices"] == [[0], [1], [0, 1]]
    assert gi["edges"] == [[0, 1], [0, 2], [1, 2]]


def test_family_verbs(tmp_path):
    fam = tmp_path / "fam.txt"
    fam.write_text("m=2\n0\n1\n")
    chk = report("family-check", str(fam), "--threshold", "0")["results"]
    assert chk["separating"] and chk["noncovered"] and chk["almost_disjoint"]
    assert not chk["independent"]
    assert report("dual", str(fam))["results"]["text"] == "m=2\n0\n1\n"
    assert report("bipartite", str(fam))["results"]["label"] == "M_4 ⊗ C^1"
    fk = report("fk", "--depth", "1")["results"]
    assert fk["family"]["m"] == 6
    dens = report("densify", "m=2;0,1", "--budget", "2")
    assert dens["results"]["report"]["witnessed_after"] >= dens["results"]["report"]["witnessed_before"]


def test_extend_pass_and_exhaustion():
    fam = "m=3;0;1;2;0,1;0,2;1,2;0,1,2"
    r = report("extend", fam, "--members", "3")
    assert r["pass"] is True and r["results"]["l"] == 0
    code, out, err = call("extend", "m=2;0", "--elements", "1")
    assert code == 3 and out == "" and "resource" in err


def test_repr_reports():
    r = report("repr", K3)
    assert r["pass"] and r["results"]["center_dim"] == 2
    rel = report("repr", "n=2;0 1", "--kind", "pairs", "--relations-only")
    assert rel["results"]["pass"]
    lazy = report("repr", "n=6;0 1;1 2", "--kind", "pairs", "--lazy", "--relations-only")
    assert lazy["results"]["dim"] == 1 << 15
    bip = report("repr", "m=2;0;1", "--kind", "bipartite")
    assert bip["results"]["span_dim"] == 16


def test_bench_small():
    for suite in ("gf2-rank", "canonicalize", "repr-verify"):
        res = report("bench", "--suite", suite, "--size", "4")["results"]
        assert res["seconds"] >= 0


def test_dot_output(tmp_path):
    path = tmp_path / "g.dot"
    report("canonicalize", K3, "--dot", str(path))
    text = path.read_text()
    assert text.startswith("graph canonical {") and "0 -- 1;" in text


@pytest.mark.parametrize(
    "argv, code",
    [
        (["nosuchverb"], 2),
        (["classify"], 2),
        (["classify", "n=2;0 7"], 2),
        (["classify", "/no/such/file"], 2),
        (["enumerate", "--n", "9"], 3),
        (["ginf", "n=6"], 3),
        (["fk", "--depth", "5"], 3),
        (["repr", "n=6;0 1", "--kind", "pairs"], 3),
        (["repr", K3, "--kind", "canonical", "--lazy"], 2),
        (["equiv", "-", "-"], 2),
        (["repr", K3, "--tolerance", "-1"], 2),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    assert out == ""
    assert err


def test_deterministic_output():
    a = call("canonicalize", "n=6;0 1;1 2;2 3;3 4;4 5;5 0;0 3")
    b = call("canonicalize", "n=6;0 1;1 2;2 3;3 4;4 5;5 0;0 3")
    assert a == b and a[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ccrgraph", "classify", "n=2;0 1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["simple"] is True


def test_failed_check_exits_one(monkeypatch):
    import ccrgraph.cli as cli

    def failing(rep):
        return {"kind": rep.kind, "pass": False}

    monkeypatch.setattr(cli, "full_report", failing)
    code, out, _ = call("repr", K3)
    assert code == 1
    assert json.loads(out)["pass"] is False
