import json
import subprocess
import sys

import pytest

from xorban.cli import main
from xorban.corpus import small_corpus, theorem_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def badc34(tmp_path, capsys):
    lab = tmp_path / "lab.json"
    code, out, _ = run(capsys, "gen", "badc", "3", "4", "--labeling", str(lab))
    assert code == 0
    net = tmp_path / "b.net"
    net.write_text(out)
    return net, lab


def test_gen_families(capsys):
    assert run(capsys, "gen", "flower", "3", "3", "3")[1].startswith("1 : x3 ^ x5 ^ x7")
    assert run(capsys, "gen", "chain", "3", "3", "3", "--offsets", "2,1")[0] == 0
    a = run(capsys, "gen", "cactus", "--seed", "4", "--n-max", "8")[1]
    b = run(capsys, "--seed", "4", "gen", "cactus", "--n-max", "8")[1]
    assert a == b


def test_eval(capsys, badc34):
    net, lab = badc34
    assert run(capsys, "eval", str(net), "100000", "--update", "2")[1].strip() == "110000"
    code, out, _ = run(capsys, "eval", str(net), "(100,1000)", "--labeling", str(lab), "--json")
    assert json.loads(out)["unstable"] == [1, 2, 4]


def test_atg_formats(capsys, badc34):
    net, _ = badc34
    code, out, _ = run(capsys, "atg", str(net), "--json")
    data = json.loads(out)
    assert len(data["nodes"]) == 64 and data["fixed_points"] == ["000000"]
    code, out, _ = run(capsys, "atg", str(net), "--dot")
    assert out.startswith("digraph") and out.rstrip().endswith("}")
    assert out.count("->") == len({(e["source"], e["target"]) for e in data["edges"]})
    code, out, _ = run(capsys, "atg", str(net), "--report")
    assert json.loads(out)["verdict"] is True


def test_output_is_deterministic(capsys, badc34):
    net, _ = badc34
    assert run(capsys, "atg", str(net), "--dot")[1] == run(capsys, "atg", str(net), "--dot")[1]


def test_plan_with_vectors_and_oracle(capsys, badc34):
    net, lab = badc34
    code, out, _ = run(capsys, "plan", str(net), "(100,1000)", "(010,0100)", "--labeling", str(lab), "--oracle", "--json")
    data = json.loads(out)
    assert code == 0 and data["length"] >= data["bfs_distance"] and data["length"] <= data["bound_4n2"]
    code, out, _ = run(capsys, "plan", str(net), "100000", "010010", "--badc")
    assert code == 0 and out.split()


def test_domain_errors_exit_1(capsys, tmp_path, badc34):
    bad = tmp_path / "bad.net"
    bad.write_text("1 : x1 ^ x1\n")
    code, _, err = run(capsys, "eval", str(bad), "1")
    assert code == 1 and "line 1" in err
    net, _ = badc34
    assert run(capsys, "plan", str(net), "000000", "100000")[0] == 1
    assert run(capsys, "plan", str(net), "(100,1000)", "000000")[0] == 1
    assert run(capsys, "reproduce", "--only", "nope")[0] == 1


def test_fixpoints_iso_classify_canon(capsys, tmp_path):
    lab = tmp_path / "f.json"
    f = tmp_path / "f.net"
    f.write_text(run(capsys, "gen", "flower", "3", "3", "3", "--labeling", str(lab))[1])
    out = json.loads(run(capsys, "fixpoints", str(f), "--oracle")[1])
    assert out["fixed_points"] == ["0000000", "1111111"]
    out = json.loads(run(capsys, "classify", str(f), "--labeling", str(lab), "--oracle")[1])
    assert out["class"] == "positive" and out["checked_against_atg"]
    d = tmp_path / "d.net"
    d.write_text(run(capsys, "canon", str(f), "--form", "dual")[1])
    assert json.loads(run(capsys, "iso", str(f), str(d))[1]) == {"isomorphic": False}
    c = tmp_path / "c.net"
    c.write_text(run(capsys, "canon", str(f), "--form", "normalized")[1])
    out = json.loads(run(capsys, "iso", str(f), str(c))[1])
    assert out["isomorphic"] is True


def test_reproduce_subset(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "atg-fixtures", "--only", "class-counts")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = run(capsys, "reproduce", "--only", "sync-witness", "--json")
    assert code == 2 and json.loads(out)[0]["passed"] is False


def test_corpus_seed_varies_cacti_only():
    a, b = theorem_corpus(0), theorem_corpus(7)
    assert len(a) == len(b) >= 50
    assert [e.net for e in a if e.family != "cactus"] == [e.net for e in b if e.family != "cactus"]
    assert [e.net for e in a if e.family == "cactus"] != [e.net for e in b if e.family == "cactus"]
    assert theorem_corpus(7) == theorem_corpus(7)
    assert all(e.n <= 10 for e in small_corpus(0))


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "xorban", "gen", "badc", "1", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1 : x1 ^ x2\n2 : x1\n"
