import json
from pathlib import Path

import pytest

from treesets import cli, io
from treesets.presented import truncate

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    return cli.main([str(a) for a in argv])


def report(capsys, *argv):
    code = run(*argv, "--format", "json")
    return code, json.loads(capsys.readouterr().out)


def test_roundtrip_tree_exit_zero(capsys):
    code, rep = report(capsys, "roundtrip", "--tree", DATA / "p3.json")
    assert code == 0 and rep["verdict"] and set(rep["certificates"]["map"]) == {"a", "b", "c"}


def test_tame_negative_with_replayable_witness(capsys):
    code, rep = report(capsys, "tame", DATA / "omega_plus_one.json")
    assert code == 1
    pres = io.load(DATA / "omega_plus_one.json")
    prefix = rep["certificates"]["prefix"]
    tau = truncate(pres, 6)
    assert all(tau.lt(a, b) for a, b in zip(prefix, prefix[1:]))


def test_splitting_negative(capsys):
    code, rep = report(capsys, "splitting", DATA / "omega_plus_one.json", "--element", "e[top]-")
    assert code == 1
    pres = io.load(DATA / "omega_plus_one.json")
    assert not pres.is_splitting(pres.parse_vertex(rep["certificates"]["orientation"]))
    assert run("splitting", DATA / "omega_plus_one.json", "--element", "e[3]-") == 0


def test_validate_negative_witness(capsys):
    code, rep = report(capsys, "validate", DATA / "crossing.json")
    assert code == 1
    a, b = rep["certificates"]["crossing_pair"]
    from treesets import nested

    assert not nested(io.load(DATA / "crossing.json"), a, b)


def test_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("validate", bad) == 2
    assert "bad.json:1:2" in capsys.readouterr().err
    assert run("tame", DATA / "p3.json") == 2
    assert run("splitting", DATA / "omega_plus_one.json", "--element", "q[0]+") == 2
    with pytest.raises(SystemExit) as exc:
        run("nonsense")
    assert exc.value.code == 2


def test_finite_verbs(tmp_path, capsys):
    sys_path = tmp_path / "p3sys.json"
    code, rep = report(capsys, "from-tree", DATA / "p3.json")
    assert code == 0
    sys_path.write_text(json.dumps(rep["body"]))
    code, rep = report(capsys, "to-tree", sys_path)
    assert code == 0 and len(rep["body"]["vertices"]) == 3
    code, rep = report(capsys, "enumerate", sys_path)
    assert rep["body"]["count"] == 3
    code, rep = report(capsys, "stars", sys_path)
    assert code == 0 and len(rep["body"]["orientations"]) == 3
    code, rep = report(capsys, "orient", sys_path, "--pin", "(a,b)")
    assert rep["body"]["orientation"] == ["(a,b)", "(c,b)"] and rep["certificates"]["unique"]
    code, rep = report(capsys, "orient", sys_path, "--partial", "(b,a) (b,c)")
    assert code == 1 and rep["certificates"]["inconsistent_pair"]
    code, rep = report(capsys, "flip-path", sys_path, "--source", "(b,a)", "--target", "(b,c)")
    assert code == 0 and len(rep["body"]["path"]) == 3
    code, rep = report(capsys, "roundtrip", "--system", sys_path)
    assert code == 0
    code, rep = report(capsys, "minor", DATA / "p3.json", DATA / "p4.json")
    assert code == 0 and rep["certificates"]["embedding_certified"]
    code, rep = report(capsys, "roundtrip", "--random", 20, "--seed", 4)
    assert code == 0 and rep["body"]["seed"] == 4
    assert run("validate", DATA / "p3.json") == 0


def test_presented_verbs(capsys):
    f = DATA / "omega_plus_one.json"
    code, rep = report(capsys, "tls", f)
    assert rep["body"]["limit_edges"] == [{"edge": "e[top]", "endpoints": ["e@omega", "v"]}]
    code, rep = report(capsys, "contract", f, "--interval", "e:0:omega")
    assert rep["body"]["labels"]["e"] == {"kind": "finite", "start": "u", "k": 1}
    code, rep = report(capsys, "truncate", f, "--depth", 3)
    assert len(rep["body"]["elements"]) == 4
    code, rep = report(capsys, "subbase", f, "--element", "e[top]+", "--point", "e@omega")
    assert code == 1 and rep["certificates"]["in_inverse_set"]
    code, rep = report(capsys, "subbase", f, "--element", "e[top]+", "--point", "e[top]:3/4")
    assert code == 0
    code, rep = report(capsys, "arc", f, "--u", "u", "--v", "v")
    assert rep["body"]["symmetric"] and rep["body"]["segments"] == ["e[0..omega+1)+"]
    code, rep = report(capsys, "validate", f)
    assert code == 0


def test_text_and_dot_formats(capsys):
    assert run("tame", DATA / "omega_plus_one.json") == 1
    out = capsys.readouterr().out
    assert out.startswith("tame: no") and "e[top]+" in out
    assert run("tls", DATA / "omega_plus_one.json", "--format", "dot") == 0
    assert capsys.readouterr().out.startswith("digraph")
    assert run("tame", DATA / "omega_plus_one.json", "--format", "dot") == 2
