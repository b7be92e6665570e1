import json

import pytest

from ncstone import catalog
from ncstone.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_make_and_reload(capsys, tmp_path):
    code, out, _ = run(capsys, "make", "I_2")
    assert code == 0 and len(json.loads(out)["mul"]) == 7
    f = tmp_path / "i2.json"
    f.write_text(out)
    code, out2, _ = run(capsys, "make", str(f))
    assert code == 0 and out2 == out


def test_dual_dot_and_kb(capsys):
    code, out, _ = run(capsys, "dual", "I_2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "kb", "Pair(2)")
    assert code == 0 and len(json.loads(out)["mul"]) == 7
    code, _, err = run(capsys, "make", "I_2", "--format", "dot")
    assert code == 2 and "groupoids" in err


def test_roundtrip(capsys):
    assert run(capsys, "roundtrip", "I_3")[1].strip() == "pass |S|=34 |KB(G(S))|=34"
    assert run(capsys, "roundtrip", "Comp(2,Z2,2)")[1].strip() == "pass |G|=8 |G(KB(G))|=8"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "Rook(2,Z2)")
    rep = json.loads(out)
    assert code == 0 and rep["predicates"]["fundamental"] is False
    assert all(c["holds"] for c in rep["correspondences"])


def test_unitize(capsys):
    code, out, _ = run(capsys, "unitize", "I_2")
    rep = json.loads(out)
    assert code == 0 and rep["size"] == 14 and rep["original"] == 7
    code, out, _ = run(capsys, "unitize", "Ifin", "--seed", "4", "--samples", "200")
    rep = json.loads(out)
    assert rep["agree"] == rep["samples"] == 200


def test_quotient(capsys):
    s = catalog.semigroup("I_2xI_2")
    corner = next(n for n in s.names if n.startswith("(0,") and n != "(0,0)")
    code, out, _ = run(capsys, "quotient", "I_2xI_2", "--ideal", corner)
    assert code == 0 and len(json.loads(out)["quotient"]["mul"]) == 7
    assert run(capsys, "quotient", "I_2", "--ideal", "nope")[0] == 2


def _morphism_file(tmp_path, theta):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"source": theta.source.to_dict(), "target": theta.target.to_dict(),
                             "map": list(theta.table), "name": theta.name}))
    return str(f)


def test_dualmor(capsys, tmp_path):
    code, out, _ = run(capsys, "dualmor", _morphism_file(tmp_path, catalog.projection("I_2", "I_2", 0)))
    rep = json.loads(out)
    assert code == 0 and rep["covering"] is True and len(rep["map"]) == 4
    code, _, err = run(capsys, "dualmor", _morphism_file(tmp_path, catalog.collapse_group()))
    assert code == 2 and "callitic" in err


def test_dualmor_by_names(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"source": "I_1", "target": "I_2", "map": {"0": "0"}}))
    code, _, err = run(capsys, "dualmor", str(f))
    assert code == 2 and "[1->1]" in err


def test_bad_inputs(capsys, tmp_path):
    assert run(capsys, "make", "NoSuchThing")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "make", str(bad))[0] == 2
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"mul": [[0, 0], [0, 0]], "inv": [0, 1], "zero": 0}))
    assert run(capsys, "make", str(table))[0] == 2
    assert run(capsys, "kb", "I_2")[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate", "I_2"])


def test_deterministic(capsys):
    a = run(capsys, "unitize", "Ifin", "--seed", "9", "--samples", "50")[1]
    b = run(capsys, "unitize", "Ifin", "--seed", "9", "--samples", "50")[1]
    assert a == b
