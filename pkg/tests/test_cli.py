import json

import pytest

from adjoint_chains.cli import main
from adjoint_chains.tables import golden_markdown


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table1_markdown_matches_golden(capsys):
    code, out, _ = run(capsys, "table", "1")
    assert code == 0
    assert "".join(out.split()) == "".join(golden_markdown(1).split())


def test_table2_exits_3_with_diffs(capsys):
    code, out, err = run(capsys, "table", "2")
    assert code == 3
    assert "| n | 0 | 0 | 0 | 0 | 0 | 0 | 0 | 1 | 0 | 0 | 0 | 3 |" in out
    assert err.count("l_tilde") == 4


def test_table4_csv(capsys):
    code, out, _ = run(capsys, "table", "4", "--format", "csv")
    assert code == 0
    assert "beta,32,24,16,8,0,-8,-16,-24,-32,-40" in out


def test_table_json_has_rows(capsys):
    code, out, _ = run(capsys, "table", "3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["rows"]["gamma"][-1] == 0 and d["diffs"] == []


@pytest.mark.parametrize("args,lt,v", [(("8", "2", "0"), 8, 18), (("8", "2", "-1"), 8, 17),
                                       (("72", "32", "-2"), 9, 19)])
def test_bound(capsys, args, lt, v):
    code, out, _ = run(capsys, "bound", *args)
    d = json.loads(out)
    assert code == 0
    assert (d["theorem_bound"], d["family_degree_bound"]) == (lt, v)


def test_construct_and_infeasible(capsys):
    code, out, _ = run(capsys, "construct", "8", "1", "-1", "1", "8")
    assert code == 0 and json.loads(out)["n"] == [0, 0, 1, 0, 0, 0, 0, 1]
    code, _, err = run(capsys, "construct", "2", "1", "-1", "1", "100")
    assert code == 2 and "error" in err


def test_realize_and_validate_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "realize", "8", "1", "-1", "1", "0,0,1,0,0,0,0,1")
    assert code == 0
    d = json.loads(out)
    assert d["identity"] == [40, 40]
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(d["chain"]))
    code, out, _ = run(capsys, "validate", str(path))
    v = json.loads(out)
    assert code == 0 and v["ok"] and v["sectional_genus"] == 6 and v["embedding_dim"] == 3

    d["chain"]["steps"][4]["beta"] = -2
    d["chain"]["steps"][4]["alpha"] = d["chain"]["steps"][4]["h"] - 2
    path.write_text(json.dumps(d["chain"]))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 2
    assert any(x["rule"] == "B" and x["index"] == 4 for x in json.loads(out)["violations"])


def test_realize_rule_violation_exit_2(capsys):
    code, _, err = run(capsys, "realize", "8", "1", "-1", "1", "0,0,0,0,0,0,0,2")
    assert code == 2 and "Z" in err


def test_domain_errors_exit_1(capsys):
    assert run(capsys, "realize", "8", "1", "-1", "1", "0,0")[0] == 1
    assert run(capsys, "state", "0", "0")[0] == 1
    assert run(capsys, "classify", "2", "-2", "4")[0] == 1
    assert run(capsys, "polygon", "level", "0,0", "1,1", "2,2")[0] == 1
    assert run(capsys, "polygon", "level", "0,0", "x")[0] == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["table", "7"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["bound", "1", "2", "0", "--caps", "1,2"])
    assert info.value.code == 1


def test_state_and_classify(capsys):
    assert run(capsys, "state", "-1", "2")[1].strip() == "S1"
    code, out, _ = run(capsys, "classify", "0", "-40", "-8")
    d = json.loads(out)
    assert (d["variant"], d["keel"], d["p"]) == ("D=kF", 20, -2)


def test_tightness_and_optimality_exit_codes(capsys):
    code, out, _ = run(capsys, "tightness", "6", "2", "0")
    assert code == 0 and json.loads(out)["max_found"] == 8
    code, out, _ = run(capsys, "tightness", "6", "5", "0")
    assert code == 2  # caps exceeded
    code, out, _ = run(capsys, "tightness", "6", "5", "0", "--caps", "40,6,10")
    assert code == 0 and json.loads(out)["max_found"] == 23
    code, out, _ = run(capsys, "optimality", "8", "1", "-1", "1", "8")
    assert code == 0
    code, out, _ = run(capsys, "optimality", "3", "1", "-1", "1", "4")
    assert code == 3 and json.loads(out)["best"] == [0, 3, 0]


def test_polygon_commands(capsys):
    assert run(capsys, "polygon", "level", "0,0", "4,0", "0,4")[1].strip() == "1"
    assert run(capsys, "polygon", "area", "0,0", "3,0", "3,3", "0,3")[1].strip() == "18"
    assert run(capsys, "polygon", "boundary", "0,0", "4,0", "0,4")[1].strip() == "12"
    code, out, _ = run(capsys, "polygon", "check", "0,0", "3,0", "3,3", "0,3")
    d = json.loads(out)
    assert code == 0 and d["corollary"] == {"lhs": 3, "rhs": -7, "pass": True}
    code, out, _ = run(capsys, "polygon", "check", "0,0", "1,0", "0,1")
    assert code == 0 and json.loads(out)["in_range"] is False
    code, out, _ = run(capsys, "polygon", "adjoint", "0,0", "3,0", "0,3")
    assert json.loads(out) == {"kind": "point", "points": [[1, 1]]}


def test_polygon_scan_csv(capsys):
    code, out, _ = run(capsys, "polygon", "scan", "--box", "4", "--min-level", "1")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "area2,b,v,level,lhs,rhs,pass,pick_ok,in_range,vertices"
    assert len(lines) > 1 and all(ln.split(",")[6:9] == ["1", "1", "1"] for ln in lines[1:])


@pytest.mark.parametrize("argv", [["table", "2"], ["bound", "11", "5", "0"], ["polygon", "scan", "--box", "3"],
                                  ["max-level", "34", "-2", "0"], ["optimality", "5", "1", "-1", "1", "7"]])
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "t.md"
    code, out, _ = run(capsys, "table", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert "".join(target.read_text().split()) == "".join(golden_markdown(1).split())
