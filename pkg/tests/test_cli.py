import json

import pytest

from flagchow.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", [
    ["dickson", "--n", "2", "--p", "3"],
    ["dickson", "--n", "2", "--p", "2", "--verify"],
    ["milnor", "--table", "so_11", "--expr", "x3", "--op", "Q", "--index", "2"],
    ["milnor", "--table", "bzp_2_p3", "--verify-recursion", "--imax", "2", "--bound", "4"],
    ["graded", "--catalogue", "g2_twisted", "--range", "0..6"],
    ["hilbert", "--catalogue", "g2_twisted", "--bound", "6"],
    ["catalogue"],
    ["catalogue", "g2_gt_split", "--quotient"],
    ["twisted", "--group", "g2"],
    ["quadric", "--pfister-min", "3", "--check-partition"],
    ["quadric", "--ell", "4", "--f", "0,1"],
    ["rost", "--n", "2", "--p", "3"],
    ["rost", "--n", "3", "--p", "2", "--morava", "2"],
    ["e8check"],
    ["so-image", "--m", "11"],
])
def test_commands_succeed_and_are_deterministic(capsys, argv):
    code, first, _ = run(capsys, *argv)
    assert code == 0, first
    assert first
    code2, second, _ = run(capsys, *argv)
    assert (code2, second) == (code, first)


@pytest.mark.parametrize("argv", [
    ["dickson", "--n", "1", "--p", "5"],
    ["graded", "--catalogue", "g2_twisted", "--range", "0..6"],
    ["rost", "--n", "2", "--p", "2", "--res-omega"],
    ["quadric", "--pfister-max", "2"],
    ["e8check"],
])
def test_json_output_has_schema(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    assert json.loads(out)["schema"] == 1


def test_milnor_value(capsys):
    code, out, _ = run(capsys, "milnor", "--table", "so_11", "--expr", "y6", "--op", "P", "--index", "4")
    assert code == 0 and out.strip() == "y10"


def test_check_failures_exit_2(capsys, tmp_path):
    code, out, _ = run(capsys, "quadric", "--embedding", "0,0,7:0,0,0:3")
    assert code == 2 and "j = 2" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 2, "generators": [
        {"name": "y", "chow_deg": 3, "facts": ["v2*y in Res", "y not in Res"]}]}))
    code, _, err = run(capsys, "degv", "--file", str(bad))
    assert code == 2 and "inconsistent" in err


def test_usage_errors_exit_1(capsys, tmp_path):
    assert run(capsys, "dickson", "--n", "x")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "catalogue", "e7_twisted")[0] == 1
    assert run(capsys, "degv", "--file", str(tmp_path / "missing.json"))[0] == 1
    code, _, err = run(capsys, "dickson", "--n", "5", "--p", "3")
    assert code == 1 and "limit" in err


def test_degv_file(capsys, tmp_path):
    table = tmp_path / "g2.json"
    table.write_text(json.dumps({"p": 2, "dim": 6, "generators": [
        {"name": "y", "chow_deg": 3, "facts": ["v1*y in Res", "y not in Res"]}]}))
    code, out, _ = run(capsys, "degv", "--file", str(table), "--qx", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["generators"][0]["deg_v"] == 2
