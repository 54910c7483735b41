import json
import os

import pytest

from sgcoh.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def q(name):
    return os.path.join(DATA, name + ".q")


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_dims_text_one_loop(capsys):
    rc, out, err = run(
        capsys, "dims", "--quiver", q("oneloop"), "--degrees", "-4..4"
    )
    assert rc == 0 and err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "degree  dim  stabilized"
    assert len(lines) == 10
    for line in lines[1:]:
        assert line.endswith("1  yes")


def test_dims_json_schema(capsys):
    rc, out, _ = run(
        capsys,
        "dims",
        "--quiver",
        q("oneloop"),
        "--degrees",
        "0..1",
        "--out",
        "json",
    )
    assert rc == 0
    rows = json.loads(out)
    assert [row["degree"] for row in rows] == [0, 1]
    for row in rows:
        assert set(row) == {"degree", "stages", "stabilized", "dim"}
        assert row["stabilized"] is True and row["dim"] == 1
        for stage in row["stages"]:
            assert set(stage) == {"p", "dim", "window_rank"}
    assert out == json.dumps(rows, indent=2, sort_keys=True) + "\n"


def test_dims_csv_acyclic(capsys):
    rc, out, _ = run(
        capsys,
        "dims",
        "--quiver",
        q("a2"),
        "--degrees",
        "-2..2",
        "--out",
        "csv",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim,stabilized,window_rank"
    assert lines[1:] == [
        "-2,0,true,0",
        "-1,0,true,0",
        "0,0,true,0",
        "1,0,true,0",
        "2,0,true,0",
    ]


def test_dims_crown_values(capsys):
    # frozen from two independent chain models: the 2-cycle carries one
    # dimension in every degree, the 4-cycle exactly at 0, 1 mod 4
    rc, out, _ = run(
        capsys,
        "dims",
        "--quiver",
        q("crown2"),
        "--degrees",
        "-5..5",
        "--out",
        "csv",
    )
    assert rc == 0
    for line in out.strip().splitlines()[1:]:
        degree, dim = line.split(",")[:2]
        assert dim == "1", degree
    rc, out, _ = run(
        capsys,
        "dims",
        "--quiver",
        q("crown4"),
        "--degrees",
        "-4..5",
        "--out",
        "csv",
    )
    assert rc == 0
    for line in out.strip().splitlines()[1:]:
        degree, dim = line.split(",")[:2]
        assert dim == ("1" if int(degree) % 4 in (0, 1) else "0"), degree


def test_dims_notes_are_aggregated(capsys):
    rc, out, _ = run(capsys, "dims", "--quiver", q("a2"), "--degrees", "0..1")
    assert rc == 0
    assert "note: quiver has sources or sinks; all singular groups vanish" in out


def test_runs_are_byte_identical(capsys):
    argv = [
        "dims",
        "--quiver",
        q("crown4"),
        "--degrees",
        "-3..3",
        "--out",
        "json",
    ]
    rc1, out1, _ = run(capsys, *argv)
    rc2, out2, _ = run(capsys, *argv)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_cohomology_text_with_basis(capsys):
    rc, out, _ = run(
        capsys,
        "cohomology",
        "--quiver",
        q("twoloops"),
        "--m",
        "1",
        "--p",
        "0",
        "--basis",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "cell (m=1, p=0): dim 4 (high 4, low 0)"
    assert lines[1:] == ["(a|a)", "(a|b)", "(b|a)", "(b|b)"]


def test_cohomology_json(capsys):
    rc, out, _ = run(
        capsys,
        "cohomology",
        "--quiver",
        q("twoloops"),
        "--m",
        "1",
        "--p",
        "1",
        "--out",
        "json",
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["m"] == 1 and payload["p"] == 1
    assert payload["dim"] == payload["high_dim"] + payload["low_dim"]
    assert "basis" not in payload


def test_cohomology_csv_basis_blocks(capsys):
    rc, out, _ = run(
        capsys,
        "cohomology",
        "--quiver",
        q("twoloops"),
        "--m",
        "1",
        "--p",
        "1",
        "--basis",
        "--out",
        "csv",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "block,index,element"
    assert any(line.startswith("low,") for line in lines[1:])


def test_paths_text_and_csv(capsys):
    rc, out, _ = run(
        capsys, "paths", "--quiver", q("twoloops"), "--length", "2"
    )
    assert rc == 0
    assert out.splitlines() == ["a*a", "a*b", "b*a", "b*b"]
    rc, out, _ = run(
        capsys,
        "paths",
        "--quiver",
        q("twoloops"),
        "--length",
        "2",
        "--out",
        "csv",
    )
    assert out.splitlines()[0] == "path,source,target"
    assert out.splitlines()[1] == "a*a,v,v"


def test_bracket_byte_exact_outputs(capsys):
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("oneloop"),
        "--lhs=(a|a*a*a)",
        "--rhs=(a|a*a*a*a*a)",
    )
    assert rc == 0
    assert out == "2 (a|a*a*a*a*a*a*a)\n"
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("twoloops"),
        "--lhs=(b|a)",
        "--rhs=(a|b)",
    )
    assert rc == 0
    assert out == "(a|a) - (b|b)\n"


def test_bracket_flag_values_may_start_with_a_minus(capsys):
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("twoloops"),
        "--lhs",
        "- (b|a)",
        "--rhs",
        "(a|b)",
    )
    assert rc == 0
    assert out == "-(a|a) + (b|b)\n"


def test_bracket_project_flag(capsys):
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("twoloops"),
        "--lhs=(b|a)",
        "--rhs=(a|b)",
        "--project",
    )
    assert rc == 0
    assert out == "(a|a) - (b|b)\n"
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("oneloop"),
        "--lhs=(a|a*a)",
        "--rhs=(a|a*a*a)",
        "--project",
    )
    assert rc == 0
    assert out == "0\n"


def test_bracket_project_rejects_non_cocycles(capsys):
    rc, out, err = run(
        capsys,
        "bracket",
        "--quiver",
        q("twoloops"),
        "--lhs=low (a|b)",
        "--rhs=(a|a*a)",
        "--project",
    )
    assert rc == 4
    assert "nonzero differential" in err


def test_bracket_two_matching_files(capsys):
    rc, out, _ = run(
        capsys,
        "bracket",
        "--quiver",
        q("oneloop"),
        "--quiver",
        q("oneloop"),
        "--lhs=(a|a*a*a)",
        "--rhs=(a|a*a*a*a*a)",
    )
    assert rc == 0
    assert out == "2 (a|a*a*a*a*a*a*a)\n"


def test_bracket_rejects_structurally_different_files(capsys):
    rc, _, err = run(
        capsys,
        "bracket",
        "--quiver",
        q("oneloop"),
        "--quiver",
        q("twoloops"),
        "--lhs=(a|a)",
        "--rhs=(a|a)",
    )
    assert rc == 2
    assert "different quivers" in err


def test_verify_sl2_passes(capsys):
    rc, out, _ = run(capsys, "verify", "sl2", "--quiver", q("twoloops"))
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS ") for line in lines)


def test_verify_reports_failures(capsys, monkeypatch):
    import sgcoh.cli as cli_module

    monkeypatch.setattr(
        cli_module, "run_suite", lambda *a, **k: [("probe", False, "boom")]
    )
    rc, out, _ = run(capsys, "verify", "witt", "--quiver", q("oneloop"))
    assert rc == 1
    assert "FAIL probe: boom" in out


def test_verify_witt_refuses_characteristic_two(capsys):
    rc, _, err = run(
        capsys, "verify", "witt", "--quiver", q("oneloop"), "--field", "fp:2"
    )
    assert rc == 5
    assert "requires characteristic != 2" in err


def test_verify_crown_refuses_odd_cycles(capsys):
    rc, _, err = run(capsys, "verify", "crown", "--quiver", q("crown3"))
    assert rc == 5
    assert "even cycle length, got 3" in err


def test_verify_json_rows(capsys):
    rc, out, _ = run(
        capsys,
        "verify",
        "kernel",
        "--quiver",
        q("twoloops"),
        "--bound",
        "2",
        "--out",
        "json",
    )
    assert rc == 0
    rows = json.loads(out)
    assert all(set(row) == {"name", "ok", "detail"} for row in rows)
    assert all(row["ok"] for row in rows)


def test_unknown_suite_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "molien", "--quiver", q("oneloop")])
    assert excinfo.value.code == 2


def test_usage_exit_codes(capsys):
    rc, _, err = run(
        capsys, "dims", "--quiver", q("nosuchfile"), "--degrees", "0..0"
    )
    assert rc == 2
    rc, _, err = run(
        capsys,
        "dims",
        "--quiver",
        q("oneloop"),
        "--degrees",
        "4..-4",
    )
    assert rc == 2
    rc, _, err = run(
        capsys,
        "dims",
        "--quiver",
        q("oneloop"),
        "--degrees",
        "0..0",
        "--field",
        "fp:4",
    )
    assert rc == 2
    assert "not prime" in err
    rc, _, err = run(
        capsys,
        "dims",
        "--quiver",
        q("oneloop"),
        "--degrees",
        "0..0",
        "--pmax",
        "3",
        "--window",
        "3",
    )
    assert rc == 2
    assert "pmax" in err
    rc, _, err = run(
        capsys,
        "cohomology",
        "--quiver",
        q("oneloop"),
        "--quiver",
        q("oneloop"),
        "--m",
        "1",
        "--p",
        "1",
    )
    assert rc == 2
    assert "single --quiver" in err


def test_guard_exit_code(capsys):
    rc, _, err = run(
        capsys,
        "paths",
        "--quiver",
        q("twoloops"),
        "--length",
        "12",
        "--guard",
        "100",
    )
    assert rc == 3
    assert "exceed the guard" in err


def test_quiver_syntax_errors_name_the_line(capsys, tmp_path):
    bad = tmp_path / "bad.q"
    bad.write_text("vertices: v\narrow a: v -> w\n")
    rc, _, err = run(capsys, "paths", "--quiver", str(bad), "--length", "1")
    assert rc == 2
    assert "bad.q:2" in err
