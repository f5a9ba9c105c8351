import io
import json
from pathlib import Path

import pytest

from eqpsg import cli

DATA = Path(__file__).parent / "data"


def run_cli(args):
    out = io.StringIO()
    parser_args = cli._build_parser().parse_args(args)
    code = parser_args.func(parser_args, out)
    return code, out.getvalue()


def test_invariants_single_row():
    code, text = run_cli(
        ["invariants", "--family", "n+3,n+5,n+7", "--n", "5..5",
         "--invariants", "numerical,frobenius", "--format", "csv"]
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n,numerical,frobenius"
    assert lines[1] == "5,false,"  # odd shift: all generators even
    assert len(lines) == 2


def test_invariants_rows_match_direct_computation():
    code, text = run_cli(
        ["invariants", "--family", "n+3,n+5,n+7", "--n", "1..30",
         "--invariants", "frobenius,genus,type", "--format", "json"]
    )
    data = json.loads(text)
    assert data["schema"] == 1
    assert len(data["rows"]) == 30
    from eqpsg import numsg

    for row in data["rows"]:
        n = row["n"]
        view = numsg.build([n + 3, n + 5, n + 7])
        if view.is_numerical:
            assert row["frobenius"] == view.frobenius
            assert row["genus"] == numsg.genus(view)
            assert row["type"] == numsg.semigroup_type(view)
        else:
            assert row["frobenius"] is None


def test_unknown_invariant_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli._build_parser().parse_args(
            ["invariants", "--family", "2,3", "--n", "1..2", "--invariants", "wat"]
        )
    assert exc.value.code == 2


def test_deterministic_bytes():
    args = ["invariants", "--family", "n+3,n+5,n+7", "--n", "1..12",
            "--invariants", "numerical,frobenius,genus,type,fg_count,delta_count,"
            "symmetric,irreducible,apery_2,betti_1", "--format", "json"]
    _, first = run_cli(args)
    _, second = run_cli(args)
    assert first == second


def test_golden_invariants_file():
    args = ["invariants", "--family", "n+3,n+5,n+7", "--n", "1..12",
            "--invariants", "numerical,frobenius,genus,type,fg_count,delta_count,"
            "symmetric,irreducible,apery_2,betti_1", "--format", "json"]
    _, text = run_cli(args)
    assert text == (DATA / "golden_invariants.json").read_text()


def test_csv_and_json_agree_field_for_field():
    args = ["invariants", "--family", "2n+3,3n+5", "--n", "1..6",
            "--invariants", "frobenius,genus,symmetric"]
    _, json_text = run_cli(args + ["--format", "json"])
    _, csv_text = run_cli(args + ["--format", "csv"])
    rows = json.loads(json_text)["rows"]
    lines = csv_text.strip().splitlines()
    header = lines[0].split(",")
    assert header == list(rows[0].keys())
    for row, line in zip(rows, lines[1:]):
        for key, cell in zip(header, line.split(",")):
            value = row[key]
            if value is None:
                assert cell == ""
            elif isinstance(value, bool):
                assert cell == ("true" if value else "false")
            else:
                assert cell == str(value)


def test_threads_do_not_change_output():
    args = ["invariants", "--family", "n+3,n+5,n+7", "--n", "1..16",
            "--invariants", "frobenius,genus", "--format", "json"]
    _, one = run_cli(args + ["--threads", "1"])
    _, four = run_cli(args + ["--threads", "4"])
    assert one == four


def test_normalize_flag():
    _, text = run_cli(
        ["invariants", "--family", "2n,2n+4", "--n", "3..3",
         "--invariants", "numerical,frobenius", "--format", "json", "--normalize"]
    )
    row = json.loads(text)["rows"][0]
    # 6,10 normalizes to 3,5: Frobenius 7
    assert row["numerical"] is True and row["frobenius"] == 7


def test_never_numerical_family_rows():
    _, text = run_cli(
        ["invariants", "--family", "2n,2n+4", "--n", "1..5",
         "--invariants", "numerical,frobenius,genus", "--format", "json"]
    )
    for row in json.loads(text)["rows"]:
        assert row["numerical"] is False
        assert row["frobenius"] is None and row["genus"] is None


def test_eqp_fit_command():
    code, text = run_cli(
        ["eqp-fit", "--family", "2n+3,3n+5", "--n", "1..60",
         "--invariants", "frobenius,numerical", "--format", "json"]
    )
    assert code == 0
    data = json.loads(text)
    fit = data["fits"]["frobenius"]
    assert fit["period"] == 1 and fit["degree"] == 2
    assert fit["classes"][0] == ["7/1", "14/1", "6/1"]  # (a-1)(b-1)-1 = 6n^2+14n+7
    assert fit["holdout_exact"] is True
    assert data["fits"]["numerical"]["pattern"] == [True]
    assert "consistent with the sampled window" in data["note"]


def test_eqp_fit_never_numerical():
    _, text = run_cli(
        ["eqp-fit", "--family", "2n,2n+4", "--n", "1..40",
         "--invariants", "numerical,frobenius", "--format", "json"]
    )
    data = json.loads(text)
    assert data["fits"]["numerical"]["pattern"] == [False]
    assert "nofit" in data["fits"]["frobenius"]
    assert data["defined_set_fit"]["pattern"] == [False]


def test_betti_command():
    code, text = run_cli(
        ["betti", "--family", "2,3", "--n", "0..0", "--i", "1", "--format", "json"]
    )
    data = json.loads(text)
    assert code == 0 and data["rows"][0]["betti_1"] == 1
    code, text = run_cli(
        ["betti", "--family", "2,3", "--n", "0..0", "--i", "1", "--graded",
         "--format", "json"]
    )
    assert "6;1;1" in json.loads(text)["graded"]["0"]


def test_bresinsky_command():
    code, text = run_cli(["bresinsky", "--d", "2", "--n", "2..5", "--format", "json"])
    assert code == 0
    rows = json.loads(text)["rows"]
    assert [r["beta1_lower"] for r in rows] == [4, 6, 8, 10]
    assert all(r["verified"] for r in rows)
    assert all(r["beta1"] >= r["beta1_lower"] for r in rows)


def test_ppa_command(tmp_path):
    code, text = run_cli(
        ["ppa", "--formula", "E z (2*z = n)", "--n", "6..6", "--window", "10",
         "--format", "json"]
    )
    data = json.loads(text)
    assert code == 0 and data["rows"][0]["value"] is True
    # free-variable formulas list the defined set; files work as input
    f = tmp_path / "even.ppa"
    f.write_text("x >= 0 & x <= 3")
    code, text = run_cli(["ppa", "--file", str(f), "--n", "0..0", "--window", "8",
                          "--format", "json"])
    assert json.loads(text)["rows"][0]["set"] == "0;1;2;3"


def test_module_error_exit_code(capsys):
    assert cli.main(["invariants", "--family", "n-9,n+1", "--n", "1..3",
                     "--invariants", "frobenius"]) == 1


def test_length_count_invariant():
    _, text = run_cli(
        ["invariants", "--family", "6,9,20", "--n", "0..0",
         "--invariants", "length_count:60,delta_elem_count:60", "--format", "json"]
    )
    row = json.loads(text)["rows"][0]
    assert row["length_count:60"] == 5 and row["delta_elem_count:60"] == 2
