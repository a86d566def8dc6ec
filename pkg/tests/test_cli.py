import csv
import io
import json

import pytest

from permseq.cli import main, parse_int, parse_int_list, parse_selector, SelectorError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_int_accepts_scientific():
    assert parse_int("1e8") == 10**8
    assert parse_int("100_000") == 100000
    assert parse_int_list("1..3,10") == [1, 2, 3, 10]
    assert parse_int_list("1e3..1e6", geometric=True) == [10**3, 10**4, 10**5, 10**6]


@pytest.mark.parametrize("text, pos", [
    ("pabcd:1,3,x,2", 10),
    ("pabcd:1,3,2", 6),
    ("pabcd:1,3,2,2/simple:99", 21),
    ("pabcd:1,3,2,2/weird:1", 14),
    ("bogus:1", 0),
    ("pabcd", 5),
])
def test_selector_errors_carry_position(text, pos):
    with pytest.raises(SelectorError) as info:
        parse_selector(text)
    assert info.value.pos == pos


def test_selector_kinds():
    assert parse_selector("pabcd:2,2,1,3").label == "P(2,2,1,3)"
    assert parse_selector("primecomp").label == "primecomp"
    assert len(parse_selector("fafc:10,8,5,9,9,3").rules) > 1
    g = parse_selector("pabcd:1,3,2,2/ext:0")
    assert g(0) != 0


def test_run_exit_codes(capsys):
    code, out, _ = run(capsys, "run", "--perm", "pabcd:1,3,2,2", "--inverse", "--x0", "44")
    assert code == 0 and "min=44" in out and "length=12" in out
    code, out, _ = run(capsys, "run", "--perm", "primecomp", "--x0", "18")
    assert code == 0 and "length=22" in out
    code, out, _ = run(capsys, "run", "--perm", "pabcd:2,6,5,3", "--x0", "3", "--escape", "1e6")
    assert code == 2 and out.startswith("escaped")
    code, out, _ = run(capsys, "run", "--perm", "pabcd:2,6,5,3", "--x0", "3", "--escape", "1e300",
                       "--step-limit", "50", "--json")
    assert code == 3 and json.loads(out) == {"outcome": "step_limit", "steps": 50}


def test_run_json_elements(capsys):
    code, out, _ = run(capsys, "run", "--perm", "pabcd:2,2,1,3", "--x0", "4", "--json", "--elements")
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "cycle"
    assert sorted(doc["elements"]) == [4, 5, 6, 7, 9]


@pytest.mark.parametrize("argv", [
    ["run", "--perm", "pabcd:1,3,x,2", "--x0", "5"],
    ["run", "--perm", "pabcd:1,3,2,2", "--x0", "1.5"],
    ["run", "--perm", "pabcd:2,4,3,4", "--x0", "5"],
    ["table", "nonsense"],
    ["frobnicate"],
])
def test_usage_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 64


def test_census_formats(capsys, tmp_path):
    args = ["census", "--perm", "pabcd:2,4,3,3", "--x0", "1e4", "--m-floor", "20"]
    code, out, _ = run(capsys, *args, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and ("90", "1972", "93") in {(r["x_min"], r["x_max"], r["length"]) for r in rows}
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, *args, "--format", "json", "--out", str(target))
    doc = json.loads(target.read_text())
    assert code == 0 and out == "" and doc["x0"] == 10**4
    code, out, _ = run(capsys, *args)
    assert out.splitlines()[0].startswith("# P(2,4,3,3): seeds below 10000")


def test_perm_export_round_trip(capsys, tmp_path):
    path = tmp_path / "p.json"
    assert run(capsys, "perm", "export", "--perm", "fafc:10,8,5,9,9,3", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "perm", "validate", "--perm", f"file:{path}")
    assert code == 0 and out.count(", ok") == 2
    direct = parse_selector("fafc:10,8,5,9,9,3")
    loaded = parse_selector(f"file:{path}")
    assert [loaded(x) for x in range(500)] == [direct(x) for x in range(500)]
    code, _, err = run(capsys, "run", "--perm", f"file:{tmp_path / 'missing.json'}", "--x0", "3")
    assert code == 64 and "cannot read file" in err


def test_bounds_floor_and_table(capsys):
    code, out, _ = run(capsys, "bounds", "floor", "--x0", "1e3..1e10", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    code, out, _ = run(capsys, "bounds", "table", "--perm", "pabcd:2,4,3,3", "--m", "1", "--format", "json")
    assert code == 0 and json.loads(out)["rows"][0]["m"] == 1


def test_bounds_reject_other_primes(capsys):
    code, _, err = run(capsys, "bounds", "table", "--perm", "pabcd:2,6,5,3")
    assert code == 1 and "2 and 3" in err


@pytest.mark.parametrize("table, extra", [
    ("floor", ["--perm", "pabcd:1,3,2,2"]),
    ("floor", ["--perm", "pabcd:2,4,3,3"]),
    ("x3", ["--perm", "pabcd:2,4,3,3"]),
    ("x3", ["--perm", "pabcd:1,3,2,2"]),
    ("l1l2", ["--perm", "pabcd:1,3,2,2"]),
    ("l1l2", ["--perm", "pabcd:2,4,3,3"]),
    ("cycles-2433", ["--x0", "1e5"]),
    ("cycles-collatz-simple", []),
    ("cycles-collatz-ext", []),
])
def test_table_check_passes(capsys, table, extra):
    code, out, err = run(capsys, "table", table, "--check", *extra)
    assert code == 0, err
    assert f"check {table}: ok" in err and out


def test_table_x3_value(capsys):
    code, out, _ = run(capsys, "table", "x3", "--perm", "pabcd:2,4,3,3", "--m", "1", "--format", "csv")
    assert code == 0 and round(float(next(csv.DictReader(io.StringIO(out)))["x3"])) == 88
