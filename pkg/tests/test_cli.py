import json

import pytest

from maxclass.cli import main
from maxclass.constructions import ConstructionSpec, build
from maxclass.scalars import PrimeField
from maxclass.tableio import load_spec, parse_export


def write_spec(tmp_path, name, obj):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(obj))
    return str(path)


def prime(p):
    return {"kind": "prime", "p": p}


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_build_round_trip(tmp_path, capsys):
    spec = write_spec(tmp_path, "qa", {"field": prime(5), "algebra": {"name": "q_algebra", "q": 5}, "N": 40})
    out = tmp_path / "qa.txt"
    code, _ = run(capsys, "build", "--spec", spec, "--out", str(out), "--full-table")
    assert code == 0
    table, _ = parse_export(out.read_text())
    assert table == load_spec(spec)[0]
    assert "6 2 2" in out.read_text().splitlines()


def test_build_m2_entries(capsys):
    code, cap = run(capsys, "build", "--algebra", "m2", "--p", "5", "--max-weight", "50")
    assert code == 0
    lines = cap.out.splitlines()
    entries = lines[lines.index("entries:") + 1:]
    # [e_i e_2] = e_{i+2} is inside the truncation for 3 <= i <= N - 2
    assert len(entries) == 46
    assert all(line.split()[1:] == ["2", "1"] for line in entries)


def test_build_m_is_zero(capsys):
    code, cap = run(capsys, "build", "--algebra", "m", "--p", "3", "--max-weight", "20")
    lines = cap.out.splitlines()
    assert code == 0 and all(line.endswith(" 0") for line in lines[lines.index("entries:") + 1:])


def test_build_type1_round_trip(tmp_path, capsys):
    spec = write_spec(tmp_path, "c", {"field": prime(5), "algebra": {"name": "custom", "delta": ["inf", 0, 0, 0]}, "N": 6})
    out = tmp_path / "c.txt"
    assert run(capsys, "build", "--spec", spec, "--out", str(out))[0] == 0
    assert parse_export(out.read_text())[0] == load_spec(spec)[0]


def test_build_errors(tmp_path, capsys):
    bad = write_spec(tmp_path, "bad", {"field": prime(5), "algebra": {"name": "m"}, "N": 10, "colour": 1})
    assert run(capsys, "build", "--spec", bad)[0] == 2
    assert run(capsys, "build", "--algebra", "L_lambda", "--lambda", "1", "--p", "5", "--max-weight", "20")[0] == 3
    assert run(capsys, "build", "--algebra", "m", "--p", "9", "--max-weight", "20")[0] == 2


def test_check_exit_codes(tmp_path, capsys):
    assert run(capsys, "check", "--algebra", "L_lambda", "--lambda", "2", "--p", "3", "--max-weight", "200")[0] == 0
    custom = write_spec(tmp_path, "c", {"field": prime(5), "algebra": {"name": "custom", "mu": [1, 0]}, "N": 6})
    code, cap = run(capsys, "check", "--spec", custom)
    assert code == 1 and "FAIL at (1, 2, 3)" in cap.out
    code, cap = run(capsys, "check", "--algebra", "witt", "--p", "5", "--max-weight", "30")
    assert code == 1 and "L_6" in cap.out


def test_check_structured(capsys):
    code, cap = run(capsys, "check", "--algebra", "witt", "--p", "5", "--max-weight", "30", "--format", "structured")
    obj = json.loads(cap.out)
    assert code == 1 and obj["maximal_class"] == {"ok": False, "weight": 6}


def test_analyze(tmp_path, capsys):
    code, cap = run(capsys, "analyze", "--algebra", "q_algebra", "--q", "5", "--p", "5",
                    "--max-weight", "40", "--which", "constituents", "--format", "structured")
    obj = json.loads(cap.out)
    assert code == 0 and obj["first_length"] == 6
    assert {c["length"] for c in obj["body"]} == {5}

    out = tmp_path / "lift.txt"
    code, _ = run(capsys, "analyze", "--algebra", "m", "--p", "5", "--max-weight", "40", "--which", "lift", "--out", str(out))
    assert code == 0
    assert parse_export(out.read_text())[0] == build(ConstructionSpec("a", PrimeField(5), 40))

    assert run(capsys, "analyze", "--algebra", "m2", "--p", "5", "--max-weight", "40", "--which", "constituents")[0] == 4
    assert run(capsys, "analyze", "--algebra", "q_algebra", "--q", "5", "--p", "5",
               "--max-weight", "40", "--which", "lift")[0] == 4
    code, cap = run(capsys, "analyze", "--algebra", "a", "--p", "5", "--max-weight", "30", "--which", "derive")
    assert code == 0 and parse_export(cap.out)[0] == build(ConstructionSpec("m", PrimeField(5), 30))


def test_compare(tmp_path, capsys):
    f3 = {"kind": "prime", "p": 3}
    L = lambda lam: {"field": f3, "algebra": {"name": "L_lambda", "lambda": lam}, "N": 60}
    L1, L0, L2 = (write_spec(tmp_path, f"L{x}", L(x)) for x in (1, 0, 2))
    m2 = write_spec(tmp_path, "m2", {"field": f3, "algebra": {"name": "m2"}, "N": 60})
    assert run(capsys, "compare", L1, m2)[0] == 0
    code, cap = run(capsys, "compare", L0, L2)
    assert code == 1 and "(5, 2)" in cap.out
    qt = write_spec(tmp_path, "qt", {"field": prime(5), "algebra": {"name": "q_algebra", "q": 5}, "N": 60})
    qm = write_spec(tmp_path, "qm", {"field": prime(5), "algebra": {"name": "q_algebra", "q": 5, "method": "matrix"}, "N": 60})
    assert run(capsys, "compare", qt, qm)[0] == 0
    assert run(capsys, "compare", L1, qt)[0] == 2


def test_classify_jobs_identical(tmp_path, capsys):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"r{jobs}.txt"
        code, _ = run(capsys, "classify", "--p", "5", "--max-weight", "30", "--jobs", jobs, "--out", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_classify_bound(capsys):
    code, cap = run(capsys, "classify", "--p", "5", "--max-weight", "40", "--max-nodes", "10", "--certify", "0")
    assert code == 5 and cap.out


@pytest.mark.parametrize("argv", [["classify", "--p", "4", "--max-weight", "20"], ["classify", "--p", "5"]])
def test_classify_input_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 2
