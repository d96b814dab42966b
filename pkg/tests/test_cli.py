import json
from pathlib import Path

import pytest

from twisted_codes.catalog import by_name
from twisted_codes.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, cli_run

SYSTEMS = Path(__file__).resolve().parents[1] / "systems"


def run(capsys, *argv):
    code = cli_run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate_twisted_c2(capsys):
    code, out = run(capsys, "validate", str(SYSTEMS / "c2_f3_twisted.json"))
    assert code == EXIT_OK
    assert json.loads(out)["violations"] == []


def test_validate_rejects_bad_cocycle(tmp_path, capsys):
    data = by_name("F4[C2;frob]").system.to_json()
    data["alpha"] = [[1, 1], [1, 2]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "validate", str(path))
    assert code == EXIT_INPUT
    assert json.loads(out)["violations"]


def test_bound_all_principal_f2_s3(capsys):
    code, out = run(capsys, "bound", "--system", str(SYSTEMS / "f2_s3.json"), "--all-principal")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert rows and all(r["d"] * r["k"] >= 6 for r in rows)


def test_missing_input_and_budget(capsys):
    assert run(capsys, "ring-info")[0] == EXIT_INPUT
    assert run(capsys, "ring-info", "--builtin", "nonsense")[0] == EXIT_INPUT
    assert run(capsys, "ideals", "--builtin", "F3[C6]", "--budget", "10")[0] == EXIT_BUDGET


def test_abelian_reports_stall_on_twisted_c4(capsys):
    code, out = run(capsys, "abelian", "--system", str(SYSTEMS / "f3_c4_negacyclic.json"), "--side", "left")
    assert code == EXIT_VIOLATION
    assert json.loads(out)["stalled"] == 2


def test_abelian_verifies_untwisted_chain(capsys):
    code, out = run(capsys, "abelian", "--builtin", "F2[S3]", "--verify")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert rows and all(r["verified"] for r in rows)


def test_checkable_with_verify(capsys):
    code, out = run(capsys, "checkable", "--builtin", "F2[C4]", "--verify")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["all_checkable"] and rep["rechecked_witnesses"] == 5


def test_search_and_text_format(capsys):
    code, out = run(capsys, "search", "--builtin", "F3[C4]", "--target", "4,2,2", "--format", "text")
    assert code == EXIT_OK and "target_found: True" in out


@pytest.mark.parametrize("cmd", ["ring-info", "hat-report", "ideals", "distance", "extremal"])
def test_subcommands_run(cmd, capsys):
    code, out = run(capsys, cmd, "--builtin", "F3^a[C2]")
    assert code == EXIT_OK
    json.loads(out)


def test_reports_are_deterministic(capsys):
    args = ["bound", "--builtin", "F3[S3]", "--elements", "--sample", "20", "--seed", "7"]
    assert run(capsys, *args) == run(capsys, *args)
