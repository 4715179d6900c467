from __future__ import annotations

import io as stdio
import json
import subprocess
import sys

import pytest

from modcat import catalog, io
from modcat.cli import run, sweep_checks


def call(argv, stdin: str | None = None, monkeypatch=None, capsys=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", stdio.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin=None: call(argv, stdin, monkeypatch, capsys)


def test_cyclic_charge_pipeline(cli):
    code, text, _ = cli(["metric", "cyclic", "--n", "4", "--sigma", "1/8"])
    assert code == 0
    code, out, _ = cli(["charge"], text)
    assert code == 0
    assert "central charge: (1+i)/√2, exponent 1/8" in out
    assert "tau+: 2*ζ8" in out


def test_double_lagrangian(cli):
    _, text, _ = cli(["double", "--orders", "2"])
    code, out, _ = cli(["lagrangian"], text)
    assert code == 0
    assert out.splitlines()[0] == "lagrangian subcategories: 2"
    assert out.count("order 2 (group Z/2)") == 2


def test_rep_s3_analyze(cli):
    _, text, _ = cli(["fixtures", "dump", "rep_s3"])
    code, out, _ = cli(["analyze"], text)
    assert code == 0
    assert "nilpotent: no" in out.splitlines()
    assert "universal grading group: trivial (1 component)" in out
    assert "modular: no" in out


def test_analyze_is_byte_identical(tmp_path):
    path = tmp_path / "c.toml"
    path.write_text(io.dumps(catalog.fixture("double_z2xz2").payload))
    runs = [
        subprocess.run([sys.executable, "-m", "modcat", "analyze", str(path)], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1] and runs[0]


@pytest.mark.parametrize("name", catalog.fixture_names())
def test_dump_then_validate(cli, name):
    _, text, _ = cli(["fixtures", "dump", name])
    code, out, _ = cli(["validate"], text)
    assert code == 0 and out.startswith("valid:")


def test_fixtures_list_and_check(cli):
    code, out, _ = cli(["fixtures", "list"])
    assert code == 0 and len(out.splitlines()) == len(catalog.fixture_names())
    code, out, _ = cli(["fixtures", "check", "--format", "json"])
    assert code == 0 and json.loads(out) == {"checked": 101, "mismatches": []}


def test_json_analyze(cli):
    _, text, _ = cli(["metric", "hyperbolic", "--orders", "3"])
    code, out, _ = cli(["analyze", "--format", "json"], text)
    data = json.loads(out)
    assert code == 0
    assert data["modular"] is True
    assert data["central_charge"]["exponent"] == "0"
    assert data["tau_plus"]["exact"] == "3"
    assert data["nilpotency_class"] == 1
    assert len(data["lagrangians"]) == 2
    assert [row["prime"] for row in data["sylow"]] == [3]


def test_complement_and_emit(cli):
    _, text, _ = cli(["fixtures", "dump", "z2_s1_4"])
    code, out, _ = cli(["complement"], text)
    assert code == 0
    assert "central charge: 1, exponent 0" in out
    code, emitted, _ = cli(["complement", "--emit"], text)
    assert code == 0
    code, out, _ = cli(["lagrangian"], emitted)
    assert "order 2" in out


def test_decompose(cli):
    _, text, _ = cli(["metric", "cyclic", "--n", "6", "--sigma", "1/12"])
    code, out, _ = cli(["decompose"], text)
    assert code == 0
    assert "p=2: dim 2 {0, 3}" in out and "p=3: dim 3 {0, 2, 4}" in out


def test_grouptheoretical_and_subcats(cli):
    _, text, _ = cli(["fixtures", "dump", "double_z3"])
    code, out, _ = cli(["grouptheoretical", "--format", "json"], text)
    assert code == 0 and json.loads(out)["witness"]["dim"] == 3
    code, out, _ = cli(["subcats", "--format", "json"], text)
    rows = json.loads(out)
    assert len(rows) == 6
    assert sum(r["lagrangian"] for r in rows) == 2


def test_metric_constructors(cli, tmp_path):
    code, a, _ = cli(["metric", "gram", "--orders", "2", "2", "--diagonal", "1/4", "1/4"])
    assert code == 0
    (tmp_path / "a.toml").write_text(a)
    code, s, _ = cli(["metric", "direct-sum", str(tmp_path / "a.toml"), str(tmp_path / "a.toml")])
    assert code == 0
    code, out, _ = cli(["charge"], s)
    assert "exponent 1/2" in out
    code, out, _ = cli(["metric", "gram", "--orders", "2", "2", "--diagonal", "1/2", "1/2", "--off", "0,1=1/2"])
    assert code == 0


def test_sweep_command(cli):
    code, out, _ = cli(["sweep", "--order-max", "12"])
    assert code == 0 and out.splitlines()[-1] == "all checks passed"
    for M in catalog.sweep(9):
        assert sweep_checks(M) == []


def test_exit_codes(cli, tmp_path):
    code, _, err = cli(["metric", "cyclic", "--n", "4", "--sigma", "1/3"])
    assert code == 1 and err.startswith("error:")
    assert cli(["bogus"])[0] == 2
    assert cli(["sweep"])[0] == 2
    assert cli(["analyze", str(tmp_path / "missing.toml")])[0] == 2
    assert cli(["fixtures", "dump"])[0] == 2
    bad = tmp_path / "bad.toml"
    bad.write_text('orders = [2]\n[q]\n"0" = "0"\n"1" = "x"\n')
    code, _, err = cli(["validate", str(bad)])
    assert code == 1 and f"{bad}:4:" in err
    _, text, _ = cli(["fixtures", "dump", "rep_s3"])
    code, _, err = cli(["grouptheoretical"], text)
    assert code == 1


def test_validate_reports_invalid_category(cli):
    text = io.dumps(catalog.rep_s3()).replace("V = 2", "V = 3")
    code, out, _ = cli(["validate"], text)
    assert code == 1 and out.startswith("invalid:")


def test_cap_is_named(cli, monkeypatch):
    monkeypatch.setenv("MODCAT_MAX_RANK", "2")
    _, text, _ = cli(["fixtures", "dump", "rep_s3"])
    code, _, err = cli(["subcats"], text)
    assert code == 1 and "MODCAT_MAX_RANK" in err
