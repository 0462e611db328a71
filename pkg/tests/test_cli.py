import json
import subprocess
import sys
from pathlib import Path

import pytest

from opertorsor import formats
from opertorsor.cli import main

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
from run_case import run_case  # noqa: E402

CASES = json.loads((GOLDEN / "cases.json").read_text())


def render(args):
    code, out, err = run_case(args)
    return f"[exit {code}]\n" + (out if code == 0 else err)


@pytest.mark.parametrize("name,args", CASES, ids=[c[0] for c in CASES])
def test_golden(name, args):
    expected = (GOLDEN / "expected" / f"{name}.txt").read_text()
    assert render(args) == expected


def test_every_subcommand_is_covered():
    ops = {(a[0], a[1]) for _, a in CASES if a[0] in ("aut", "oper")}
    assert ops >= {("aut", x) for x in ("mul", "inv", "project", "decompose", "kernel")}
    assert ops >= {("oper", x) for x in ("canonicalize", "is-oper", "change-coords", "schwarzian", "cocycle-check")}
    assert any(a[0] == "cocycle" for _, a in CASES)


def test_deterministic():
    for _, args in CASES[::5]:
        assert render(args) == render(args)


def test_error_lines_are_prefixed():
    for _, args in CASES:
        code, out, err = run_case(args)
        if code:
            assert code in (2, 3)
            assert err.count("\n") == 1 and err.startswith("error[")
            assert out == ""


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["aut", "frobnicate", "[0, 1]"])
    assert exc.value.code == 2
    assert "error[usage]" in capsys.readouterr().err


def test_series_json_fixed_point():
    code, out, _ = run_case(["aut", "inv", "[0, 3, \"1/2\", -1]", "--json"])
    assert code == 0
    again = formats.dumps(formats.series_record(formats.parse_series(json.loads(out))))
    assert again + "\n" == out
    code, out2, _ = run_case(["aut", "mul", out.strip(), "[0, 1, 0, 0]", "--json"])
    assert out2 == out


def test_canonical_json_fixed_point(tmp_path):
    code, out, _ = run_case(["oper", "canonicalize", "sl3_conn.json", "--json"])
    doc = json.loads(out)
    doc.pop("gauge")
    omega = formats.parse_canonical(doc, GOLDEN / "inputs")
    assert formats.canonical_record(omega, doc["lie"], omega.chart) == doc
    # feeding the result back through an identity coordinate change is a no-op
    path = tmp_path / "omega.json"
    path.write_text(json.dumps(doc))
    code, out2, _ = run_case(["oper", "change-coords", str(path), "t", "--json"])
    rec = json.loads(out2)
    assert rec["coefficients"] == doc["coefficients"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "opertorsor", "aut", "inv", "[0, 2, 0]"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "1/2·z\n"
    proc = subprocess.run(
        [sys.executable, "-m", "opertorsor", "aut", "inv", "[1, 2, 0]"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 3 and proc.stderr.startswith("error[not-automorphism]")
