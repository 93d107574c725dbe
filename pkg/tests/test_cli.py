"""CLI and system-file format: round trips, subcommands, exit codes,
deterministic machine reports."""

import json
import subprocess
import sys

import pytest

from relpos import sysfile
from relpos.catalog import build_gp3, build_gp4
from relpos.cli import main
from relpos.gaussian import GQ
from relpos.sampling import random_system
from relpos.system import SubspaceSystem


def run_cli(args, stdin_text=None, capsys=None):
    """Run main() in-process, capturing stdout."""
    import io
    from contextlib import redirect_stdout, redirect_stderr

    old_stdin = sys.stdin
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    out = io.StringIO()
    err = io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = main(args)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()


def test_sysfile_roundtrip_bytes():
    import random

    rng = random.Random(5)
    s = random_system(rng, 4, 3)
    text = sysfile.system_to_text(s, metadata={"origin": "test"})
    parsed = sysfile.parse(text)
    assert sysfile.render(parsed) == text
    assert parsed.to_system() == s


def test_sysfile_float_roundtrip():
    s = build_gp3(9).to_float()
    text = sysfile.system_to_text(s)
    back = sysfile.parse(text).to_system()
    assert back.ambient_dim == 2
    assert back.dims() == (1, 1, 1)


def test_sysfile_rejects_garbage():
    from relpos.errors import ParseError

    with pytest.raises(ParseError):
        sysfile.parse("nonsense\n")
    with pytest.raises(ParseError):
        sysfile.parse("relpos-system 1\nfield gaussian-rational\nambient 2\nsubspace E1 dim 1\n1 2 3\n")


def test_catalog_build_and_defect_pipe():
    code, out, _ = run_cli(["catalog", "build", "gp4:S(2k+1,2).k=1"])
    assert code == 0
    assert "relpos-system 1" in out
    code, out2, _ = run_cli(["defect", "-"], stdin_text=out)
    assert code == 0
    assert "defect: 2" in out2


def test_defect_json_deterministic():
    _, sysout, _ = run_cli(["catalog", "build", "gp4:S3(2k,-1).k=2"])
    code1, out1, _ = run_cli(["--json", "defect", "-"], stdin_text=sysout)
    code2, out2, _ = run_cli(["--json", "defect", "-"], stdin_text=sysout)
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["defect"] == "-1"
    assert rep["consistency"] is True


def test_decompose_cli():
    _, sysout, _ = run_cli(["catalog", "build", "gp3:9"])
    code, out, _ = run_cli(["--json", "decompose", "-", "--seed", "7"], stdin_text=sysout)
    assert code == 0
    rep = json.loads(out)
    assert rep["component_count"] == 1
    assert rep["certified"] is True
    assert rep["seed"] == 7


def test_isom_cli(tmp_path):
    a = tmp_path / "a.sys"
    b = tmp_path / "b.sys"
    _, text_a, _ = run_cli(["catalog", "build", "example:7"])
    _, text_b, _ = run_cli(["catalog", "build", "example:8"])
    a.write_text(text_a)
    b.write_text(text_b)
    code, out, _ = run_cli(["--json", "isom", str(a), str(b)])
    assert code == 0
    assert json.loads(out)["status"] == "not_isomorphic"
    code, out, _ = run_cli(["--json", "isom", str(a), str(a)])
    assert code == 0
    assert json.loads(out)["status"] == "isomorphic"


def test_coxeter_cli_roundtrip():
    _, sysout, _ = run_cli(["catalog", "build", "gp3:8"])
    code, plus_text, _ = run_cli(["coxeter", "plus", "-"], stdin_text=sysout)
    assert code == 0
    s = sysfile.system_from_text(plus_text)
    assert s.ambient_dim == 2
    code, out, _ = run_cli(["--json", "coxeter", "duality", "-"], stdin_text=sysout)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_diagram_cli():
    _, sysout, _ = run_cli(["catalog", "build", "example:7"])
    code, out, _ = run_cli(["--json", "diagram", "-"], stdin_text=sysout)
    assert code == 0
    rep = json.loads(out)
    assert rep["n"] == 4


def test_angles_cli():
    _, sysout, _ = run_cli(["catalog", "build", "two:3"])
    code, out, _ = run_cli(["--json", "angles", "-"], stdin_text=sysout)
    assert code == 0
    rep = json.loads(out)
    assert rep["multiplicities"]["(C;C,C)"] == 1


def test_toeplitz_cli():
    code, out, _ = run_cli(["--json", "toeplitz", "regions", "--alpha", "1/2"])
    assert code == 0
    assert json.loads(out)["defect"] == "-2/3"
    code, out, _ = run_cli(
        ["--json", "toeplitz", "index", "--symbol", "block=1; k:1=[[1]]"]
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["index"] == -1
    code, out, _ = run_cli(
        ["--json", "toeplitz", "defect", "--symbol", "block=1; k:1=[[1]]"]
    )
    assert code == 0
    assert json.loads(out)["defect"] == "-1/3"
    code, out, _ = run_cli(
        ["--json", "toeplitz", "exotic", "--gamma", "2", "--N", "8"]
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["defect_estimate"] == "1"
    assert rep["not_operator_system"] is True


def test_parse_error_exit_code():
    code, _, err = run_cli(["catalog", "build", "gp4:bogus"])
    assert code == 2
    assert "parse error" in err
    code, _, err = run_cli(["defect", "-"], stdin_text="garbage\n")
    assert code == 2


def test_boundary_alpha_exit_code():
    code, _, err = run_cli(["toeplitz", "regions", "--alpha", "1"])
    assert code == 2


def test_verify_subcommand():
    code, out, _ = run_cli(["--json", "verify", "gp-range"])
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert rep["checked"] == 53


def test_decompose_reports_byte_identical():
    _, sysout, _ = run_cli(["catalog", "build", "example:6"])
    code1, out1, _ = run_cli(["--json", "decompose", "-", "--seed", "3"], stdin_text=sysout)
    code2, out2, _ = run_cli(["--json", "decompose", "-", "--seed", "3"], stdin_text=sysout)
    assert code1 == code2 == 0
    assert out1 == out2


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "relpos.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "relpos" in proc.stdout
