import io
import json
import subprocess
import sys

import pytest

from vbderiv.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_validate_passing_fixture():
    code, text = run("validate", "aff1")
    assert code == 0
    assert text.splitlines()[-1] == "2 checks, 0 failed"


def test_validate_broken_jacobi_names_the_triple():
    code, text = run("validate", "broken_jacobi")
    assert code == 1
    assert "FAIL  broken/jacobi  [(e1, e2, e3): -e3]" in text


@pytest.mark.parametrize("fixture", ["broken_anchor", "broken_nonflat", "broken_vb"])
def test_validate_other_broken_fixtures(fixture):
    assert run("validate", fixture)[0] == 1


def test_malformed_expression_exits_2_with_position(tmp_path, capsys):
    f = tmp_path / "bad.alg"
    f.write_text("algebroid a\n  base x\n  frame e\n  anchor e = x +* 2\nend\n")
    code, text = run("validate", str(f))
    assert code == 2 and text == ""
    assert "line 4, column 17" in capsys.readouterr().err


def test_missing_file_and_unresolved_target(capsys):
    assert run("validate", "no-such-fixture")[0] == 2
    assert run("check-im", "tc-tm0", "nowhere")[0] == 2
    assert run("check-im", "tc-tm0", "tc")[0] == 2
    assert "has kind vb" in capsys.readouterr().err


def test_diff_of_eps1():
    code, text = run("diff", "aff1", "eps1")
    assert code == 0
    assert text == "d(eps1), degree 1\nvalue [e2] = e2\n"


def test_diff_of_identity_with_d2_check():
    code, text = run("diff", "aff1", "id", "--check-d2")
    assert code == 0
    assert text.splitlines() == ["d(id), degree 2", "value [e1, e2] = e2", "d²=0: pass"]


def test_diff_records():
    code, text = run("diff", "tm", "xe", "--format", "records")
    assert code == 0
    records = [json.loads(line) for line in text.splitlines()]
    assert records == [{"args": ["e"], "expression": "-e", "table": "value"},
                       {"args": [], "expression": ["x"], "table": "symbol"}]


def test_diff_degree_cap(capsys):
    assert run("diff", "aff1", "id", "--degree-cap", "1")[0] == 2
    assert "degree" in capsys.readouterr().err


def test_check_im_internal_triple_passes():
    code, text = run("check-im", "tangent-tm", "inner")
    assert code == 0
    assert [line.split()[1] for line in text.splitlines()[:-1]] == [
        "sigma", "hom", "core-anchor", "psi", "psi-c", "fat-derivation"]


def test_check_im_mismatch_fails_sigma_only():
    code, text = run("check-im", "broken_triple", "mismatch")
    assert code == 1
    fails = [line for line in text.splitlines() if line.startswith("FAIL")]
    assert len(fails) == 1 and fails[0].startswith("FAIL  sigma")


def test_check_im_pde_residual():
    code, text = run("check-im", "tc-tm0", "vx", "--format", "records")
    assert code == 1
    records = {r["check"]: r for r in map(json.loads, text.splitlines())}
    assert records["pde2"]["status"] == "fail"
    assert records["pde2"]["witness"] == "alpha=e, A=1, B=1: 1"
    assert records["pde1"]["status"] == records["pde3"]["status"] == "pass"
    assert run("check-im", "tc-tm0", "const")[0] == 0


def test_suite_filter_and_records():
    code, text = run("suite", "--fixture", "tangent-aff1", "--format", "records")
    assert code == 0
    records = [json.loads(line) for line in text.splitlines()]
    assert records and all(r["check"].startswith("tangent-aff1/") for r in records)
    assert all(set(r) == {"check", "status", "witness"} for r in records)


def test_suite_fixture_must_exist():
    assert run("suite", "--fixture", "nowhere")[0] == 2


def test_suite_reports_broken_fixture():
    code, text = run("suite", "--fixture", "broken_jacobi")
    assert code == 1


def test_suite_output_is_byte_stable():
    first = run("suite", "--fixture", "tc-tmx", "--fixture", "aff1", "--seed", "3")
    second = run("suite", "--fixture", "tc-tmx", "--fixture", "aff1", "--seed", "3")
    assert first == second and first[0] == 0


def test_fixtures_listing():
    code, text = run("fixtures")
    assert code == 0
    assert "aff1" in text.split() and "broken_jacobi" in text.split()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vbderiv.cli", "validate", "aff1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith("2 checks, 0 failed\n")
