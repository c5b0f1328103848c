import json

import pytest

from trigeom.cli import (EXIT_MISMATCH, EXIT_NOT_ORIENTABLE, EXIT_NOT_THIN, EXIT_OK, EXIT_PARAMS,
                         EXIT_SCALE, build_parser, main)
from trigeom.incidence import from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_space_and_complex(capsys, tmp_path):
    code, out, err = run(capsys, "build", "pg", "2", "2")
    assert code == EXIT_OK and len(from_json(out)) == 14
    dest = tmp_path / "d.json"
    code, out, err = run(capsys, "build", "ag", "2", "3", "--delta", "--out", str(dest))
    assert code == EXIT_OK and "108 elements, 1 component" in err
    assert len(from_json(dest.read_text())) == 108


def test_bad_parameters(capsys):
    for argv in (["build", "ag", "2", "2"], ["build", "pg", "2", "6"], ["check", "uh", "9"],
                 ["build", "zz", "1"]):
        code, _, err = run(capsys, *argv)
        assert code == EXIT_PARAMS and err.startswith("error:")


def test_scale_bound(capsys, monkeypatch):
    code, _, err = run(capsys, "--max-elements", "50", "check", "pg", "2", "2")
    assert code == EXIT_SCALE and "63 elements" in err
    monkeypatch.setenv("TRIGEOM_MAX_ELEMENTS", "50")
    code, _, _ = run(capsys, "export", "ag", "2", "3", "--dot")
    assert code == EXIT_SCALE


def test_check_text_and_json(capsys):
    code, out, _ = run(capsys, "check", "kv", "3", "--connected", "--rc")
    assert code == EXIT_OK
    assert "connected: false (components: 6)" in out and "RC: false" in out
    code, out, _ = run(capsys, "check", "pg", "2", "2", "--orders", "--json")
    assert json.loads(out) == {"aut_order": 168, "cor_order": 1008}


def test_check_expect(capsys):
    code, out, _ = run(capsys, "check", "ag", "2", "3", "--all", "--expect", "classical")
    assert code == EXIT_OK and "MISMATCH" not in out
    assert "flag-transitive: true (orbit 432 of 432 chambers)" in out


def test_check_expect_unknown_row(capsys):
    code, _, err = run(capsys, "check", "uh", "2", "--rc", "--expect", "classical")
    assert code == EXIT_MISMATCH and "no expected row" in err


def test_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "ag", "2", "3", "--hypermap", "--out", str(tmp_path / "h.json"))
    assert code == EXIT_OK and out.strip() == "D=216, V=36, E=36, F=36, chi=-108, genus=55"
    assert len(json.loads((tmp_path / "h.json").read_text())["sigma"]) == 216
    assert run(capsys, "export", "ag", "2", "4", "--hypermap")[0] == EXIT_NOT_THIN
    assert run(capsys, "export", "pg", "2", "2", "--hypermap")[0] == EXIT_NOT_ORIENTABLE
    code, out, _ = run(capsys, "export", "kv", "4", "--dot")
    assert code == EXIT_OK and out.startswith("graph")


def test_bounded_suite(capsys, tmp_path):
    dest = tmp_path / "suite.json"
    code, out, _ = run(capsys, "--max-elements", "400", "suite", "--json", str(dest))
    assert code == EXIT_OK and out.rstrip().endswith("suite: PASS")
    data = json.loads(dest.read_text())
    assert data["passed"]
    status = {r["instance"]: r["status"] for r in data["instances"]}
    assert status["PG(2,2)"] == "pass" and status["UH(4)"] == "skipped: scale"


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


@pytest.mark.slow
def test_full_suite(capsys):
    code, out, _ = run(capsys, "--max-elements", "100000", "suite")
    assert code == EXIT_OK, out
    assert "skipped" not in out and out.count("  pass") >= 12 + 12
