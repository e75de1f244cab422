from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from lch.cli import run_command

DATA = Path(__file__).parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out)


def test_homology_chekanov():
    code, data = run_json("homology", "--fixture", "chekanov")
    assert code == 0
    assert set(data) == {"command", "input", "result", "diagnostics"}
    assert data["result"]["dims"] == {"-2": 1, "1": 1, "2": 1}
    assert data["result"]["profiles"][0]["augmentation"] == {"q7": 1, "q8": 1, "q9": 1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_solve_non_spun_torus(n):
    code, data = run_json("solve", "--fixture", f"non-spun-torus:{n}")
    assert code == 0
    assert data["result"]["polynomials"] == [f"1 + 2t^{n} + t^{n + 1}"]


def test_solve_constraint_can_empty_the_result():
    code, data = run_json("solve", "--fixture", "stabilized-spheres", "--constraint", "2=3")
    assert code == 1 and data["result"] is None
    assert data["diagnostics"] == ["no Poincare polynomial is consistent with the data"]


def test_validate_broken_file():
    code, out, err = run("validate", str(DATA / "broken.dga"))
    assert code == 1
    assert "line 7" in err


def test_exit_codes():
    assert run("validate", "--fixture", "chekanov")[0] == 0
    assert run("frobnicate")[0] == 2
    assert run("homology", "--fixture", "nope")[0] == 2
    assert run("homology", "/no/such/file.dga")[0] == 2
    assert run("twocopy", "--fixture", "chekanov")[0] == 2
    assert run("homology")[0] == 2
    assert run("solve", "--constraint", "x")[0] == 2


def test_parse_error_is_usage(tmp_path):
    p = tmp_path / "bad.dga"
    p.write_text("gen a x\n")
    code, _, err = run("validate", str(p))
    assert code == 2 and "line 1" in err


def test_integral_homology_needs_good_dga():
    assert run("homology", "--fixture", "chekanov", "--ring", "Z")[0] == 1
    code, data = run_json("homology", "--fixture", "flying-saucer:3", "--ring", "Z")
    assert code == 0 and data["result"]["dims"] == {"3": 1}


def test_pcpoly_and_duality():
    code, data = run_json("pcpoly", "--fixture", "chekanov")
    assert code == 0 and data["result"] == {"polynomials": ["t^-2 + t + t^2"],
                                            "sphere_duality": [True]}
    code, data = run_json("duality", "--fixture", "super-spun:4,2")
    assert code == 0
    code, data = run_json("arnold", "--fixture", "chekanov")
    assert code == 0


def test_spin_times():
    code, data = run_json("spin", "--fixture", "chekanov", "--times", "2")
    assert code == 0
    (spun,) = data["result"]["spun"]
    assert spun["times"] == 2
    assert spun["dims"] == {"-2": 1, "-1": 2, "0": 1, "1": 1, "2": 3, "3": 3, "4": 1}


def test_twocopy_fixture_and_seed():
    code, data = run_json("twocopy", "--fixture", "flying-saucer-two-copy")
    assert code == 0
    assert data["result"]["acyclic"] and data["result"]["exact"]
    assert data["result"]["duality_holds"]
    code, data = run_json("twocopy", "--seed", "7")
    assert code == 0 and data["result"]["acyclic"]


@pytest.mark.parametrize("argv", [
    ("homology", "--fixture", "chekanov"),
    ("solve", "--fixture", "non-spun-torus"),
    ("twocopy", "--seed", "3"),
    ("duality", "--seed", "11"),
    ("augs", "chekanov"),
])
def test_json_byte_stable(argv):
    first = run(*argv, "--json")
    second = run(*argv, "--json")
    assert first == second and first[1]


def test_human_output_is_a_table():
    code, out, _ = run("arnold", "--fixture", "flying-saucer:2")
    lines = out.splitlines()
    assert code == 0 and lines[0].split()[0] == "m" and set(lines[1]) <= {"-", " "}


def test_fixture_path_override(tmp_path, monkeypatch):
    (tmp_path / "chekanov.dga").write_text("ring Z2\ngen a 3\n")
    monkeypatch.setenv("LCH_FIXTURES", str(tmp_path))
    code, data = run_json("homology", "--fixture", "chekanov")
    assert code == 0 and data["result"]["dims"] == {"3": 1}
