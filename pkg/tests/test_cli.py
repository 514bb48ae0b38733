import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from rch import catalog
from rch.cli import EXIT_CAP, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, run

SCHEMA = json.loads((resources.files("rch") / "schema" / "report.schema.json").read_text(encoding="utf-8"))


def fixture(filename: str) -> str:
    return str(catalog.fixture_path(filename))


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def invoke_json(*argv):
    code, text = invoke(*argv, "--format", "json")
    report = json.loads(text)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_poly_prints_the_theta_bracket():
    code, text = invoke("poly", "--n", "3", fixture("theta-pm.rg"))
    assert code == EXIT_OK
    assert "q^-2 + 2*q^-1 + 2 + q" in text


def test_filtered_homology_of_k33_torus_blowup():
    code, report = invoke_json("homology", "--mode", "filtered", "--n", "4", "--blowup", fixture("k33.rg"))
    assert code == EXIT_OK
    assert report["result"]["sequence"] == [0, 0, 24, 48, 24, 24, 48, 24, 0, 0]


def test_catalog_check_passes_for_k33_torus():
    code, report = invoke_json("catalog", "check", "K33-torus")
    assert code == EXIT_OK
    assert all(row["ok"] for row in report["result"]["checks"])


def test_catalog_list_names_every_fixture():
    code, report = invoke_json("catalog", "list")
    assert code == EXIT_OK
    assert [row[0] for row in report["result"]["examples"]] == catalog.names()


@pytest.mark.parametrize(
    "argv",
    [
        ("poly", "--n", "3", "--two-var", "theta-pm.rg"),
        ("penrose", "k4s.rg"),
        ("homology", "--mode", "bigraded", "--n", "3", "k33-pm.rg"),
        ("ss", "--n", "3", "--psi", "k33-pm.rg"),
        ("ss", "--n", "3", "--page", "2", "k33-pm.rg"),
        ("tfcp", "--n", "4", "k4t.rg"),
        ("tfcp", "--interpolate", "theta.rg"),
        ("tsharp", "--n", "2", "theta2-pm-b.rg"),
        ("oracle", "colorings", "--n", "3", "k33-pm.rg"),
        ("oracle", "edge3", "petersen.rg"),
        ("oracle", "flows", "--n", "4", "k33.rg"),
        ("validate", "loop.rg"),
    ],
)
def test_reports_validate_against_the_schema(argv):
    *options, filename = argv
    code, report = invoke_json(*options, fixture(filename))
    assert code == EXIT_OK
    assert report["command"] == argv[0]


def test_text_output_for_every_command_is_nonempty():
    code, text = invoke("ss", "--n", "2", fixture("theta2-pm-b.rg"))
    assert code == EXIT_OK and text.strip()


def test_duplicate_half_edge_exits_with_validation_code(tmp_path):
    bad = tmp_path / "bad.rg"
    bad.write_text("graph bad\nedge e1 a b\nvertex a: e1.0, e1.0\nvertex b: e1.1\n", encoding="utf-8")
    code, _ = invoke("validate", str(bad))
    assert code == EXIT_INVALID


def test_missing_file_exits_with_validation_code(tmp_path):
    code, _ = invoke("validate", str(tmp_path / "absent.rg"))
    assert code == EXIT_INVALID


def test_penrose_of_a_matched_diagram_is_rejected():
    code, _ = invoke("penrose", fixture("theta-pm.rg"))
    assert code == EXIT_INVALID


def test_cap_breach_exits_with_cap_code():
    code, _ = invoke("homology", "--mode", "filtered", "--n", "4", "--blowup", "--max-states", "16", fixture("k33.rg"))
    assert code == EXIT_CAP


def test_generator_cap_breach_exits_with_cap_code():
    code, _ = invoke(
        "homology", "--mode", "filtered", "--n", "4", "--blowup", "--max-generators", "10", fixture("k33.rg")
    )
    assert code == EXIT_CAP


def test_catalog_mismatch_exits_with_mismatch_code(monkeypatch):
    example = catalog.get("theta2-pm-a")
    wrong = catalog.Expectation("n_color_number", (("n", 2),), 99, catalog.DERIVED)
    monkeypatch.setattr(example, "expected", [wrong])
    code, _ = invoke("catalog", "check", "theta2-pm-a")
    assert code == EXIT_MISMATCH


def test_unknown_catalog_name_is_invalid():
    code, _ = invoke("catalog", "show", "nope")
    assert code == EXIT_INVALID


def test_threads_environment_variable_is_accepted(monkeypatch):
    monkeypatch.setenv("RCH_THREADS", "3")
    code, _ = invoke("validate", fixture("loop.rg"))
    assert code == EXIT_OK


def test_module_entry_point_runs():
    completed = subprocess.run(
        [sys.executable, "-m", "rch", "poly", "--n", "2", fixture("theta2-pm-a.rg")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert completed.returncode == EXIT_OK
    assert completed.stdout.strip()
