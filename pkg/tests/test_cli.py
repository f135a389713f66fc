"""CLI behavior: exit codes, JSON shape, golden outputs."""

import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from gha import schemas
from gha.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestNormalize:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "normalize", "-f", "h^2", "-e", "y*x")
        assert code == 0
        assert out.strip() == "x*y + h^2 + (-1)*h"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "--json", "normalize", "-f", "h^2", "-e", "y*x")
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.NORMALIZE_SCHEMA)
        assert doc["normal_form"] == "x*y + h^2 + (-1)*h"

    def test_commutator_shorthand(self, capsys):
        code, out, _ = run(capsys, "normalize", "-f", "h^2", "-e", "y*x - x*y")
        assert out.strip() == "h^2 + (-1)*h"

    def test_z_definition(self, capsys):
        code, out, _ = run(capsys, "normalize", "-f", "h^2", "-e", "z - (x*y - h)")
        assert out.strip() == "0"


class TestCentral:
    def test_positive(self, capsys):
        code, out, _ = run(capsys, "central", "-f", "zeta(3)*h", "-e", "x^3")
        assert code == 0 and out.strip() == "true"

    def test_negative_shows_commutator(self, capsys):
        code, out, _ = run(capsys, "central", "-f", "zeta(3)*h", "-e", "x")
        assert code == 1
        lines = out.strip().splitlines()
        assert lines[0] == "false"
        assert "[" in lines[1] and "=" in lines[1]

    def test_json_validates(self, capsys):
        code, out, _ = run(capsys, "--json", "central", "-f", "h^2", "-e", "x*y - h")
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.CENTRAL_SCHEMA)
        assert doc["central"] is True and doc["failing"] is None


class TestJsonShapes:
    def test_center(self, capsys):
        _, out, _ = run(capsys, "center", "-f", "h^2")
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.CENTER_SCHEMA)
        assert doc["case"] == "trivial-Cz"

    def test_iso(self, capsys):
        code, out, _ = run(capsys, "iso", "-f1", "h+1", "-f2", "h+5")
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.ISO_SCHEMA)
        assert code == 0 and doc["isomorphic"]

    def test_simples(self, capsys):
        code, out, _ = run(capsys, "--conductor", "3", "simples", "-f", "h^2", "-n", "2")
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.FAMILIES_SCHEMA)
        assert code == 0 and doc["count"] == 5

    def test_build_verify_classify_pipeline(self, capsys, tmp_path):
        desc = {"variant": "nilpotent_x", "zdot": "1", "n": 4}
        code, out, _ = run(capsys, "build", "-f", "zeta(4)*h", "--descriptor", json.dumps(desc))
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, schemas.MODULE_SCHEMA)

        mod_file = tmp_path / "mod.json"
        mod_file.write_text(out)
        code, out, _ = run(capsys, "verify", "-f", "zeta(4)*h", "--module", str(mod_file))
        assert code == 0 and "relations ok" in out

        code, out, _ = run(capsys, "--json", "verify", "-f", "zeta(4)*h", "--module", str(mod_file))
        jsonschema.validate(json.loads(out), schemas.VERIFY_SCHEMA)

        code, out, _ = run(capsys, "classify", "-f", "zeta(4)*h", "--module", str(mod_file))
        got = json.loads(out)
        jsonschema.validate(got, schemas.CLASSIFY_SCHEMA)
        assert code == 0 and got["descriptor"] == desc


class TestExitCodes:
    def test_not_isomorphic_is_one(self, capsys):
        code, out, _ = run(capsys, "iso", "-f1", "2*h", "-f2", "3*h")
        assert code == 1
        assert json.loads(out)["isomorphic"] is False

    def test_parse_error_is_two(self, capsys):
        code, _, err = run(capsys, "normalize", "-f", "h^^2", "-e", "x")
        assert code == 2 and "error" in err

    def test_identity_f_is_two(self, capsys):
        code, _, err = run(capsys, "simples", "-f", "h", "-n", "2")
        assert code == 2

    def test_bad_descriptor_is_two(self, capsys):
        desc = {"variant": "cyclic_x", "orbit": ["1"], "zdot": "0", "a": "0"}
        code, _, err = run(capsys, "build", "-f", "h^2", "--descriptor", json.dumps(desc))
        assert code == 2 and "nonzero" in err

    def test_failed_verify_is_one(self, capsys):
        bad = {
            "schema_version": 1,
            "n": 1,
            "X": [["1"]],
            "H": [["2"]],
            "Y": [["1"]],
        }
        code, out, _ = run(capsys, "verify", "-f", "h^2", "--module", json.dumps(bad))
        assert code == 1

    def test_unclassifiable_is_one(self, capsys):
        zero2 = [["0", "0"], ["0", "0"]]
        bad = {"schema_version": 1, "n": 2, "X": zero2, "H": [["1", "0"], ["0", "2"]], "Y": zero2}
        code, _, err = run(capsys, "classify", "-f", "h^2", "--module", json.dumps(bad))
        assert code == 1 and "not classifiable" in err

    def test_empty_enumeration_is_zero(self, capsys):
        code, out, _ = run(capsys, "simples", "-f", "h^2+2*h-3/4", "-n", "2")
        assert code == 0
        assert json.loads(out)["families"] == []

    def test_missing_module_file_is_two(self, capsys):
        code, _, err = run(capsys, "verify", "-f", "h^2", "--module", "/nonexistent.json")
        assert code == 2

    def test_bad_flag_values(self, capsys):
        assert run(capsys, "--tol", "-1", "center", "-f", "h^2")[0] == 2
        assert run(capsys, "--conductor", "0", "center", "-f", "h^2")[0] == 2
        assert run(capsys, "--threads", "0", "center", "-f", "h^2")[0] == 2


class TestBackends:
    def test_approx_decimals(self, capsys):
        code, out, _ = run(capsys, "--backend", "approx", "normalize", "-f", "0.5*h", "-e", "y*x")
        assert code == 0 and out.strip() == "x*y + (-0.5)*h"

    def test_exact_rejects_decimals(self, capsys):
        code, _, err = run(capsys, "normalize", "-f", "0.5*h", "-e", "x")
        assert code == 2 and "approx backend" in err


@pytest.mark.parametrize(
    "name,argv",
    [
        ("center_cyclotomic.json", ["center", "-f", "zeta(3)*h"]),
        ("iso_case4.json", ["iso", "-f1", "2*h+1", "-f2", "h/2"]),
        ("simples_empty.json", ["simples", "-f", "h^2+2*h-3/4", "-n", "2"]),
        (
            "build_nilpotent.json",
            ["build", "-f", "zeta(4)*h", "--descriptor", '{"variant":"nilpotent_x","zdot":"1","n":4}'],
        ),
        ("normalize_yx.txt", ["normalize", "-f", "h^2", "-e", "y*x"]),
        ("simples_squaring.json", ["--conductor", "3", "simples", "-f", "h^2", "-n", "2", "--samples", "1"]),
    ],
)
def test_golden(capsys, name, argv):
    """Frozen outputs; regenerate by running the listed command if the
    format changes on purpose."""
    main(argv)
    out = capsys.readouterr().out
    assert out == (GOLDEN / name).read_text()


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "gha", "normalize", "-f", "h^2", "-e", "y*x"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "x*y + h^2 + (-1)*h"
