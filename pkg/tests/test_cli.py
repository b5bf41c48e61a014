import json
import subprocess
import sys

import pytest

from pbwdeform import cli, deformation
from pbwdeform.deformation import AmbiguityReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_check_pbw_weyl(capsys, fixture_path):
    code, out = run(capsys, "check-pbw", fixture_path("weyl.alg"))
    assert code == 0 and out.strip().endswith("verdict: PBW")


def test_check_pbw_failure_witness(capsys, data_path):
    code, out = run(capsys, "check-pbw", data_path("nc_a1_kappa_one.alg"))
    assert code == 1
    assert "witness: im κ_A ⊄ Prim" in out


def test_check_pbw_malformed(capsys, data_path):
    code, out = run(capsys, "check-pbw", data_path("bad_index.alg"))
    assert code == 2 and out.startswith("input error")


def test_missing_file(capsys):
    code, out = run(capsys, "dims", "/nonexistent.alg")
    assert code == 2


def test_usage_error(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_method_disagreement_exit_code(capsys, fixture_path, monkeypatch):
    def broken(*a, **k):
        return AmbiguityReport({}, [("xx", "x2 x1", "1")], False)
    monkeypatch.setattr(deformation, "check_ambiguities", broken)
    code, out = run(capsys, "check-pbw", fixture_path("weyl.alg"))
    assert code == 3 and "DISAGREEMENT" in out


def test_methods_and_cap(capsys, fixture_path):
    code, out = run(capsys, "check-pbw", "--methods", "symbolic,dimension", "--cap", "3",
                    fixture_path("usl2.alg"))
    assert code == 0 and out.splitlines()[:2] == ["symbolic: Pass", "dimension: Pass"]
    code, _ = run(capsys, "check-pbw", "--methods", "guess", fixture_path("usl2.alg"))
    assert code == 2


def test_dims_nc_a2(capsys, fixture_path):
    code, out = run(capsys, "dims", fixture_path("nc_a2.alg"))
    assert code == 0 and out.splitlines()[0] == "dim = 6, saturated"


def test_normal_form_weyl(capsys, fixture_path):
    code, out = run(capsys, "normal-form", fixture_path("weyl.alg"), "--input", "x2 x1")
    assert code == 0 and out.strip() == "x1 x2 + 1"


def test_normal_form_bad_letter(capsys, fixture_path):
    code, out = run(capsys, "normal-form", fixture_path("weyl.alg"), "--input", "x7")
    assert code == 2


def test_theorem_tgeneric(capsys, data_path):
    code, out = run(capsys, "theorem", "--name", "tgeneric", data_path("reflection_z2.alg"))
    assert code == 0 and out.strip().endswith("all m admissible; Ejac verified")


def test_theorem_hypothesis_violation(capsys, fixture_path):
    code, out = run(capsys, "theorem", "--name", "tgeneric", fixture_path("usl2.alg"))
    assert code == 1 and "HypothesisViolated" in out


@pytest.mark.parametrize("name", ["tnilcox", "tsimple", "p1"])
def test_other_theorems(capsys, data_path, name):
    code, out = run(capsys, "theorem", "--name", name, data_path("nc_a1_kappa_T.alg"))
    assert code == 0 and out.strip().splitlines()[-1] in ("consistent", "agreement")


@pytest.mark.parametrize("name", ["hopf", "yd"])
def test_hopf_theorems(capsys, data_path, name):
    code, out = run(capsys, "theorem", "--name", name, data_path("reflection_z2.alg"))
    assert code == 0 and out.strip().endswith("consistent")


def test_center_and_abelianization(capsys, data_path):
    code, out = run(capsys, "center", data_path("nc_a1_kappa_T.alg"), "--degree", "3")
    assert code == 0 and out.splitlines()[0] == "dim = 1"
    code, out = run(capsys, "abelianization", data_path("nc_a1_kappa_T.alg"), "--degree", "3")
    assert code == 0 and out.splitlines()[0] == "dims:     1 2 3 4"


def test_build_emits_constants(capsys, fixture_path):
    code, out = run(capsys, "build", fixture_path("nc_a2.alg"))
    raw = json.loads(out)
    assert code == 0 and raw["algebra"]["constants"]["dim"] == 6


def test_build_kind_on_constants_is_input_error(capsys, fixture_path):
    code, _ = run(capsys, "build", "--kind", "zero_hecke", fixture_path("weyl.alg"))
    assert code == 2


def test_multiple_files_and_determinism(capsys, fixture_path, data_path, monkeypatch):
    files = [fixture_path("weyl.alg"), data_path("nc_a1_kappa_one.alg"), fixture_path("usl2.alg")]
    code1, out1 = run(capsys, "check-pbw", *files)
    monkeypatch.setenv(cli.WORKERS_ENV, "2")
    code2, out2 = run(capsys, "check-pbw", *files)
    assert code1 == code2 == 1 and out1 == out2
    assert [l for l in out1.splitlines() if l.startswith("==")] == [f"== {f}" for f in files]


def test_bad_worker_env(capsys, fixture_path, monkeypatch):
    monkeypatch.setenv(cli.WORKERS_ENV, "many")
    assert cli.main(["dims", fixture_path("weyl.alg")]) == 2


def test_seeded_output_is_stable(capsys, data_path):
    a = run(capsys, "--seed", "4", "theorem", "--name", "tsimple", data_path("nc_a1_kappa_T.alg"))
    b = run(capsys, "--seed", "4", "theorem", "--name", "tsimple", data_path("nc_a1_kappa_T.alg"))
    assert a == b


def test_console_entry_point(fixture_path):
    out = subprocess.run([sys.executable, "-m", "pbwdeform.cli", "dims", fixture_path("nc_a2.alg")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("dim = 6, saturated")
