import shutil
import subprocess

import pytest

from homlie.cli import main
from homlie.corpus import FILES, GOLDENS, example_text, regenerate


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    for name in FILES:
        assert main(["example", name, "--out", str(d)]) == 0
    return {name: str(d / fn) for name, fn in FILES.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_nu6(capsys, files):
    code, out, _ = run(capsys, "check", files["nu6"])
    assert code == 0
    assert out.splitlines() == [
        "algebra nu6",
        "skew: holds",
        "hom-jacobi: holds",
        "equivariance: holds",
        "jacobi: FAILS witness (x1,x2,x3) defect -1 y2",
        "verdict: pass (jacobi is informational when a twist map is present)",
    ]


def test_check_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra g\ndim 3\nbasis e0 e1 e2\nbracket e0 e1 -> 1 e2\nbracket e0 e2 -> 1 e0\nendalgebra\n")
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1
    assert "jacobi: FAILS" in out and "verdict: FAIL" in out


def test_check_plain_product(capsys, files):
    code, out, _ = run(capsys, "check", files["algebraA"])
    assert code == 0 and "plain product: no axioms apply" in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "missing.alg"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra g\ndim 2\nbasis e\nendalgebra\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and err.startswith("error: line 1")


def test_missing_capabilities(capsys, files):
    # nilpotent6 has a metric but no twist
    code, _, err = run(capsys, "lie", files["nilpotent6"])
    assert code == 2 and "twist" in err


def test_invertible_twist_exit_code(capsys, tmp_path):
    f = tmp_path / "id.alg"
    f.write_text("algebra g\ndim 1\nbasis e\ntwist T\nmetric B\nendalgebra\n\n"
                 "map T on g\ne -> 1 e\nendmap\n\nform B on g\ne e -> 1\nendform\n")
    code, _, err = run(capsys, "extend", str(f))
    assert code == 1 and "twist map invertible; Hom-Lie product is a Lie bracket" in err


def test_hypothesis_error_exit_code(capsys, files):
    # g given twice: V would be zero
    code, _, err = run(capsys, "invert", files["nilpotent6"], files["nilpotent6"])
    assert code == 1 and "hypothesis violated: V is nonzero" in err


def test_lie_on_double(capsys, files):
    code, out, _ = run(capsys, "lie", files["double12"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("# center: span{1 x2, 1 y1, 1 y2, 1 y3, 1 alpha1, 1 alpha2, 1 alpha3, 1 beta1, 1 beta3}")
    assert lines[1] == "# derived: span{1 y2, 1 alpha1, 1 alpha3}"
    brackets = [l for l in lines if l.startswith("bracket")]
    assert brackets == ["bracket x1 x3 -> -1 y2", "bracket x1 beta2 -> 1 alpha3", "bracket x3 beta2 -> -1 alpha1"]


def test_extend_header(capsys, files):
    code, out, _ = run(capsys, "extend", files["nilpotent6-hom"])
    assert code == 0
    assert out.splitlines()[:2] == ["# theta: not a coboundary", "# kernel of twist equals center: yes"]
    assert "cocycle theta from nilpotent6_hom to nilpotent6_hom_ext" in out


def test_extend_double_header(capsys, files):
    code, out, _ = run(capsys, "extend", files["double12"])
    assert code == 0
    assert out.splitlines()[:2] == ["# theta: not a coboundary", "# kernel of twist equals center: no"]


def test_out_option_matches_stdout(capsys, files, tmp_path):
    target = tmp_path / "d.alg"
    assert run(capsys, "double", files["nu6"], "--out", str(target))[0] == 0
    _, out, _ = run(capsys, "double", files["nu6"])
    assert target.read_text() == out


def test_deterministic_output(capsys, files):
    first = run(capsys, "product", files["nilpotent6-hom"])[1]
    second = run(capsys, "product", files["nilpotent6-hom"])[1]
    assert first == second


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_goldens_regenerate(name):
    assert regenerate(name) == example_text(name)


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_cli_reproduces_goldens(capsys, files, name):
    command, inputs = GOLDENS[name]
    code, out, _ = run(capsys, command, *(files[i] for i in inputs))
    assert code == 0 and out == example_text(name)


def test_ideals(capsys, files, tmp_path):
    code, out, _ = run(capsys, "ideals", files["algebraA"], "--trials", "2")
    assert code == 0 and out == "none found (trials=2)\n"
    ff = tmp_path / "ff.alg"
    ff.write_text("algebra ff\ndim 2\nbasis p q\nproduct p p -> 1 p\nproduct q q -> 1 q\nendalgebra\n")
    code, out, _ = run(capsys, "ideals", str(ff))
    assert code == 1 and out == "proper ideal found: dim 1 of 2: span{1 p}\n"
    assert run(capsys, "ideals", str(ff), "--trials", "-1")[0] == 2
    assert run(capsys, "ideals", str(ff), "--algebra", "nope")[0] == 2


def test_example_to_stdout(capsys):
    code, out, _ = run(capsys, "example", "nu6")
    assert code == 0 and out == example_text("nu6")


@pytest.mark.skipif(shutil.which("homlie") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["homlie", "example", "nu6"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == example_text("nu6")
