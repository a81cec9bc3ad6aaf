from fractions import Fraction
from pathlib import Path

from tautrel.cli import main
from tautrel.gwi import format_sum, parse_graph, parse_sum
from tautrel.graphs import symmetrize
from tautrel.relations import RelationRegistry
from tautrel.sums import FormalSum

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parents[1] / "src" / "tautrel" / "data" / "getzler_g1n4k2.gwi"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_nine_orbits(capsys):
    code, out, _ = run(
        capsys, "enumerate", "-g", "1", "-n", "4", "-k", "2",
        "--boundary-only", "--symmetrize",
    )
    lines = [l for l in out.splitlines() if l]
    assert code == 0
    assert lines[-1] == "COUNT 9"
    assert len(lines) == 10
    for l in lines[:-1]:
        parse_graph(l)


def test_enumerate_three_divisors(capsys):
    code, out, _ = run(capsys, "enumerate", "-g", "0", "-n", "4", "-k", "1", "--boundary-only")
    assert code == 0
    assert out.splitlines()[-1] == "COUNT 3"


def test_enumerate_empty(capsys):
    code, out, _ = run(capsys, "enumerate", "-g", "0", "-n", "3", "-k", "1")
    assert code == 0
    assert out.splitlines() == ["COUNT 0"]


def test_enumerate_invalid_exit_2(capsys):
    code, _, err = run(capsys, "enumerate", "-g", "0", "-n", "2", "-k", "1")
    assert code == 2
    assert "error" in err


def test_find_recovers_golden_equation(tmp_path, capsys):
    code, out, _ = run(
        capsys, "find", "-g", "1", "-n", "4", "-k", "2",
        "--boundary-only", "--out", str(tmp_path), "--lmax", "1",
    )
    assert code == 0
    assert "NULLSPACE dim=2" in out
    assert "TRIVIAL dim=1" in out
    assert "NEW 1" in out
    files = sorted(tmp_path.glob("candidate_*.gwi"))
    assert len(files) == 1
    got = parse_sum(files[0].read_text().strip())
    golden = parse_sum(GOLDEN.read_text().strip())
    lead, coeff = golden.terms()[0]
    ratio = got.coefficient(lead) / coeff
    assert ratio and got == golden.scale(ratio)


def test_find_report_has_rows_and_provenance(tmp_path, capsys):
    code, out, _ = run(
        capsys, "find", "-g", "1", "-n", "4", "-k", "2",
        "--boundary-only", "--out", str(tmp_path), "--lmax", "1",
    )
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("ROW ")]
    assert rows and all("l=1" in r and "(" in r for r in rows)


def test_check_golden_equation(capsys):
    code, out, _ = run(capsys, "check", str(GOLDEN))
    assert code == 0
    assert "l=1 ZERO" in out and "l=2 ZERO" in out


def test_check_top_codimension_vacuous(tmp_path, capsys):
    f = tmp_path / "g1trr.gwi"
    f.write_text("<1^1>_1 - 1/24*<1 e0 e0>_0\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0
    assert "vacuously" in out


def test_check_perturbed_fails(tmp_path, capsys):
    golden = parse_sum(GOLDEN.read_text().strip())
    lead, _ = golden.terms()[0]
    perturbed = golden + FormalSum.single(lead, Fraction(1))
    f = tmp_path / "perturbed.gwi"
    f.write_text(format_sum(perturbed) + "\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1
    assert "NONZERO" in out and "RESIDUAL" in out


def test_check_bad_file_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.gwi"
    f.write_text("<1 2 e0>_0\n")  # unpaired internal name
    code, _, err = run(capsys, "check", str(f))
    assert code == 2


def test_reduce_trivial_combination_prints_zero(tmp_path, capsys):
    # the known-trivial direction of the four-point genus-1 ambient
    reps = {
        5: "<1 2 3 e0>_0 <4 e0 e1 e1>_0",
        6: "<1 2 3 4 e0>_0 <e0 e1 e1>_0",
        7: "<1 2 e0 e1>_0 <3 4 e0 e1>_0",
        8: "<1 2 e0>_0 <3 4 e0 e1 e1>_0",
        9: "<1 e0 e1>_0 <2 3 4 e0 e1>_0",
    }
    coeff = {5: Fraction(-1), 6: Fraction(-1, 2), 7: Fraction(1), 8: Fraction(-1, 2), 9: Fraction(1)}
    T = FormalSum()
    for i, s in reps.items():
        T = T + symmetrize(parse_graph(s), {1, 2, 3, 4}).scale(coeff[i])
    f = tmp_path / "t.gwi"
    f.write_text(format_sum(T) + "\n")
    code, out, _ = run(capsys, "reduce", str(f))
    assert code == 0
    assert out.strip() == "ZERO"


def test_reduce_single_stratum_is_normal(tmp_path, capsys):
    f = tmp_path / "s.gwi"
    f.write_text("<1 2 e0>_0 <3 4 e0>_0\n")
    code, out, _ = run(capsys, "reduce", str(f))
    assert code == 0
    got = parse_sum(out.strip())
    reg = RelationRegistry()
    assert reg.normal_form(got - parse_sum("<1 2 e0>_0 <3 4 e0>_0")).is_zero()


def test_reduce_expresses_class_over_basis(tmp_path, capsys):
    # the first five-vector class rewritten over the basis classes
    v1 = symmetrize(parse_graph("<3 4 e0>_0 <5 e1 e1 e0>_0"), {3, 4})
    f = tmp_path / "v1.gwi"
    f.write_text(format_sum(v1) + "\n")
    code, out, _ = run(capsys, "reduce", str(f))
    assert code == 0
    got = parse_sum(out.strip())
    reg = RelationRegistry()
    assert reg.normal_form(got - v1).is_zero()
    assert got != v1  # genuinely rewritten into basis classes


def test_missing_registry_dir_exit_2(capsys, tmp_path):
    # only the commands that reduce modulo relations need the root
    f = tmp_path / "s.gwi"
    f.write_text("<1 2 e0>_0 <3 4 e0>_0\n")
    code, _, err = run(capsys, "--registry", str(tmp_path / "nope"), "reduce", str(f))
    assert code == 2
    code, _, _ = run(
        capsys, "--registry", str(tmp_path / "nope"),
        "enumerate", "-g", "0", "-n", "4", "-k", "1",
    )
    assert code == 0
