import pytest

from qcgirth.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    main,
)
from qcgirth.lifting import export_alist, export_shift_matrix, lift
from qcgirth.search import girth6_odd_L_explicit


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mappings_count_structured(capsys):
    code, out, err = run(capsys, ["mappings", "count", "--n", "5",
                                  "--format", "structured"])
    assert code == EXIT_OK
    assert out == "census 1\nmodulus 5\ncount 3\nwitnesses 0\n"
    assert "census took" in err  # timing goes to stderr only


def test_mappings_enumerate_structured(capsys):
    code, out, _ = run(capsys, ["mappings", "enumerate", "--n", "5",
                                "--format", "structured"])
    assert code == EXIT_OK
    assert out == (
        "census 1\nmodulus 5\ncount 3\nwitnesses 3\n"
        "0 2 4 1 3\n0 3 1 4 2\n0 4 3 2 1\n"
    )


def test_mappings_enumerate_human(capsys):
    code, out, _ = run(capsys, ["mappings", "enumerate", "--n", "5"])
    assert code == EXIT_OK
    assert out.startswith("complete mappings of Z/5: 3\n")


def test_mappings_check(capsys):
    code, out, _ = run(capsys, ["mappings", "check", "--images", "0,2,4,1,3",
                                "--format", "structured"])
    assert code == EXIT_OK
    assert out == (
        "mapping-check 1\nimages 0 2 4 1 3\ncomplete true\n"
        "differences 0 1 2 3 4\n"
    )


def test_mappings_check_even_modulus_notes_to_stderr(capsys):
    code, out, err = run(capsys, ["mappings", "check", "--images", "0,1,3,2"])
    assert code == EXIT_OK
    assert "even modulus" in err
    assert "complete: false" in out


def test_mappings_check_rejects_non_permutation(capsys):
    code, _, err = run(capsys, ["mappings", "check", "--images", "0,0,1"])
    assert code == EXIT_USAGE
    assert "error" in err


def test_mappings_requires_n():
    with pytest.raises(SystemExit) as info:
        main(["mappings", "count"])
    assert info.value.code == EXIT_USAGE


def test_mappings_budget_exit(capsys):
    code, out, err = run(capsys, ["mappings", "count", "--n", "9",
                                  "--budget", "50"])
    assert code == EXIT_BUDGET
    assert "budget" in err
    assert "partial count" in out


def test_mappings_worker_fanout_same_bytes(capsys):
    _, single, _ = run(capsys, ["mappings", "enumerate", "--n", "7",
                                "--format", "structured"])
    _, fanned, _ = run(capsys, ["mappings", "enumerate", "--n", "7",
                                "--format", "structured", "--workers", "2"])
    assert single == fanned


def test_construct_product(capsys):
    code, out, err = run(capsys, ["construct", "product", "--l", "5"])
    assert code == EXIT_OK
    assert out == (
        "shift-matrix 1\nJ 3\nL 5\nN 5\n"
        "row 0 0 0 0 0\nrow 0 1 2 3 4\nrow 0 2 4 1 3\n"
    )
    assert "girth 6" in err


def test_construct_product_rejects_even_l(capsys):
    code, _, err = run(capsys, ["construct", "product", "--l", "4"])
    assert code == EXIT_USAGE
    assert "odd" in err


def test_construct_rejects_bad_multiplier(capsys):
    code, _, err = run(capsys, ["construct", "product", "--l", "9", "--h", "3"])
    assert code == EXIT_USAGE
    assert "gcd" in err


def test_construct_even_l(capsys):
    code, out, _ = run(capsys, ["construct", "even-l", "--l", "6"])
    assert code == EXIT_OK
    assert out.startswith("shift-matrix 1\nJ 3\nL 6\nN 7\n")


def test_construct_alist_output(capsys):
    code, out, _ = run(capsys, ["construct", "array", "--l", "5", "--alist"])
    assert code == EXIT_OK
    assert out == export_alist(lift(girth6_odd_L_explicit(5, 2)))


def test_girth_both_methods(tmp_path, capsys):
    path = tmp_path / "p.shifts"
    path.write_text(export_shift_matrix(girth6_odd_L_explicit(5, 2)))
    code, out, _ = run(capsys, ["girth", "--input", str(path)])
    assert code == EXIT_OK
    assert out.count("girth-report 1") == 2
    assert "method shifts" in out and "method bfs" in out
    assert out.count("girth 6") == 2
    assert out.count("count 100") == 2
    assert out.endswith("agreement true\n")


def test_girth_on_alist_file(tmp_path, capsys):
    path = tmp_path / "p.alist"
    path.write_text(export_alist(lift(girth6_odd_L_explicit(5, 2))))
    code, out, _ = run(capsys, ["girth", "--input", str(path), "--method", "bfs"])
    assert code == EXIT_OK
    assert "method bfs" in out and "girth 6" in out


def test_girth_shifts_method_requires_shift_file(tmp_path, capsys):
    path = tmp_path / "p.alist"
    path.write_text(export_alist(lift(girth6_odd_L_explicit(5, 2))))
    code, _, err = run(capsys, ["girth", "--input", str(path),
                                "--method", "shifts"])
    assert code == EXIT_USAGE
    assert "shift-matrix" in err


def test_girth_missing_file(capsys):
    code, _, err = run(capsys, ["girth", "--input", "/nonexistent/x"])
    assert code == EXIT_USAGE
    assert "error" in err


def test_girth_rejects_odd_cap(tmp_path, capsys):
    path = tmp_path / "p.shifts"
    path.write_text(export_shift_matrix(girth6_odd_L_explicit(5, 2)))
    code, _, err = run(capsys, ["girth", "--input", str(path), "--cap", "7"])
    assert code == EXIT_USAGE
    assert "cap" in err


def test_verify_min_lift(capsys):
    code, out, _ = run(capsys, ["verify", "min-lift", "--l-min", "4",
                                "--l-max", "5", "--n-max", "6"])
    assert code == EXIT_OK
    assert out == (
        "min-lift-report 1\nJ 3\ntarget-girth 6\nn-max 6\n"
        "L 4 min-n 5 expected 5 ok\nL 5 min-n 5 expected 5 ok\n"
    )


def test_verify_min_lift_flags_mismatch(capsys):
    # n-max below the true minimum makes the search miss it
    code, out, err = run(capsys, ["verify", "min-lift", "--l-min", "4",
                                  "--l-max", "4", "--n-max", "4"])
    assert code == EXIT_VIOLATION
    assert "L 4 min-n none expected 5 mismatch" in out
    assert "differs" in err


def test_verify_min_lift_budget(capsys):
    code, out, _ = run(capsys, ["verify", "min-lift", "--l-min", "6",
                                "--l-max", "6", "--n-max", "7", "--budget", "5"])
    assert code == EXIT_BUDGET
    assert "budget-exhausted true" in out


def test_verify_pairwise(capsys):
    code, out, _ = run(capsys, ["verify", "pairwise", "--n", "5"])
    assert code == EXIT_OK
    assert out == (
        "pairwise-report 1\nmodulus 5\nmappings 3\ncompatible-pairs 3\n"
        "pair 0 1\npair 0 2\npair 1 2\n"
    )


def test_verify_pairwise_expect_empty_violation(capsys):
    code, _, err = run(capsys, ["verify", "pairwise", "--n", "5",
                                "--expect-empty"])
    assert code == EXIT_VIOLATION
    assert "expected no compatible pairs" in err


def test_verify_girth8_bound(capsys):
    code, out, err = run(capsys, ["verify", "girth8-bound", "--lprime", "3",
                                  "--n-max", "9"])
    assert code == EXIT_OK
    assert "N 9 valid 36 hypothesis 24 violations 0" in out
    assert "violations-total 0" in out
    assert "sweep took" in err


def test_verify_girth8_bound_worker_fanout_same_bytes(capsys):
    argv = ["verify", "girth8-bound", "--lprime", "3", "--n-max", "9"]
    _, single, _ = run(capsys, argv)
    _, fanned, _ = run(capsys, argv + ["--workers", "2"])
    assert single == fanned


def test_verify_girth8_conjecture(capsys):
    code, out, _ = run(capsys, ["verify", "girth8-conjecture", "--lprime", "3"])
    assert code == EXIT_OK
    assert out == (
        "girth8-conjecture-report 1\nlprime 3\nbound 8\nn-min 4\nn-max 7\n"
        "N 4 valid 0\nN 5 valid 0\nN 6 valid 0\nN 7 valid 0\n"
        "below-bound-valid 0\n"
    )


def test_output_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "census.txt"
    code, out, _ = run(capsys, ["mappings", "count", "--n", "5",
                                "--format", "structured",
                                "--output", str(target)])
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text() == "census 1\nmodulus 5\ncount 3\nwitnesses 0\n"


def test_repeated_runs_are_byte_identical(capsys):
    argv = ["verify", "girth8-bound", "--lprime", "3", "--n-max", "8"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
