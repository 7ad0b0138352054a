import subprocess
import sys

import pytest

from genwitt.algebra import AlgebraConfig
from genwitt.cli import main
from genwitt.derivations import format_table, inner_derivation, recompose, tabulate
from genwitt.structure import Box

from conftest import E


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bracket_example(capsys):
    assert run(capsys, "bracket", "(1|0)_1", "(2|0)_1", "--n", "1", "--m", "1") == (0, "(3|0)_1\n", "")


def test_ad_diag_example(capsys):
    code, out, _ = run(capsys, "ad-diag", "(0|1)_1", "--n", "1", "--m", "1", "--box", "1,1")
    assert (code, out) == (0, "(1|0)_1\n")


def test_ad_diag_none_found_is_math_failure(capsys):
    # (0|0)_1 = d acts diagonally on every (a|0)_1 in a box with no lower indices
    code, out, err = run(capsys, "ad-diag", "(0|0)_1", "--box", "2,0")
    assert code == 1 and out == "" and "eigenvector" in err


def test_bracket_with_slopes(capsys):
    # same direction 2: g_2(b_2) - g_2(a_2) = m_2*(1 - 0)
    code, out, _ = run(capsys, "bracket", "(1,0|0,0)_2", "(0,1|0,0)_2", "--n", "2", "--m", "1,-5")
    assert code == 0 and out == "-5*(1,1|0,0)_2\n"


def test_grade_st_lp_cmp(capsys):
    assert run(capsys, "grade", "(1|0)_1 + (0|0)_1 + (1|2)_1")[1] == "(1): (1|2)_1 + (1|0)_1\n(0): (0|0)_1\n"
    assert run(capsys, "st", "(1|0)_1 + (0|0)_1 + (1|2)_1")[1] == "2\n"
    assert run(capsys, "lp", "(1|0)_1 - (0|3)_1")[1] == "3\n"
    assert run(capsys, "cmp", "(0|5)_1", "(1|0)_1")[1] == "<\n"
    assert run(capsys, "cmp", "(0,0|0,0)_2", "(0,0|0,0)_1", "--n", "2")[1] == ">\n"


def test_lemma1_output_has_positive_lower(capsys):
    code, out, _ = run(capsys, "lemma1", "(1,0|0,0)_2 + (0,1|1,0)_1", "--n", "2")
    assert code == 0
    result = E(out.splitlines()[1].removeprefix("result: "), 2)
    assert result and all(min(b.lower) >= 1 for b in result.terms)


def test_ideal_witness(capsys):
    code, out, _ = run(capsys, "ideal-witness", "(1|0)_1 + (0|1)_1", "--rbox", "3,3")
    assert code == 0 and "saturated: yes" in out


def test_ideal_witness_unreached_exits_1(capsys):
    code, out, _ = run(capsys, "ideal-witness", "(1|1)_1", "--mbox", "0,0", "--rbox", "1,1")
    assert code == 1 and "saturated: no" in out


def test_integrate(capsys):
    assert run(capsys, "integrate", "(0|1)")[1] == "1/2*(0|2)\n"


def test_usage_errors(capsys):
    code, _, err = run(capsys, "bracket", "(1|0)_1", "(2|0)_1", "--m", "0")
    assert code == 2 and "injective" in err
    code, _, err = run(capsys, "bracket", "(1|0)_1", "(2|0_1")
    assert code == 2 and "column 5" in err
    code, _, err = run(capsys, "bracket", "(1|0)_1", "(2|0)_1", "--n", "2", "--m", "1")
    assert code == 2
    code, _, err = run(capsys, "bracket", "(1,0|0,0)_3", "(2,0|0,0)_1", "--n", "2")
    assert code == 2 and "direction" in err
    code, _, _ = run(capsys, "integrate", "(0|1)", "--n", "2")
    assert code == 2
    assert run(capsys, "frobnicate")[0] == 2


def _table_file(tmp_path, rule, window):
    path = tmp_path / "d.txt"
    path.write_text(format_table(tabulate(rule, window)))
    return str(path)


def test_verify_and_decompose(capsys, tmp_path, w1):
    G = E("(1|1)_1 + 2*(0|2)_1")
    path = _table_file(tmp_path, recompose(w1, G, 3, -1), Box(3, 3))
    code, out, _ = run(capsys, "verify-derivation", path)
    assert code == 0 and out.startswith("ok")
    code, out, _ = run(capsys, "decompose", path, "--window", "3,3")
    assert code == 0
    assert out == "G: (1|1)_1 + 2*(0|2)_1\nc: 3\ns: -1\n"


def test_decompose_example_inner(capsys, tmp_path, w1):
    path = _table_file(tmp_path, inner_derivation(w1, E("(1|1)_1")), Box(2, 2))
    assert run(capsys, "decompose", path)[1] == "G: (1|1)_1\nc: 0\ns: 0\n"


def test_non_derivation_rejected(capsys, tmp_path):
    lines = [f"({a}|{i})_1 -> ({a}|{i})_1" for a in range(-1, 2) for i in range(2)]
    path = tmp_path / "bad.txt"
    path.write_text("# identity map\n" + "\n".join(lines) + "\n")
    code, out, err = run(capsys, "verify-derivation", str(path))
    assert code == 1 and "violation" in out
    code, _, _ = run(capsys, "decompose", str(path))
    assert code == 1


def test_table_syntax_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# c\n(0|0)_1 -> (0|0)_1\n(1|0)_1 -> (1|0_1\n")
    code, _, err = run(capsys, "verify-derivation", str(path))
    assert code == 2 and "line 3" in err


def test_missing_file(capsys):
    assert run(capsys, "verify-derivation", "/nonexistent/table")[0] == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "7", "--n", "2", "--count", "20")
    assert code == 0 and out.rstrip().endswith("suites passed")


def test_deterministic_output(capsys):
    first = run(capsys, "selftest", "--seed", "3", "--n", "1", "--count", "10")[1]
    second = run(capsys, "selftest", "--seed", "3", "--n", "1", "--count", "10")[1]
    assert first == second


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "genwitt.cli", "bracket", "(1|0)_1", "(2|0)_1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "(3|0)_1\n"
