"""Test CLI functionality."""

# Import built-in modules
import json

# Import third-party modules
from click.testing import CliRunner
import pytest

# Import local modules
from numrec import cli
from numrec.__version__ import __version__
from numrec.automata import all_words
from numrec.periodic import UpSet
from numrec.positional import up_set_dfa


@pytest.fixture
def fib_file(write_json, dfa_document, fib_language):
    return write_json(
        "fib.json",
        {"recurrence": {"coeffs": [1, 1], "initial": [1, 2]}, "C": 2, "language": dfa_document(fib_language)},
    )


@pytest.fixture
def two_fib_file(write_json, dfa_document, two_fib_language):
    return write_json("two_fib.json", {"format": 1, "ans": {"language": dfa_document(two_fib_language)}})


def recurrence_file(write_json, name, coeffs, initial):
    return write_json(name, {"recurrence": {"coeffs": coeffs, "initial": initial}})


def invoke(*args):
    return CliRunner().invoke(cli.cli, [str(a) for a in args])


def test_cli_version():
    """Test CLI version command."""
    result = invoke("--version")
    assert result.exit_code == 0
    assert f"numrec, version {__version__}" in result.output


def test_rep_and_val(fib_file, two_fib_file):
    """Test representations and values in positional and abstract systems."""
    assert invoke("rep", "--system", fib_file, 15).output == "100010\n"
    assert invoke("val", "--system", fib_file, "101001").output == "19\n"
    assert invoke("rep", "--system", two_fib_file, 20).output == "ccdc\n"
    assert invoke("val", "--system", two_fib_file, "aaaab").output == "24\n"


def test_val_rejects_bad_digit(fib_file):
    result = invoke("val", "--system", fib_file, "102")
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_residues(write_json):
    """Test the residue profile of U_{i+3} = U_{i+1} + 3 U_i modulo 27."""
    path = recurrence_file(write_json, "u3.json", [0, 1, 3], [1, 2, 3])
    result = invoke("residues", "--system", path, "-m", 27)
    assert result.exit_code == 0
    assert result.output == (
        "modulus: 27\n"
        "preperiod: 1, 2, 3\n"
        "period: 5, 9, 14, 24, 14, 12, 5, 0, 14, 15, 14, 3, 5, 18, 14, 6, 14, 21\n"
        "recurring residues: 11\n"
    )


def test_residues_json(write_json):
    path = recurrence_file(write_json, "u3.json", [0, 1, 3], [1, 2, 3])
    result = invoke("--json", "residues", "--system", path, "-m", 27)
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["format"] == 1
    assert document["preperiod"] == 3
    assert document["period"] == 18
    assert document["recurring_count"] == 11


def test_criterion(write_json):
    """Test the golden outputs of the growth criterion."""
    divergent = recurrence_file(write_json, "divergent.json", [3, 2, 0, 3], [1, 2, 3, 4])
    result = invoke("criterion", "--system", divergent)
    assert result.exit_code == 0
    assert result.output == "p=3: Divergent\noverall: criterion satisfied\n"

    bounded = recurrence_file(write_json, "bounded.json", [6, 3, -1, 6, 3], [1, 2, 3, 4, 5])
    result = invoke("criterion", "--system", bounded)
    assert result.output == "p=3: Bounded (A = x**3 + 1, B = -3*x**2 - 6*x + 1)\noverall: criterion fails\n"


def test_bounds(fib_file, two_fib_file):
    result = invoke("bounds", "--system", fib_file, "--d", 2, "--sharp")
    assert result.exit_code == 0
    assert result.output == "threshold: 2\nmax preperiod: 0\nperiod bound P: 2\npreperiod bound A: 3\n"

    result = invoke("bounds", "--system", two_fib_file, "--d", 1, "--sharp")
    assert result.output == (
        "threshold: 5\nc bound: 65\nmax preperiod: 1\nperiod bound P: 65\npreperiod bound A: 66\n"
    )


def test_bounds_without_divergence(write_json):
    path = recurrence_file(write_json, "binary.json", [3, -2], [1, 3])
    result = invoke("bounds", "--system", path, "--d", 2)
    assert result.exit_code == 2
    assert "does not diverge" in result.output


def test_decide_evens(fib, fib_file, write_json, dfa_document):
    dfa_path = write_json("evens.json", dfa_document(up_set_dfa(fib, UpSet("", "10"))))
    result = invoke("decide", "--system", fib_file, "--dfa", dfa_path, "--max-period", 64)
    assert result.exit_code == 0
    assert result.output == "ultimately periodic: u=ε v=10\n"

    result = invoke("--json", "decide", "--system", fib_file, "--dfa", dfa_path)
    assert json.loads(result.output) == {
        "format": 1,
        "verdict": "ultimately_periodic",
        "preperiod_bits": "",
        "period_bits": "10",
    }


def test_decide_fibonacci_numbers(fib_file, write_json, dfa_document, one_tail_language):
    dfa_path = write_json("tail.json", dfa_document(one_tail_language))
    result = invoke("decide", "--system", fib_file, "--dfa", dfa_path)
    assert result.exit_code == 0
    assert result.output == "not ultimately periodic (P=2, A=3)\n"


def test_decide_inapplicable(write_json, dfa_document):
    """The triangular scale has no regular representation language."""
    system = recurrence_file(write_json, "triangular.json", [3, -3, 1], [1, 3, 6])
    dfa_path = write_json("all.json", dfa_document(all_words(("0", "1", "2"))))
    result = invoke("decide", "--system", system, "--dfa", dfa_path)
    assert result.exit_code == 1
    assert result.output.startswith("inapplicable:")


def test_malformed_input(tmp_path, fib_file):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    result = invoke("decide", "--system", fib_file, "--dfa", broken)
    assert result.exit_code == 2
    assert "Error:" in result.output

    result = invoke("rep", "--system", broken, 3)
    assert result.exit_code == 2


def test_ans_enumerate(two_fib_file, fib_file):
    result = invoke("ans-enumerate", "--system", two_fib_file, "-n", 5)
    assert result.exit_code == 0
    assert result.output == "0\tε\n1\ta\n2\tc\n3\taa\n4\tab\n"

    result = invoke("ans-enumerate", "--system", two_fib_file, "-n", 2, "--start", 20)
    assert result.output == "20\tccdc\n21\tcdcc\n"

    assert invoke("ans-enumerate", "--system", fib_file).exit_code == 2


def test_hd0l_decide(write_json):
    path = write_json("alternating.json", {"g": {"a": "ab", "b": "ab"}, "start": "a"})
    result = invoke("hd0l-decide", path)
    assert result.exit_code == 1
    assert result.output == "a: inapplicable\nb: inapplicable\noverall: undecided\n"

    result = invoke("hd0l-decide", path, "--certify")
    assert result.exit_code == 0
    assert result.output == (
        "a: ultimately periodic\nb: ultimately periodic\noverall: ultimately periodic\nperiod: 2\n"
    )


def test_decide_base_two(write_json):
    """Base 2 is outside the reach of the bounds unless a certificate is requested."""
    language = {
        "alphabet": ["0", "1"],
        "states": 2,
        "initial": 0,
        "finals": [0, 1],
        "transitions": [[0, "1", 1], [1, "0", 1], [1, "1", 1]],
    }
    system = write_json("base2.json", {"recurrence": {"coeffs": [2], "initial": [1]}, "C": 2, "language": language})
    dfa_path = write_json("language.json", language)

    result = invoke("decide", "--system", system, "--dfa", dfa_path)
    assert result.exit_code == 1
    assert result.output == "inapplicable: N(m) does not diverge for this system\n"

    result = invoke("decide", "--system", system, "--dfa", dfa_path, "--certify")
    assert result.exit_code == 0
    assert result.output == "ultimately periodic: u=ε v=1\n"


def test_hd0l_decide_undecided(write_json):
    path = write_json("thue_morse.json", {"g": {"a": "ab", "b": "ba"}, "start": "a"})
    result = invoke("hd0l-decide", path)
    assert result.exit_code == 1
    assert "overall: undecided" in result.output


def test_export_dot(fib_file, write_json, dfa_document, fib_language):
    dfa_path = write_json("fib_dfa.json", dfa_document(fib_language))
    result = invoke("export-dot", "--dfa", dfa_path, "--name", "fib")
    assert result.exit_code == 0
    assert result.output.startswith("digraph fib {")
    assert result.output.endswith("}\n")

    assert invoke("export-dot", "--system", fib_file).output.startswith("digraph dfa {")
    assert invoke("export-dot").exit_code == 2
    assert invoke("export-dot", "--dfa", dfa_path, "--system", fib_file).exit_code == 2
