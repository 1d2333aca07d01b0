"""
Integration tests for the command line surface: outputs, JSON mode and exit codes.
"""
import json

import pytest

from src.cli.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

pytestmark = pytest.mark.integration


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


class TestElementCommands:
    """Thin wrappers over the algebra and the forms."""

    def test_euclid_text(self, capsys):
        """<xd, xd> = 3."""
        code, out, _ = run(capsys, "euclid", "x*d", "x*d")
        assert code == EXIT_OK
        assert out == "3"

    def test_euclid_json(self, capsys):
        """JSON output carries the exact components."""
        code, out, _ = run(capsys, "euclid", "x", "x", "--json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["rat"] == {"num": "0", "den": "1"}
        assert data["sqrt2"] == {"num": "1", "den": "1"}

    def test_approx_is_labeled(self, capsys):
        """--approx adds a decimal next to the exact value."""
        _, out, _ = run(capsys, "norm2", "d", "--approx", "8")
        assert out.startswith("sqrt2")
        assert "1.414" in out

    def test_compose_and_bar(self, capsys):
        """d o x = 1 + x*d; bar(x*d^2) = x^2*d."""
        assert run(capsys, "compose", "d", "x")[1] == "1 + x*d"
        assert run(capsys, "bar", "x*d^2")[1] == "x^2*d"

    def test_compose_mixed_arity(self, capsys):
        """Operands are lifted to the largest arity seen."""
        code, out, _ = run(capsys, "compose", "d1", "x2")
        assert code == EXIT_OK
        assert out == "x2*d1"

    def test_trace_and_frob(self, capsys):
        """T(x^2 d^2) = 2 and (d, x) = 2."""
        assert run(capsys, "trace", "x^2*d^2")[1] == "2"
        assert run(capsys, "frob", "d", "x")[1] == "2"

    def test_weight(self, capsys):
        """Homogeneous and inhomogeneous inputs."""
        _, out, _ = run(capsys, "weight", "x*d + 1")
        assert "weight: 0" in out
        code, out, _ = run(capsys, "weight", "x + d", "--json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["weight"] is None
        assert [c["weight"] for c in data["components"]] == [-1, 1]

    def test_project(self, capsys):
        """Projection by weight and by multi-weight."""
        assert run(capsys, "project", "x + d + x*d", "--weight", "1")[1] == "x"
        assert run(capsys, "project", "x + d + x*d", "--multiweight=-1")[1] == "d"

    def test_apply(self, capsys):
        """x d acts on x^3 as 3."""
        assert run(capsys, "apply", "x*d", "--poly", "x^3")[1] == "3*x^3"

    def test_parse_error_exit_code(self, capsys):
        """Normal-order violations exit 2 with a message on stderr."""
        code, out, err = run(capsys, "compose", "d*x", "x")
        assert code == EXIT_USAGE
        assert out == ""
        assert "error" in err

    def test_zero_denominator_exit_code(self, capsys):
        """A p/0 literal is reported as a parse error, not a traceback."""
        code, out, err = run(capsys, "trace", "1/0")
        assert code == EXIT_USAGE
        assert out == ""
        assert "denominator" in err

    def test_argparse_error(self):
        """Missing operands are usage errors."""
        with pytest.raises(SystemExit) as info:
            main(["euclid", "x"])
        assert info.value.code == 2


class TestMatrixCommands:
    """gram and matrix."""

    def test_gram_family_n(self, capsys):
        """N^(0,1) has det 2 and is positive definite."""
        code, out, _ = run(capsys, "gram", "--family", "N", "--a", "0", "--k", "1")
        assert code == EXIT_OK
        assert "det: 2" in out
        assert "leading minors: 1, 2" in out
        assert "positive definite: yes" in out

    def test_gram_basis_json(self, capsys):
        """Gram of {1, x, d} in JSON."""
        code, out, _ = run(capsys, "gram", "--basis", "1;x;d", "--json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["positive_definite"] is True
        assert data["det"]["rat"] == {"num": "2", "den": "1"}
        assert data["matrix"]["ring"] == "qsqrt2"
        assert data["matrix"]["header"]["basis"] == ["1", "x", "d"]

    def test_gram_family_m(self, capsys):
        """Polynomial families report det and minors with no definiteness verdict."""
        code, out, _ = run(capsys, "gram", "--family", "M", "--a", "0", "--k", "1")
        assert code == EXIT_OK
        assert "det: t" in out
        assert "positive definite: n/a" in out

    def test_gram_missing_parameters(self, capsys):
        """--family needs --a and --k."""
        code, _, err = run(capsys, "gram", "--family", "N")
        assert code == EXIT_USAGE
        assert "--a" in err

    def test_gram_rejects_non_monomials(self, capsys):
        """Basis entries must be bare monomials."""
        code, _, _ = run(capsys, "gram", "--basis", "x + d;1")
        assert code == EXIT_USAGE

    def test_matrix_file(self, capsys, tmp_path):
        """A JSON matrix file is read and analyzed."""
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"rows": 2, "cols": 2, "ring": "int", "entries": [["2", "1"], ["1", "3"]]}))
        code, out, _ = run(capsys, "matrix", str(path))
        assert code == EXIT_OK
        assert "det: 5" in out
        assert "positive definite: yes" in out

    @pytest.mark.parametrize("ring, entry", [
        ("poly", 5),
        ("qsqrt2", {"rat": {"num": "1", "den": "1"}}),
        ("rat", {"num": "1", "den": "0"}),
    ])
    def test_matrix_file_bad_entries(self, capsys, tmp_path, ring, entry):
        """Malformed entries of every ring exit 2 with a diagnostic."""
        path = tmp_path / "entry.json"
        path.write_text(json.dumps({"rows": 1, "cols": 1, "ring": ring, "entries": [[entry]]}))
        code, out, err = run(capsys, "matrix", str(path))
        assert code == EXIT_USAGE
        assert out == ""
        assert "error" in err

    def test_matrix_file_errors(self, capsys, tmp_path):
        """Missing files and malformed matrices exit 2."""
        assert run(capsys, "matrix", str(tmp_path / "none.json"))[0] == EXIT_USAGE
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rows": 2, "cols": 2, "ring": "int", "entries": [["1"]]}))
        assert run(capsys, "matrix", str(path))[0] == EXIT_USAGE


class TestSuiteCommands:
    """check, fubini-table and conjecture-search."""

    def test_check_lemma1(self, capsys):
        """check --lemma 1 --max-n 6 exits 0."""
        code, out, _ = run(capsys, "check", "--lemma", "1", "--max-n", "6")
        assert code == EXIT_OK
        assert out.splitlines()[0].startswith("PASS 1")
        assert "all checks passed" in out

    def test_check_json(self, capsys):
        """JSON report with one result per selected lemma."""
        code, out, _ = run(capsys, "check", "--lemma", "2", "101", "--max-n", "3", "--json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["passed"] is True
        assert [r["lemma"] for r in data["results"]] == ["2", "101"]

    def test_check_unknown_lemma(self, capsys):
        """Unknown lemma keys are usage errors."""
        assert run(capsys, "check", "--lemma", "99")[0] == EXIT_USAGE

    def test_check_negative_range(self):
        """Range flags must be non-negative."""
        with pytest.raises(SystemExit) as info:
            main(["check", "--max-n", "-1"])
        assert info.value.code == 2

    def test_fubini_table(self, capsys):
        """Rows k = 0..4, no i-dependence."""
        code, out, _ = run(capsys, "fubini-table", "--k", "4")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert len(lines) == 5
        assert "Fubini=75" in lines[4]
        assert "dipende" not in out

    def test_conjecture_search_reproducible(self, capsys):
        """The same seed prints the same JSON report."""
        argv = ["conjecture-search", "--trials", "20", "--seed", "1", "--max-exp", "2", "--json"]
        first_code, first, _ = run(capsys, *argv)
        second_code, second, _ = run(capsys, *argv)
        assert first == second
        assert first_code == second_code
        data = json.loads(first)
        assert data["trials"] == 20
        assert first_code == (EXIT_FAILURE if data["found"] else EXIT_OK)

    def test_metrics_file(self, capsys, tmp_path):
        """--metrics-file writes the Prometheus text format."""
        path = tmp_path / "metrics.prom"
        code, _, _ = run(capsys, "check", "--lemma", "1", "--max-n", "2", "--metrics-file", str(path))
        assert code == EXIT_OK
        assert "weylforms_checks_total" in path.read_text()
