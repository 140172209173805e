"""
CLI Tests
Subcommands, exit codes and deterministic JSON reports
"""
import json
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.cli import (EXIT_INPUT_ERROR, EXIT_PASS, EXIT_RESOURCE_ERROR, RunConfig,
                                   main)
from matroid_selection.core.model import Instance, LaminarFamily, ValueDistribution
from matroid_selection.extractors.instance_extractor import load_instance, save_instance
from matroid_selection.utils.report_generator import ReportGenerator
from matroid_selection.validators.property_verifier import failure_instance


@pytest.fixture
def bernoulli_file(tmp_path):
    inst = Instance(LaminarFamily.of([({0}, 1)]), (ValueDistribution.two_point(1, Fraction(1, 2)),),
                    "bernoulli")
    return save_instance(inst, tmp_path / "bernoulli.json")


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


class TestRunConfig:
    """Validated settings"""

    def test_epsilon_parsing(self):
        assert RunConfig(command="ptas", epsilon="0.25").epsilon_value == Fraction(1, 4)

    def test_auto_K(self):
        assert RunConfig(command="ptas", epsilon="1/2").resolved_K == 16
        assert RunConfig(command="ptas", K="7").resolved_K == 7

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            RunConfig(command="ptas", epsilon="3/2")
        with pytest.raises(ValueError):
            RunConfig(command="ptas", K=0)
        with pytest.raises(ValueError):
            RunConfig(command="ptas", trials=0)


class TestSolveExact:
    """solve-exact"""

    def test_bernoulli(self, capsys, bernoulli_file):
        code, report = run_cli(capsys, "solve-exact", "--instance", str(bernoulli_file))
        assert code == EXIT_PASS
        assert report["status"] == "pass"
        assert report["result"]["opt"]["exact"] == "1/2"
        assert "timing" not in report

    def test_timing_on_request(self, capsys, bernoulli_file):
        _, report = run_cli(capsys, "solve-exact", "--instance", str(bernoulli_file), "--timing")
        assert "seconds" in report["timing"]

    def test_report_written(self, capsys, bernoulli_file, tmp_path):
        out = tmp_path / "report.json"
        run_cli(capsys, "solve-exact", "--instance", str(bernoulli_file), "--out", str(out))
        assert json.loads(out.read_text(encoding="utf-8"))["command"] == "solve-exact"

    def test_malformed_instance(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2", encoding="utf-8")
        code, report = run_cli(capsys, "solve-exact", "--instance", str(bad))
        assert code == EXIT_INPUT_ERROR
        assert report["status"] == "error"
        assert report["error"]["type"] == "input"

    def test_undecodable_instance(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_bytes(b"\xff\xfe{")
        code, report = run_cli(capsys, "solve-exact", "--instance", str(bad))
        assert code == EXIT_INPUT_ERROR
        assert report["error"]["type"] == "input"

    def test_missing_instance_flag(self, capsys):
        code, _ = run_cli(capsys, "solve-exact")
        assert code == EXIT_INPUT_ERROR

    def test_bad_epsilon(self, capsys, bernoulli_file):
        code, report = run_cli(capsys, "solve-exact", "--instance", str(bernoulli_file),
                               "--epsilon", "1.5")
        assert code == EXIT_INPUT_ERROR
        assert report["error"]["type"] == "config"

    def test_long_instance(self, capsys, tmp_path):
        n = 1500
        inst = Instance(LaminarFamily.of([(range(n), 1)]),
                        tuple(ValueDistribution.two_point(1, Fraction(1, 2)) for _ in range(n)))
        path = save_instance(inst, tmp_path / "long.json")
        code, report = run_cli(capsys, "solve-exact", "--instance", str(path))
        assert code == EXIT_PASS
        assert report["result"]["elements"] == n

    def test_state_budget(self, capsys, tmp_path, monkeypatch):
        from matroid_selection.core.config import config
        path = save_instance(failure_instance(4), tmp_path / "f.json")
        monkeypatch.setattr(config, "MAX_DP_STATES", 2)
        code, report = run_cli(capsys, "solve-exact", "--instance", str(path))
        assert code == EXIT_RESOURCE_ERROR
        assert report["error"]["type"] == "resource"


class TestPtas:
    """ptas"""

    def test_exact_mode(self, capsys, tmp_path):
        path = save_instance(failure_instance(4), tmp_path / "f.json")
        code, report = run_cli(capsys, "ptas", "--instance", str(path), "--epsilon", "1/2",
                               "--K", "4", "--mode", "exact")
        result = report["result"]
        assert code == EXIT_PASS
        assert result["big_bins"] == [0]
        assert result["guarantee_vacuous"]
        assert result["failure_bound"]["vacuous"]
        assert result["mean_gain"] <= float(Fraction(result["opt_exact"]["exact"])) + 1e-6

    def test_monte_carlo_is_deterministic(self, capsys, tmp_path):
        path = save_instance(failure_instance(4), tmp_path / "f.json")
        argv = ["ptas", "--instance", str(path), "--epsilon", "1/2", "--K", "4",
                "--trials", "200", "--seed", "5"]
        _, first = run_cli(capsys, *argv)
        _, second = run_cli(capsys, *argv)
        assert first == second

    def test_graphic_rejected(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "generate", "random", "--graphic", "--n", "3",
                          "--out", str(tmp_path / "g.json"))
        assert code == EXIT_PASS
        code, report = run_cli(capsys, "ptas", "--instance", str(tmp_path / "g.json"))
        assert code == EXIT_INPUT_ERROR


class TestGenerate:
    """generate"""

    def test_anticoncentration(self, capsys):
        code, report = run_cli(capsys, "generate", "anticoncentration", "--r", "2")
        assert code == EXIT_PASS
        assert report["result"]["elements"] == 5
        assert report["result"]["bins"] == 3
        assert "instance" in report["result"]

    def test_random_is_seeded(self, capsys, tmp_path):
        for name in ("a.json", "b.json"):
            run_cli(capsys, "generate", "random", "--n", "7", "--seed", "3",
                    "--out", str(tmp_path / name))
        assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()
        assert load_instance(tmp_path / "a.json").n == 7

    def test_hardness_from_cnf(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 2 2 alternating\n1 0\n2 0\n", encoding="utf-8")
        code, report = run_cli(capsys, "generate", "hardness", "--cnf", str(cnf))
        assert code == EXIT_PASS
        assert report["result"]["edges"] == 8
        assert report["result"]["audit"]["k"] == 1

    def test_embed_from_cnf(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 2 2 alternating\n1 0\n2 0\n", encoding="utf-8")
        code, report = run_cli(capsys, "generate", "embed", "--cnf", str(cnf), "--vertices", "11")
        assert code == EXIT_PASS
        assert report["result"]["edges"] == 55
        assert report["result"]["audit"]["matching_ok"]

    def test_hardness_needs_cnf(self, capsys):
        code, _ = run_cli(capsys, "generate", "hardness")
        assert code == EXIT_INPUT_ERROR

    def test_cnf_without_flag(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 2 1\n1 0\n", encoding="utf-8")
        code, _ = run_cli(capsys, "generate", "hardness", "--cnf", str(cnf))
        assert code == EXIT_INPUT_ERROR


class TestVerify:
    """verify"""

    def test_gadget(self, capsys):
        code, report = run_cli(capsys, "verify", "gadget", "--n-max", "2", "--max-clauses", "1")
        assert code == EXIT_PASS
        assert report["result"]["passed"]
        assert report["result"]["summary"]["failed"] == 0

    def test_failure_prob(self, capsys):
        code, report = run_cli(capsys, "verify", "failure-prob", "--Ks", "4", "--all-checks")
        assert code == EXIT_PASS
        assert report["result"]["checks"][0]["vacuous"]


class TestSummaryText:
    """Console rendering of a report"""

    def test_error_report(self):
        report = ReportGenerator.generate_error_report("ptas", "no instance", EXIT_INPUT_ERROR, "input")
        text = ReportGenerator.generate_summary_text(report)
        assert "ERROR" in text
        assert "no instance" in text
