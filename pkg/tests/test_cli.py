"""
Tests for the command line interface
"""

import json

import pytest
from click.testing import CliRunner

from pacing_reduction.circuit.gates import Circuit, Gate, GateKind
from pacing_reduction.cli import cli
from pacing_reduction.storage.documents import serialize_circuit
from tests.circuit_factory import not_cycle, two_not_cycle


@pytest.fixture
def runner():
    return CliRunner()


def write_circuit(path, circuit):
    path.write_text(serialize_circuit(circuit), encoding="utf-8")
    return str(path)


@pytest.fixture
def compiled(runner, tmp_path):
    """The NOT 2-cycle compiled into tmp_path"""
    circuit_path = write_circuit(tmp_path / "two.circuit.json", two_not_cycle())
    result = runner.invoke(cli, ["compile", circuit_path, "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    return tmp_path / "two.game.json", tmp_path / "two.mapping.json"


def test_compile_writes_game_and_mapping(compiled, runner, tmp_path):
    """Test compile output files and summary"""
    game_path, mapping_path = compiled
    assert game_path.exists() and mapping_path.exists()
    assert json.loads(mapping_path.read_text())["variant"] == "main"
    result = runner.invoke(cli, ["compile", write_circuit(tmp_path / "c.json", not_cycle(3)),
                                 "--out", str(tmp_path / "out"), "--variant", "weak"])
    assert result.exit_code == 0, result.output
    assert "buyers: 6" in result.output
    assert "degree rule: holds" in result.output
    assert (tmp_path / "out" / "c.game.json").exists()


def test_compile_parameter_errors(runner, tmp_path):
    """Test out-of-range gamma and gamma on the weak variant exit with 2"""
    circuit_path = write_circuit(tmp_path / "two.json", two_not_cycle())
    result = runner.invoke(cli, ["compile", circuit_path, "--gamma", "1/3", "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "gamma" in result.output
    result = runner.invoke(cli, ["compile", circuit_path, "--variant", "weak", "--gamma", "1/10",
                                 "--out", str(tmp_path)])
    assert result.exit_code == 2
    result = runner.invoke(cli, ["compile", circuit_path, "--gamma", "0.1.2"])
    assert result.exit_code == 2


def test_compile_rewrites_purify(runner, tmp_path):
    """Test PURIFY circuits are rewritten unless disabled"""
    circuit = Circuit(3, (Gate(GateKind.PURIFY, 1, 2, 3), Gate(GateKind.NOT, 2, 1)))
    circuit_path = write_circuit(tmp_path / "purify.json", circuit)
    result = runner.invoke(cli, ["compile", circuit_path, "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "buyers: 10" in result.output
    result = runner.invoke(cli, ["compile", circuit_path, "--out", str(tmp_path), "--no-rewrite-purify"])
    assert result.exit_code == 2


def test_solve_verify_decode_pipeline(compiled, runner, tmp_path):
    """Test solve -> verify -> decode on the NOT 2-cycle"""
    game_path, mapping_path = compiled
    eq_path = tmp_path / "eq.json"
    result = runner.invoke(cli, ["solve", str(game_path), "--mapping", str(mapping_path), "--out", str(eq_path)])
    assert result.exit_code == 0, result.output
    assert "2 equilibria" in result.output
    assert len(json.loads(eq_path.read_text())) == 2

    report_path = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", str(game_path), str(eq_path), "--report", str(report_path)])
    assert result.exit_code == 0, result.output
    assert json.loads(report_path.read_text())["valid"] is True

    result = runner.invoke(cli, ["decode", str(mapping_path), str(eq_path)])
    assert result.exit_code == 0, result.output
    assert "equilibrium 0: 01 (satisfying)" in result.output
    assert "equilibrium 1: 10 (satisfying)" in result.output


def test_verify_reports_invalid_equilibria(compiled, runner, tmp_path):
    """Test a tampered multiplier makes verify exit with 1"""
    game_path, mapping_path = compiled
    eq_path = tmp_path / "eq.json"
    runner.invoke(cli, ["solve", str(game_path), "--mapping", str(mapping_path), "--out", str(eq_path)])
    data = json.loads(eq_path.read_text())
    data[0]["alpha"]["c_2"] = "1/2"
    eq_path.write_text(json.dumps(data), encoding="utf-8")

    report_path = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", str(game_path), str(eq_path), "--report", str(report_path)])
    assert result.exit_code == 1
    report = json.loads(report_path.read_text())
    assert report["valid"] is False
    assert report["violations"]

    result = runner.invoke(cli, ["verify", str(game_path), str(eq_path),
                                 "--mapping", str(mapping_path), "--sigma", "1/20"])
    assert result.exit_code == 2


def test_decode_rejects_incomplete_mapping(compiled, runner, tmp_path):
    """Test a mapping missing a node buyer is a document error"""
    game_path, mapping_path = compiled
    eq_path = tmp_path / "eq.json"
    runner.invoke(cli, ["solve", str(game_path), "--mapping", str(mapping_path), "--out", str(eq_path)])
    data = json.loads(mapping_path.read_text())
    del data["node_buyer"]["2"]
    broken = tmp_path / "broken.mapping.json"
    broken.write_text(json.dumps(data), encoding="utf-8")
    result = runner.invoke(cli, ["decode", str(broken), str(eq_path)])
    assert result.exit_code == 2
    assert "node_buyer" in result.output


def test_mapping_from_another_circuit_is_refused(compiled, runner, tmp_path):
    """Test solve and verify refuse a mapping compiled from a different circuit"""
    game_path, mapping_path = compiled
    eq_path = tmp_path / "eq.json"
    runner.invoke(cli, ["solve", str(game_path), "--mapping", str(mapping_path), "--out", str(eq_path)])
    other = tmp_path / "other"
    circuit_path = write_circuit(tmp_path / "three.json", not_cycle(3))
    assert runner.invoke(cli, ["compile", circuit_path, "--out", str(other)]).exit_code == 0
    other_game = other / "three.game.json"

    result = runner.invoke(cli, ["solve", str(other_game), "--mapping", str(mapping_path)])
    assert result.exit_code == 2
    assert "does not belong" in result.output
    result = runner.invoke(cli, ["verify", str(game_path), str(eq_path), "--mapping", str(other / "three.mapping.json")])
    assert result.exit_code == 2


def test_solve_requires_a_grid(compiled, runner):
    """Test solve without any grid option is a usage error"""
    game_path, _ = compiled
    result = runner.invoke(cli, ["solve", str(game_path)])
    assert result.exit_code == 2
    result = runner.invoke(cli, ["solve", str(game_path), "--grid", "1/2,3"])
    assert result.exit_code == 2


def test_solve_limit(compiled, runner):
    """Test the profile limit is enforced"""
    game_path, mapping_path = compiled
    result = runner.invoke(cli, ["solve", str(game_path), "--mapping", str(mapping_path), "--limit", "2"])
    assert result.exit_code == 2
    assert "limit" in result.output


def test_solve_generic_grid_to_file(runner, tmp_path):
    """Test a general game solved on q/D for every buyer"""
    game_path = tmp_path / "tie.json"
    game_path.write_text(json.dumps({
        "n": 2, "m": 1, "budgets": ["1", "1"],
        "values": [{"buyer": 0, "good": 0, "value": "2"}, {"buyer": 1, "good": 0, "value": "2"}],
    }), encoding="utf-8")
    eq_path = tmp_path / "eq.json"
    result = runner.invoke(cli, ["solve", str(game_path), "--generic-grid", "2", "--out", str(eq_path)])
    assert result.exit_code == 0, result.output
    (entry,) = json.loads(eq_path.read_text())
    assert entry["alpha"] == {"buyer_0": "1/1", "buyer_1": "1/1"}


def test_roundtrip_command(runner, tmp_path):
    """Test roundtrip on an even and an odd NOT cycle"""
    result = runner.invoke(cli, ["roundtrip", write_circuit(tmp_path / "two.json", two_not_cycle())])
    assert result.exit_code == 0, result.output
    assert "equilibria found on grid: 2" in result.output
    assert "roundtrip: ok" in result.output

    odd = write_circuit(tmp_path / "three.json", not_cycle(3))
    result = runner.invoke(cli, ["roundtrip", odd])
    assert result.exit_code == 0, result.output
    assert "none found on grid; try --refine" in result.output
    assert "roundtrip: ok (vacuous" in result.output

    result = runner.invoke(cli, ["roundtrip", odd, "--refine"])
    assert result.exit_code == 0, result.output
    assert "⊥⊥⊥" in result.output
    assert "vacuous" not in result.output

    result = runner.invoke(cli, ["roundtrip", odd, "--variant", "weak", "--refine"])
    assert result.exit_code == 0, result.output


def test_validate_circuit_command(runner, tmp_path):
    """Test structure reports and exit codes"""
    good = write_circuit(tmp_path / "good.json", two_not_cycle())
    result = runner.invoke(cli, ["validate-circuit", good])
    assert result.exit_code == 0
    assert "node 1: d_in=1 d_out=1" in result.output

    bad = write_circuit(tmp_path / "bad.json", Circuit(2, (Gate(GateKind.NOT, 1, 2),)))
    result = runner.invoke(cli, ["validate-circuit", bad])
    assert result.exit_code == 1
    assert "unique-output" in result.output


def test_bad_documents_exit_with_usage_code(runner, tmp_path):
    """Test unreadable inputs map to exit code 2"""
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert runner.invoke(cli, ["validate-circuit", str(broken)]).exit_code == 2
    assert runner.invoke(cli, ["validate-circuit", str(tmp_path / "absent.json")]).exit_code == 2


def test_version(runner):
    """Test --version"""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "pacing-reduction" in result.output


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
