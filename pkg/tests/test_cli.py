"""CLI subcommands driven through main()."""
import json
from pathlib import Path

import pytest

from qchat.cli import main

FIXTURES = Path(__file__).resolve().parent / "fixtures" / "instances"


class TestAsk:
    def test_define(self, capsys):
        assert main(["ask", "define the hadamard gate"]) == 0
        out = capsys.readouterr().out
        assert "superposition" in out

    def test_draw_includes_code(self, capsys):
        assert main(["ask", "draw the cnot gate"]) == 0
        out = capsys.readouterr().out
        assert "■" in out
        assert "QuantumCircuit" in out

    def test_apply_json_envelope(self, capsys):
        assert main(["ask", "apply the X gate to |0>", "--json"]) == 0
        envelope = json.loads(capsys.readouterr().out)
        assert envelope["final_state"] == "|1⟩"

    def test_unknown_is_capability_summary(self, capsys):
        assert main(["ask", "what is the weather tomorrow"]) == 0
        assert "five kinds of requests" in capsys.readouterr().out

    def test_missing_parameter_fails_loudly(self, capsys):
        assert main(["ask", "apply the phase gate to |0>"]) == 1
        assert "phase_shift" in capsys.readouterr().err

    def test_tsp_emits_code(self, capsys):
        text = (
            "A salesperson wants to visit Bern, Basel and Zurich. Bern to Basel "
            "is 3 km, Bern to Zurich is 4 km and Basel to Zurich is 5 km. "
            "What is the shortest route?"
        )
        assert main(["ask", text]) == 0
        assert "travelling-salesperson" in capsys.readouterr().out.lower()


class TestSolve:
    def test_kp_fixture(self, capsys):
        assert main(["solve", "--kp", str(FIXTURES / "kp3.json"), "--seed", "7", "--json"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["total_value"] == 9

    def test_tsp_fixture(self, capsys):
        assert main(["solve", "--tsp", str(FIXTURES / "tsp3.json"), "--seed", "7", "--json"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["cost"] == 12.0


class TestEval:
    def test_bundled_corpora_pass(self, capsys):
        assert main(["eval"]) == 0
        out = capsys.readouterr().out
        assert "intent classification" in out
        assert "overall" in out
        assert "1.00" in out
        assert "failure_rate" in out
