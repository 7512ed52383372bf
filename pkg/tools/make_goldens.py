"""Pin golden files: gate diagrams and rendered code templates.

The outputs were reviewed by hand (and the code templates executed once
against a live Qiskit >= 1.0 install) before being committed; tests compare
byte-for-byte against these files afterwards.

Run from the repo root:  python3 tools/make_goldens.py
"""
from pathlib import Path

from qchat import codegen
from qchat.gates import GateId, GateParams, catalog, draw_gate, qiskit_call
from qchat.quantum import tensor_basis_state

GOLDEN_DIR = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden"

TSP_FIXTURE_BINDINGS = {
    "city_names": codegen.serialize_value(["Bern", "Basel", "Zurich"]),
    "distance_matrix": codegen.serialize_value(
        [[0.0, 3.0, 4.0], [3.0, 0.0, 5.0], [4.0, 5.0, 0.0]]
    ),
    "penalty": codegen.serialize_number(16.0),
    "seed": codegen.serialize_number(7),
}

KP_FIXTURE_BINDINGS = {
    "item_names": codegen.serialize_value(["apple", "book", "camera"]),
    "weights": codegen.serialize_value([3, 4, 5]),
    "values": codegen.serialize_value([4, 5, 6]),
    "capacity": codegen.serialize_number(7),
    "penalty": codegen.serialize_number(16.0),
    "seed": codegen.serialize_number(7),
}


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)

    for spec in catalog().values():
        if spec.parameter_slots:
            continue
        answer = draw_gate(spec.id)
        (GOLDEN_DIR / f"diagram_{spec.id.value}.txt").write_text(
            answer.diagram.text + "\n", encoding="utf-8"
        )
        (GOLDEN_DIR / f"code_draw_{spec.id.value}.py").write_text(
            answer.code.source_text, encoding="utf-8"
        )

    artifacts = {
        "code_draw_gate_h.py": codegen.render(
            "draw_gate", {"gate_call": "h(0)", "n_qubits": "1"}
        ),
        "code_apply_gate_h.py": codegen.render(
            "apply_gate",
            {
                "gate_call": qiskit_call(GateId.H),
                "n_qubits": "1",
                "initial_amplitudes": codegen.serialize_value(
                    [complex(a) for a in tensor_basis_state([0]).amplitudes]
                ),
            },
        ),
        "code_tsp_solver_fixture.py": codegen.render("tsp_solver", TSP_FIXTURE_BINDINGS),
        "code_kp_solver_fixture.py": codegen.render("kp_solver", KP_FIXTURE_BINDINGS),
    }
    for name, artifact in artifacts.items():
        (GOLDEN_DIR / name).write_text(artifact.source_text, encoding="utf-8")
    print(f"wrote {len(list(GOLDEN_DIR.iterdir()))} golden files to {GOLDEN_DIR}")


if __name__ == "__main__":
    main()
