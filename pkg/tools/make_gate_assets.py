"""Write the curated gate definition and diagram assets.

Run from the repo root:  python tools/make_gate_assets.py
"""
from pathlib import Path

ASSET_DIR = Path(__file__).resolve().parents[1] / "src" / "qchat" / "assets" / "gates"

DEFINITIONS = {
    "i": """\
The identity gate (I) leaves a qubit unchanged: I|0⟩ = |0⟩ and I|1⟩ = |1⟩.
It is the do-nothing placeholder of circuit diagrams and the neutral element
of gate composition.

Matrix:
    I = [[1, 0],
         [0, 1]]
""",
    "x": """\
The Pauli-X gate is the quantum bit flip: X|0⟩ = |1⟩ and X|1⟩ = |0⟩, the
quantum counterpart of the classical NOT. On the Bloch sphere it is a π
rotation around the x axis.

Matrix:
    X = [[0, 1],
         [1, 0]]
""",
    "y": """\
The Pauli-Y gate combines a bit flip with a phase flip: Y|0⟩ = i|1⟩ and
Y|1⟩ = -i|0⟩. On the Bloch sphere it is a π rotation around the y axis.

Matrix:
    Y = [[0, -i],
         [i,  0]]
""",
    "z": """\
The Pauli-Z gate is the phase flip: it leaves |0⟩ unchanged and negates the
phase of |1⟩, so Z|0⟩ = |0⟩ and Z|1⟩ = -|1⟩. It is a π rotation around the
z axis and equals the phase gate P(π).

Matrix:
    Z = [[1,  0],
         [0, -1]]
""",
    "s": """\
The S gate applies a quarter-turn phase: S|0⟩ = |0⟩ and S|1⟩ = i|1⟩. It is
the square root of Z and equals the phase gate P(π/2).

Matrix:
    S = [[1, 0],
         [0, i]]
""",
    "sdg": """\
The S† gate (S dagger) is the inverse of S: it leaves |0⟩ unchanged and maps
|1⟩ to -i|1⟩, undoing the quarter-turn phase of S. It equals the phase gate
P(-π/2).

Matrix:
    S† = [[1,  0],
          [0, -i]]
""",
    "h": """\
The Hadamard gate maps the computational basis states to equal
superpositions: H|0⟩ = (|0⟩ + |1⟩)/√2 and H|1⟩ = (|0⟩ - |1⟩)/√2. Applying
it twice restores the original state (H·H = I).

Matrix:
    H = 1/√2 · [[1,  1],
                [1, -1]]
""",
    "phase": """\
The phase gate P(φ) leaves |0⟩ unchanged and multiplies |1⟩ by the phase
factor e^(iφ). Here φ = {phase_shift} rad. Special cases: P(π/2) = S,
P(π) = Z, and P(-π/2) = S†.

Matrix:
    P(φ) = [[1, 0],
            [0, e^(iφ)]]
""",
    "rx": """\
The Rx(θ) gate rotates the qubit by θ around the x axis of the Bloch
sphere, using the half-angle convention Rx(θ) = exp(-iθX/2). Here
θ = {angle} rad.

Matrix:
    Rx(θ) = [[cos(θ/2),   -i·sin(θ/2)],
             [-i·sin(θ/2), cos(θ/2)]]
""",
    "ry": """\
The Ry(θ) gate rotates the qubit by θ around the y axis of the Bloch
sphere, using the half-angle convention Ry(θ) = exp(-iθY/2). Its matrix is
real, so it keeps real amplitudes real. Here θ = {angle} rad.

Matrix:
    Ry(θ) = [[cos(θ/2), -sin(θ/2)],
             [sin(θ/2),  cos(θ/2)]]
""",
    "rz": """\
The Rz(θ) gate rotates the qubit by θ around the z axis of the Bloch
sphere, using the half-angle convention Rz(θ) = exp(-iθZ/2): each basis
state picks up an opposite half-angle phase. Here θ = {angle} rad.

Matrix:
    Rz(θ) = [[e^(-iθ/2), 0],
             [0,  e^(iθ/2)]]
""",
    "cnot": """\
The CNOT (controlled-X) gate flips the target qubit exactly when the
control qubit is |1⟩. With control qubit 0 and target qubit 1 it maps
|00⟩ → |00⟩, |01⟩ → |11⟩, |10⟩ → |10⟩ and |11⟩ → |01⟩ (labels written
qubit 1 first, qubit 0 last). Applied after a Hadamard it turns a product
state into a Bell pair, which makes it the standard entangling gate.

Matrix (control = qubit 0; little-endian basis order 00, 01, 10, 11):
    CNOT = [[1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, 1, 0, 0]]
""",
    "cz": """\
The CZ (controlled-Z) gate flips the phase of |11⟩ and leaves the other
basis states unchanged. It is symmetric: either qubit can be read as the
control.

Matrix (basis order 00, 01, 10, 11):
    CZ = [[1, 0, 0,  0],
          [0, 1, 0,  0],
          [0, 0, 1,  0],
          [0, 0, 0, -1]]
""",
    "swap": """\
The SWAP gate exchanges the states of two qubits: |01⟩ ↔ |10⟩, while |00⟩
and |11⟩ stay put. Three alternating CNOT gates implement the same
operation.

Matrix (basis order 00, 01, 10, 11):
    SWAP = [[1, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1]]
""",
}


def boxed(label: str) -> str:
    inner = f" {label} "
    top = "     ┌" + "─" * len(inner) + "┐"
    mid = "q_0: ┤" + inner + "├"
    bot = "     └" + "─" * len(inner) + "┘"
    return "\n".join([top, mid, bot]) + "\n"


def two_wire(top_symbol: str, bottom_symbol: str) -> str:
    lines = [
        f"q_0: ──{top_symbol}──",
        "       │  ",
        f"q_1: ──{bottom_symbol}──",
    ]
    return "\n".join(lines) + "\n"


DIAGRAMS = {
    "i": boxed("I"),
    "x": boxed("X"),
    "y": boxed("Y"),
    "z": boxed("Z"),
    "s": boxed("S"),
    "sdg": boxed("S†"),
    "h": boxed("H"),
    "phase": boxed("P({phase_shift})"),
    "rx": boxed("Rx({angle})"),
    "ry": boxed("Ry({angle})"),
    "rz": boxed("Rz({angle})"),
    "cnot": two_wire("■", "⊕"),
    "cz": two_wire("■", "■"),
    "swap": two_wire("╳", "╳"),
}


def main() -> None:
    ASSET_DIR.mkdir(parents=True, exist_ok=True)
    for gate, text in DEFINITIONS.items():
        (ASSET_DIR / f"{gate}.def.txt").write_text(text, encoding="utf-8")
    for gate, diagram in DIAGRAMS.items():
        (ASSET_DIR / f"{gate}.diagram.txt").write_text(diagram, encoding="utf-8")
    print(f"wrote {len(DEFINITIONS)} definitions and {len(DIAGRAMS)} diagrams")


if __name__ == "__main__":
    main()
