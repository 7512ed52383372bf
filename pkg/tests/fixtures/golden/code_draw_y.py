# Draw a quantum gate as a circuit diagram.
# Requires: qiskit >= 1.0  (pip install qiskit)
from qiskit import QuantumCircuit

# Build a circuit holding just this gate. Qubits are numbered from 0,
# with qubit 0 drawn on the top wire.
circuit = QuantumCircuit(1)
circuit.y(0)

# Print the circuit as text; pass output="mpl" to draw() for a figure.
print(circuit.draw(output="text"))
