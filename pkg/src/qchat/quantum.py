"""Exact statevector mechanics for small qubit registers.

Conventions used everywhere in this package:
- qubit 0 is the least-significant bit of a basis index (little-endian),
  matching the convention of the Qiskit code we emit;
- ket labels are the plain binary rendering of the index, so index 2 of a
  two-qubit register is |10> (qubit 1 on the left, qubit 0 on the right);
- structural checks (unitarity) use 1e-12, state-level checks 1e-10.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    IndexOutOfRangeError,
    NonUnitaryInputError,
)

STRUCT_TOL = 1e-12
STATE_TOL = 1e-10

# Display thresholds: 6 significant digits, exact 1/sqrt(2) rendered
# symbolically when the squared magnitude matches within 1e-12.
DISPLAY_DIGITS = 6
_HALF_TOL = 1e-12
_SQRT2_INV = 1 / np.sqrt(2)


@dataclass(frozen=True)
class Statevector:
    """Normalized complex amplitude vector over ``n_qubits`` qubits."""

    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if self.n_qubits < 1:
            raise EmptyInputError("statevector needs at least one qubit")
        if amps.shape != (2**self.n_qubits,):
            raise DimensionMismatchError(
                f"expected {2**self.n_qubits} amplitudes, got {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise NonUnitaryInputError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > STATE_TOL:
            raise NonUnitaryInputError(f"state norm {norm} is not 1")

    @classmethod
    def from_amplitudes(cls, amps) -> "Statevector":
        amps = np.asarray(amps, dtype=complex)
        n = int(np.log2(len(amps)))
        if 2**n != len(amps):
            raise DimensionMismatchError(f"length {len(amps)} is not a power of 2")
        return cls(amps, n)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def tensor_basis_state(bits: list[int]) -> Statevector:
    """Computational basis state with ``bits[b]`` the value of qubit ``b``."""
    if not bits:
        raise EmptyInputError("no qubits given")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bits must be 0 or 1, got {bits}")
    n = len(bits)
    index = sum(b << q for q, b in enumerate(bits))
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return Statevector(amps, n)


def is_unitary(m: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    """True iff max elementwise |U U† - I| <= tol."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    delta = m @ m.conj().T - np.eye(m.shape[0])
    return bool(np.max(np.abs(delta)) <= tol)


def apply_unitary(state: Statevector, u: np.ndarray, targets: list[int]) -> Statevector:
    """Apply ``u`` to the target qubits, identity elsewhere.

    ``targets[j]`` is the qubit carrying bit j of the gate's own index space
    (gate-local little-endian). For a controlled gate whose matrix has the
    control on local bit 0, ``targets[0]`` is the control qubit.
    """
    u = np.asarray(u, dtype=complex)
    n = state.n_qubits
    k = len(targets)
    if u.shape != (2**k, 2**k):
        raise DimensionMismatchError(
            f"{u.shape} matrix cannot act on {k} target qubits"
        )
    if len(set(targets)) != k:
        raise IndexOutOfRangeError(f"targets must be distinct, got {targets}")
    if any(t < 0 or t >= n for t in targets):
        raise IndexOutOfRangeError(f"targets {targets} out of range for {n} qubits")
    if not is_unitary(u, STRUCT_TOL):
        raise NonUnitaryInputError("matrix is not unitary within 1e-12")

    # Reshape to an n-axis tensor; numpy axis a holds qubit (n-1-a), and the
    # reshaped gate's axis for local bit j is (k-1-j) on rows, (2k-1-j) on
    # columns (row-major reshape puts the most significant bit first).
    psi = state.amplitudes.reshape([2] * n)
    gate = u.reshape([2] * (2 * k))
    state_axes = [n - 1 - t for t in targets]
    gate_col_axes = [2 * k - 1 - j for j in range(k)]
    psi = np.tensordot(gate, psi, axes=(gate_col_axes, state_axes))
    # tensordot leaves the gate's row axes first: output axis j is local bit
    # (k-1-j), which belongs at the axis of qubit targets[k-1-j].
    dest = [n - 1 - targets[k - 1 - j] for j in range(k)]
    psi = np.moveaxis(psi, range(k), dest)
    out = psi.reshape(-1)
    # Guard against drift; unitarity makes this a no-op in exact arithmetic.
    norm = np.linalg.norm(out)
    if abs(norm - 1.0) > STATE_TOL:
        raise NonUnitaryInputError(f"norm drifted to {norm}")
    return Statevector(out, n)


def index_to_bits(index: int, n_qubits: int) -> list[int]:
    """Little-endian bit list of a basis index: element b is qubit b."""
    return [(index >> q) & 1 for q in range(n_qubits)]


def ket_label(index: int, n_qubits: int) -> str:
    """Binary label of a basis index, qubit 0 rightmost: index 2 -> '10'."""
    return format(index, f"0{n_qubits}b")


def format_amplitude(c: complex) -> str:
    """Render an amplitude at 6 significant digits, using the exact 1/√2
    form when the squared magnitude is 1/2 within 1e-12."""
    re, im = c.real, c.imag
    if abs(abs(c) ** 2 - 0.5) < _HALF_TOL:
        if abs(im) < _HALF_TOL:
            return "1/√2" if re > 0 else "-1/√2"
        if abs(re) < _HALF_TOL:
            return "i/√2" if im > 0 else "-i/√2"
    if abs(im) < _HALF_TOL:
        return _sig(re)
    if abs(re) < _HALF_TOL:
        return f"{_sig(im)}i"
    sign = "+" if im >= 0 else "-"
    return f"({_sig(re)}{sign}{_sig(abs(im))}i)"


def _sig(x: float) -> str:
    s = f"{x:.{DISPLAY_DIGITS}g}"
    return "0" if s in ("-0", "-0.0") else s


def render_ket(state: Statevector, drop_tol: float = 1e-12) -> str:
    """Ket-notation rendering of a state, e.g. '1/√2|0⟩ - 1/√2|1⟩'."""
    terms = [(z, amp) for z, amp in enumerate(state.amplitudes) if abs(amp) > drop_tol]
    if not terms:
        return "0"
    parts = []
    for pos, (z, amp) in enumerate(terms):
        coef = format_amplitude(amp)
        if coef == "1":
            coef = ""
        elif coef == "-1":
            coef = "-"
        label = ket_label(z, state.n_qubits)
        if pos == 0:
            parts.append(f"{coef}|{label}⟩")
        elif coef.startswith("-"):
            parts.append(f"- {coef[1:]}|{label}⟩")
        else:
            parts.append(f"+ {coef}|{label}⟩")
    return " ".join(parts)


