"""The 14-gate catalog: curated definitions, circuit diagrams, matrices, and
the three foundational answers (define, draw, apply).

Two-qubit convention: control = qubit 0 for CNOT and CZ; diagrams label the
wires q_0 (top) and q_1 (bottom). Rotation gates use the half-angle
convention exp(-i·θ·σ/2), matching the emitted Qiskit code so the engine and
the generated code agree on every amplitude.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import codegen
from .errors import (
    ArityMismatchError,
    MissingParameterError,
    UnexpectedParameterError,
    UnknownGateError,
)
from .quantum import Statevector, _sig, apply_unitary, render_ket

_ASSET_DIR = Path(__file__).resolve().parent / "assets" / "gates"

# Parameter values inside diagrams are rendered at 4 significant digits;
# definition texts use the package-wide 6.
_DIAGRAM_DIGITS = 4


class GateId(str, Enum):
    I = "i"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    H = "h"
    PHASE = "phase"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cnot"
    CZ = "cz"
    SWAP = "swap"


PARAMETER_NAMES = ("phase_shift", "angle", "axis")


@dataclass(frozen=True)
class GateParams:
    """Parameter values extracted for a gate request; populated fields must
    match the gate's declared slots exactly."""

    phase_shift: float | None = None
    angle: float | None = None
    axis: str | None = None

    def populated(self) -> set[str]:
        return {name for name in PARAMETER_NAMES if getattr(self, name) is not None}


@dataclass(frozen=True)
class GateSpec:
    id: GateId
    display_name: str
    aliases: tuple[str, ...]
    arity: int
    parameter_slots: tuple[str, ...]
    definition_template: str
    diagram_template: str


@dataclass(frozen=True)
class CircuitDiagram:
    lines: tuple[str, ...]

    def __post_init__(self):
        widths = {len(line) for line in self.lines}
        if len(widths) > 1:
            raise ValueError(f"diagram lines have unequal widths: {sorted(widths)}")

    @property
    def text(self) -> str:
        return "\n".join(self.lines)


@dataclass(frozen=True)
class DefinitionAnswer:
    text: str
    matrix: np.ndarray


@dataclass(frozen=True)
class DrawAnswer:
    diagram: CircuitDiagram
    code: codegen.CodeArtifact


@dataclass(frozen=True)
class ApplyAnswer:
    final: Statevector
    rendered_text: str
    code: codegen.CodeArtifact


_CATALOG_TABLE = [
    # (id, display name, aliases, arity, slots)
    (GateId.I, "Identity", ("i", "id", "identity"), 1, ()),
    (GateId.X, "Pauli-X", ("x", "not", "not gate", "bit flip", "bit-flip", "pauli x", "sigma x"), 1, ()),
    (GateId.Y, "Pauli-Y", ("y", "pauli y", "sigma y"), 1, ()),
    (GateId.Z, "Pauli-Z", ("z", "pauli z", "phase flip", "phase-flip", "sigma z"), 1, ()),
    (GateId.S, "S", ("s",), 1, ()),
    (GateId.SDG, "S-dagger", ("sdg", "s dagger", "s†", "sdagger", "s adjoint", "s dg"), 1, ()),
    (GateId.H, "Hadamard", ("h", "hadamard"), 1, ()),
    (GateId.PHASE, "Phase", ("p", "phase", "phase shift", "phase-shift"), 1, ("phase_shift",)),
    (GateId.RX, "Rx", ("rx", "x rotation", "x-rotation", "rotation around x"), 1, ("angle",)),
    (GateId.RY, "Ry", ("ry", "y rotation", "y-rotation", "rotation around y"), 1, ("angle",)),
    (GateId.RZ, "Rz", ("rz", "z rotation", "z-rotation", "rotation around z"), 1, ("angle",)),
    (GateId.CNOT, "CNOT", ("cnot", "cx", "controlled x", "controlled-x", "controlled not", "controlled-not"), 2, ()),
    (GateId.CZ, "CZ", ("cz", "controlled z", "controlled-z"), 2, ()),
    (GateId.SWAP, "SWAP", ("swap", "exchange"), 2, ()),
]


@lru_cache(maxsize=1)
def catalog() -> dict[GateId, GateSpec]:
    specs = {}
    for gate_id, name, aliases, arity, slots in _CATALOG_TABLE:
        definition = (_ASSET_DIR / f"{gate_id.value}.def.txt").read_text(encoding="utf-8")
        diagram = (_ASSET_DIR / f"{gate_id.value}.diagram.txt").read_text(encoding="utf-8")
        specs[gate_id] = GateSpec(
            id=gate_id,
            display_name=name,
            aliases=aliases,
            arity=arity,
            parameter_slots=slots,
            definition_template=definition,
            diagram_template=diagram,
        )
    return specs


@lru_cache(maxsize=1)
def _alias_table() -> dict[str, GateId]:
    table = {}
    for spec in catalog().values():
        for name in (spec.display_name, *spec.aliases):
            table[_normalize(name)] = spec.id
    return table


def _normalize(name: str) -> str:
    cleaned = name.lower().replace("-", " ").replace("_", " ")
    return re.sub(r"\s+", " ", cleaned).strip()


def lookup_gate(name: str) -> GateSpec:
    """Resolve a gate case-insensitively over display names and aliases."""
    table = _alias_table()
    key = _normalize(name)
    for candidate in (key, key.removeprefix("the "), key.removesuffix(" gate"),
                      key.removeprefix("the ").removesuffix(" gate")):
        if candidate in table:
            return catalog()[table[candidate]]
    raise UnknownGateError(name)


def _check_params(spec: GateSpec, params: GateParams) -> None:
    populated = params.populated()
    required = set(spec.parameter_slots)
    missing = required - populated
    if missing:
        raise MissingParameterError(
            f"{spec.display_name} needs parameter(s): {sorted(missing)}"
        )
    extra = populated - required
    if extra:
        raise UnexpectedParameterError(
            f"{spec.display_name} takes no parameter(s): {sorted(extra)}"
        )


def gate_matrix(gate_id: GateId, params: GateParams = GateParams()) -> np.ndarray:
    """Standard matrix of a catalog gate (little-endian two-qubit basis)."""
    _check_params(catalog()[gate_id], params)
    if gate_id is GateId.I:
        return np.eye(2, dtype=complex)
    if gate_id is GateId.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if gate_id is GateId.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if gate_id is GateId.Z:
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if gate_id is GateId.S:
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if gate_id is GateId.SDG:
        return np.array([[1, 0], [0, -1j]], dtype=complex)
    if gate_id is GateId.H:
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    if gate_id is GateId.PHASE:
        return np.array([[1, 0], [0, np.exp(1j * params.phase_shift)]], dtype=complex)
    if gate_id in (GateId.RX, GateId.RY, GateId.RZ):
        half = params.angle / 2.0
        c, s = np.cos(half), np.sin(half)
        if gate_id is GateId.RX:
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if gate_id is GateId.RY:
            return np.array([[c, -s], [s, c]], dtype=complex)
        return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)
    # Two-qubit gates; basis order 00, 01, 10, 11 with qubit 0 least significant.
    if gate_id is GateId.CNOT:
        return np.array(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
        )
    if gate_id is GateId.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if gate_id is GateId.SWAP:
        return np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
        )
    raise UnknownGateError(str(gate_id))


def _substitute(template: str, params: GateParams, digits: int) -> str:
    out = template
    if params.phase_shift is not None:
        out = out.replace("{phase_shift}", _round_sig(params.phase_shift, digits))
    if params.angle is not None:
        out = out.replace("{angle}", _round_sig(params.angle, digits))
    return out


def _round_sig(value: float, digits: int) -> str:
    if digits == 4:
        s = f"{value:.4g}"
        return "0" if s in ("-0", "-0.0") else s
    return _sig(value)


def define_gate(gate_id: GateId, params: GateParams = GateParams()) -> DefinitionAnswer:
    """Curated definition text plus the concrete matrix. Definitions stay
    textual: no code artifact is attached."""
    spec = catalog()[gate_id]
    matrix = gate_matrix(gate_id, params)
    text = _substitute(spec.definition_template, params, digits=6).rstrip("\n")
    return DefinitionAnswer(text=text, matrix=matrix)


def _fix_box_borders(lines: list[str]) -> list[str]:
    """Redraw box borders around substituted labels so widths line up."""
    out = list(lines)
    for i, line in enumerate(out):
        if "┤" not in line or "├" not in line:
            continue
        start, end = line.index("┤"), line.index("├")
        inner = end - start - 1
        for j, (lcorner, rcorner) in ((i - 1, ("┌", "┐")), (i + 1, ("└", "┘"))):
            if 0 <= j < len(out) and (lcorner in out[j] or rcorner in out[j]):
                out[j] = " " * start + lcorner + "─" * inner + rcorner
    width = max(len(line) for line in out)
    return [line.ljust(width) for line in out]


def draw_gate(gate_id: GateId, params: GateParams = GateParams()) -> DrawAnswer:
    """Circuit diagram from the curated assets plus ready-to-run code."""
    spec = catalog()[gate_id]
    _check_params(spec, params)
    raw = _substitute(spec.diagram_template, params, digits=_DIAGRAM_DIGITS)
    diagram = CircuitDiagram(tuple(_fix_box_borders(raw.rstrip("\n").split("\n"))))
    code = codegen.render(
        "draw_gate",
        {"gate_call": qiskit_call(gate_id, params), "n_qubits": str(spec.arity)},
    )
    return DrawAnswer(diagram=diagram, code=code)


def apply_gate(
    gate_id: GateId, params: GateParams, initial: Statevector
) -> ApplyAnswer:
    """Apply the gate to the whole register (qubits in order) and render the
    resulting state in ket notation, alongside code that reproduces it."""
    spec = catalog()[gate_id]
    if initial.n_qubits != spec.arity:
        raise ArityMismatchError(
            f"{spec.display_name} acts on {spec.arity} qubit(s), "
            f"got a {initial.n_qubits}-qubit state"
        )
    matrix = gate_matrix(gate_id, params)
    final = apply_unitary(initial, matrix, targets=list(range(spec.arity)))
    rendered = f"Final state: {render_ket(final)}"
    code = codegen.render(
        "apply_gate",
        {
            "gate_call": qiskit_call(gate_id, params),
            "n_qubits": str(spec.arity),
            "initial_amplitudes": codegen.serialize_value(
                [complex(a) for a in initial.amplitudes]
            ),
        },
    )
    return ApplyAnswer(final=final, rendered_text=rendered, code=code)


def qiskit_call(gate_id: GateId, params: GateParams = GateParams()) -> str:
    """The QuantumCircuit method call implementing this gate in emitted code."""
    _check_params(catalog()[gate_id], params)
    simple = {
        GateId.I: "id(0)",
        GateId.X: "x(0)",
        GateId.Y: "y(0)",
        GateId.Z: "z(0)",
        GateId.S: "s(0)",
        GateId.SDG: "sdg(0)",
        GateId.H: "h(0)",
        GateId.CNOT: "cx(0, 1)",
        GateId.CZ: "cz(0, 1)",
        GateId.SWAP: "swap(0, 1)",
    }
    if gate_id in simple:
        return simple[gate_id]
    if gate_id is GateId.PHASE:
        return f"p({codegen.serialize_number(params.phase_shift)}, 0)"
    return f"{gate_id.value}({codegen.serialize_number(params.angle)}, 0)"
