"""Exact-statevector variational solvers for the Ising models produced by
the QUBO module: a hardware-efficient RY/CZ-ring VQE (used for TSP) and a
QAOA evolution (used for KP), optimized with multi-start Nelder-Mead.

Variational methods are heuristics; correctness comes from the post-hoc
selection step, which ranks the most probable sampled bitstrings by their
*decoded true objective* and returns the best feasible one. The pinned
fixtures assert equality with the brute-force oracle.

Everything is deterministic given (instance, config): seeded starts, seeded
sampling, fixed reduction order across starts.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import (
    BudgetZeroError,
    DimensionMismatchError,
    InstanceTooLargeError,
    NoFeasibleSolutionError,
    TooLargeError,
)
from .qubo import (
    Infeasible,
    IsingModel,
    KpEncoding,
    KpInstance,
    Selection,
    Tour,
    TspEncoding,
    TspInstance,
    kp_to_qubo,
    qubo_to_ising,
    tsp_to_qubo,
)

QUBIT_CEILING = 16  # 2 MB of amplitudes; larger requests get code only

_RETRY_ADVICE = "retry with a different seed or a larger penalty"


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ValueError("need the same positive number of gammas and betas")
        if not all(np.isfinite([*self.gammas, *self.betas])):
            raise ValueError("angles must be finite")

    @property
    def p(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class VqeAnsatz:
    n_qubits: int
    layers: int
    thetas: tuple[float, ...]

    def __post_init__(self):
        expected = self.n_qubits * (self.layers + 1)
        if self.layers < 1:
            raise ValueError("need at least one entangling layer")
        if len(self.thetas) != expected:
            raise ValueError(f"need {expected} angles, got {len(self.thetas)}")


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 7
    qaoa_layers: int = 2
    vqe_layers: int = 2
    shots: int = 4096
    eval_budget: int = 400  # Nelder-Mead evaluations per start (QAOA path)
    n_starts: int = 4
    vqe_sweeps: int = 2  # coordinate-descent sweeps per start (VQE path)
    top_candidates: int = 100
    penalty: float | None = None


@dataclass(frozen=True)
class SolveResult:
    best_bits: tuple[int, ...]
    objective: float  # tour cost, or negated selection value
    energy_history: tuple[float, ...]  # running best expectation value
    evaluations: int
    seed: int


@dataclass(frozen=True)
class OptimizeOutcome:
    best_params: tuple[float, ...]
    best_value: float
    history: tuple[float, ...]
    evaluations: int


def diagonal_energies(ising: IsingModel, n_qubits: int) -> np.ndarray:
    """Ising energy of every basis index; bit b = 0 means spin +1."""
    if n_qubits > QUBIT_CEILING:
        raise TooLargeError(f"{n_qubits} qubits exceed the {QUBIT_CEILING} ceiling")
    if ising.n_spins != n_qubits:
        raise DimensionMismatchError(
            f"model has {ising.n_spins} spins, expected {n_qubits}"
        )
    bits = (np.arange(2**n_qubits)[:, None] >> np.arange(n_qubits)) & 1
    spins = 1 - 2 * bits
    energies = ising.constant + spins @ np.asarray(ising.h, dtype=float)
    for (i, j), c in ising.J.items():
        energies = energies + c * (spins[:, i] * spins[:, j])
    return energies


def _apply_ry(amps: np.ndarray, n: int, qubit: int, theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    view = amps.reshape(-1, 2, 2**qubit)
    a0, a1 = view[:, 0, :], view[:, 1, :]
    out = np.empty_like(view)
    out[:, 0, :] = c * a0 - s * a1
    out[:, 1, :] = s * a0 + c * a1
    return out.reshape(-1)


def _apply_rx(amps: np.ndarray, n: int, qubit: int, theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    view = amps.reshape(-1, 2, 2**qubit)
    a0, a1 = view[:, 0, :], view[:, 1, :]
    out = np.empty_like(view)
    out[:, 0, :] = c * a0 - 1j * s * a1
    out[:, 1, :] = -1j * s * a0 + c * a1
    return out.reshape(-1)


def _cz_ring_mask(n: int) -> np.ndarray:
    """Parity mask: -1 on indices flipped an odd number of times by the ring."""
    idx = np.arange(2**n)
    bits = [(idx >> q) & 1 for q in range(n)]
    pairs = [(q, q + 1) for q in range(n - 1)]
    if n > 2:
        pairs.append((n - 1, 0))
    flips = np.zeros(2**n, dtype=int)
    for a, b in pairs:
        flips += bits[a] & bits[b]
    return np.where(flips % 2 == 1, -1.0, 1.0)


def vqe_state(ansatz: VqeAnsatz):
    """|0...0> through alternating RY layers and CZ rings (layers+1 RY layers)."""
    from .quantum import Statevector

    n = ansatz.n_qubits
    if n > QUBIT_CEILING:
        raise TooLargeError(f"{n} qubits exceed the {QUBIT_CEILING} ceiling")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    ring = _cz_ring_mask(n) if n >= 2 else None
    thetas = np.reshape(ansatz.thetas, (ansatz.layers + 1, n))
    for block in range(ansatz.layers + 1):
        for q in range(n):
            amps = _apply_ry(amps, n, q, thetas[block, q])
        if block < ansatz.layers and ring is not None:
            amps = amps * ring
    return Statevector(amps, n)


def qaoa_state(ising: IsingModel, params: QaoaParams):
    """|+>^n evolved by alternating diagonal cost phases and RX mixers."""
    from .quantum import Statevector

    n = ising.n_spins
    if n > QUBIT_CEILING:
        raise TooLargeError(f"{n} qubits exceed the {QUBIT_CEILING} ceiling")
    energies = diagonal_energies(ising, n)
    amps = np.full(2**n, 1.0 / np.sqrt(2**n), dtype=complex)
    for gamma, beta in zip(params.gammas, params.betas):
        amps = amps * np.exp(-1j * gamma * energies)
        for q in range(n):
            amps = _apply_rx(amps, n, q, 2.0 * beta)
    return Statevector(amps, n)


def expectation(state, energies: np.ndarray) -> float:
    """sum_z |amp_z|^2 * E(z)."""
    probs = state.probabilities()
    if len(probs) != len(energies):
        raise DimensionMismatchError(
            f"state has {len(probs)} amplitudes, energies {len(energies)}"
        )
    return float(probs @ np.asarray(energies, dtype=float))


def _halton(index: int, base: int) -> float:
    value, f = 0.0, 1.0
    while index > 0:
        f /= base
        value += f * (index % base)
        index //= base
    return value


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
           67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
           139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
           211, 223, 227, 229)


def low_discrepancy_starts(
    n_starts: int, dims: int, seed: int, scale: float = np.pi
) -> list[np.ndarray]:
    """Halton points in [0, scale)^dims, offset deterministically by the seed."""
    offset = 1 + (seed % 64)
    points = []
    for k in range(n_starts):
        point = np.array(
            [_halton(offset + k, _PRIMES[d % len(_PRIMES)]) for d in range(dims)]
        )
        points.append(scale * point)
    return points


def optimize(
    objective: Callable[[np.ndarray], float],
    initial: np.ndarray,
    config: SolverConfig = SolverConfig(),
) -> OptimizeOutcome:
    """Multi-start Nelder-Mead; deterministic given config.seed.

    Starts are the given point plus the best candidates of a seeded
    low-discrepancy prescan, so the simplex refines from inside the most
    promising basins instead of wandering a cold landscape.
    """
    if config.eval_budget <= 0:
        raise BudgetZeroError("evaluation budget must be positive")
    initial = np.atleast_1d(np.asarray(initial, dtype=float))

    history: list[float] = []
    evaluations = 0
    best_params, best_value = None, np.inf

    def tracked(x: np.ndarray) -> float:
        nonlocal evaluations
        value = float(objective(x))
        evaluations += 1
        history.append(min(value, history[-1]) if history else value)
        return value

    pool = low_discrepancy_starts(
        max(config.n_starts, 16 * len(initial)), len(initial), config.seed
    )
    scored = sorted(
        ((tracked(point), k) for k, point in enumerate(pool)),
        key=lambda pair: pair,
    )
    starts = [initial] + [pool[k] for _, k in scored[: max(config.n_starts - 1, 0)]]

    for start in starts:
        result = _scipy_minimize(
            tracked,
            start,
            method="Nelder-Mead",
            options={
                "maxfev": config.eval_budget,
                "xatol": 1e-4,
                "fatol": 1e-8,
                "adaptive": len(initial) > 8,
            },
        )
        if result.fun < best_value:  # strict: ties keep the earlier start
            best_params, best_value = np.array(result.x), float(result.fun)
    return OptimizeOutcome(
        best_params=tuple(best_params),
        best_value=best_value,
        history=tuple(history),
        evaluations=evaluations,
    )


def coordinate_minimize(
    objective: Callable[[np.ndarray], float],
    initial: np.ndarray,
    sweeps: int,
) -> OptimizeOutcome:
    """Exact per-coordinate sinusoidal minimization (rotosolve-style).

    Valid whenever each parameter enters the circuit as exp(-i*theta*G/2)
    with G^2 = I, as every RY angle of the VQE ansatz does: the energy is
    then a + b*cos(theta) + c*sin(theta) in each coordinate, so three
    evaluations pin the coefficients and the minimizer in closed form.
    Nelder-Mead stalls on this landscape past ~30 dimensions; this does not.
    """
    if sweeps < 1:
        raise BudgetZeroError("need at least one sweep")
    thetas = np.array(initial, dtype=float)
    history: list[float] = []
    evaluations = 0

    def tracked(x: np.ndarray) -> float:
        nonlocal evaluations
        value = float(objective(x))
        evaluations += 1
        history.append(min(value, history[-1]) if history else value)
        return value

    def eval_with(k: int, angle: float) -> float:
        saved = thetas[k]
        thetas[k] = angle
        value = tracked(thetas)
        thetas[k] = saved
        return value

    for _ in range(sweeps):
        for k in range(len(thetas)):
            e_zero = eval_with(k, 0.0)
            e_plus = eval_with(k, np.pi / 2)
            e_minus = eval_with(k, -np.pi / 2)
            a = 0.5 * (e_plus + e_minus)
            c = 0.5 * (e_plus - e_minus)
            b = e_zero - a
            thetas[k] = float(np.arctan2(-c, -b))
    final = tracked(thetas)
    return OptimizeOutcome(
        best_params=tuple(thetas),
        best_value=final,
        history=tuple(history),
        evaluations=evaluations,
    )


def sample_bits(state, shots: int, rng_seed: int) -> Counter:
    """Seeded i.i.d. draws from |amp|^2, as a Counter over basis indices."""
    if shots < 1:
        raise ValueError("need at least one shot")
    rng = np.random.default_rng(rng_seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    draws = rng.choice(len(probs), size=shots, p=probs)
    return Counter(int(z) for z in draws)


def _top_candidates(samples: Counter, limit: int) -> list[int]:
    """Most frequent sampled indices; ties go to the lower index."""
    return [z for z, _ in sorted(samples.items(), key=lambda kv: (-kv[1], kv[0]))][
        :limit
    ]


def _index_bits(z: int, n: int) -> tuple[int, ...]:
    return tuple((z >> i) & 1 for i in range(n))


def solve_tsp(
    inst: TspInstance, config: SolverConfig = SolverConfig()
) -> tuple[SolveResult, Tour]:
    """tsp_to_qubo -> Ising -> VQE -> best feasible tour among the top
    sampled candidates, ranked by decoded true cost."""
    if inst.n * inst.n > QUBIT_CEILING:
        raise InstanceTooLargeError(
            f"{inst.n} cities need {inst.n**2} qubits; the in-process ceiling is "
            f"{QUBIT_CEILING} (ask for code instead)"
        )
    enc = tsp_to_qubo(inst, config.penalty)
    n = enc.qubo.n_vars
    ising = qubo_to_ising(enc.qubo)
    energies = diagonal_energies(ising, n)

    def objective(thetas: np.ndarray) -> float:
        state = vqe_state(VqeAnsatz(n, config.vqe_layers, tuple(thetas)))
        return expectation(state, energies)

    dims = n * (config.vqe_layers + 1)
    starts = low_discrepancy_starts(config.n_starts, dims, config.seed + 1)
    best_outcome: OptimizeOutcome | None = None
    history: list[float] = []
    evaluations = 0
    for start in starts:
        outcome = coordinate_minimize(objective, start, config.vqe_sweeps)
        evaluations += outcome.evaluations
        running = history[-1] if history else np.inf
        history.extend(min(v, running) for v in outcome.history)
        if best_outcome is None or outcome.best_value < best_outcome.best_value:
            best_outcome = outcome
    final = vqe_state(VqeAnsatz(n, config.vqe_layers, best_outcome.best_params))
    samples = sample_bits(final, config.shots, config.seed)

    best: tuple[float, int, Tour] | None = None
    for z in _top_candidates(samples, config.top_candidates):
        tour = _decode_tour(z, enc)
        if tour is None:
            continue
        key = (tour.cost, z)
        if best is None or key < (best[0], best[1]):
            best = (tour.cost, z, tour)
    if best is None:
        raise NoFeasibleSolutionError(
            f"no feasible tour among the top {config.top_candidates} sampled "
            f"candidates; {_RETRY_ADVICE}"
        )
    cost, z, tour = best
    result = SolveResult(
        best_bits=_index_bits(z, n),
        objective=cost,
        energy_history=tuple(history),
        evaluations=evaluations,
        seed=config.seed,
    )
    return result, tour


def _decode_tour(z: int, enc: TspEncoding) -> Tour | None:
    from .qubo import decode_tsp

    decoded = decode_tsp(_index_bits(z, enc.qubo.n_vars), enc.var_map, enc.instance)
    return decoded if isinstance(decoded, Tour) else None


def solve_kp(
    inst: KpInstance, config: SolverConfig = SolverConfig()
) -> tuple[SolveResult, Selection]:
    """kp_to_qubo -> Ising -> QAOA -> best feasible selection among the top
    sampled candidates, ranked by decoded (negated) value."""
    enc = kp_to_qubo(inst, config.penalty)
    n = enc.qubo.n_vars
    if n > QUBIT_CEILING:
        raise InstanceTooLargeError(
            f"{len(inst.items)} items plus {len(enc.slack_coeffs)} slack bits "
            f"need {n} qubits; the in-process ceiling is {QUBIT_CEILING}"
        )
    ising = qubo_to_ising(enc.qubo)
    energies = diagonal_energies(ising, n)

    def objective(params: np.ndarray) -> float:
        p = config.qaoa_layers
        state = qaoa_state(ising, QaoaParams(tuple(params[:p]), tuple(params[p:])))
        return expectation(state, energies)

    initial = low_discrepancy_starts(1, 2 * config.qaoa_layers, config.seed + 1)[0]
    outcome = optimize(objective, initial, config)
    p = config.qaoa_layers
    final = qaoa_state(
        ising,
        QaoaParams(tuple(outcome.best_params[:p]), tuple(outcome.best_params[p:])),
    )
    samples = sample_bits(final, config.shots, config.seed)

    best: tuple[float, int, Selection] | None = None
    for z in _top_candidates(samples, config.top_candidates):
        selection = _decode_selection(z, enc)
        if selection is None:
            continue
        key = (-float(selection.total_value), z)
        if best is None or key < (best[0], best[1]):
            best = (key[0], z, selection)
    if best is None:
        raise NoFeasibleSolutionError(
            f"no feasible selection among the top {config.top_candidates} sampled "
            f"candidates; {_RETRY_ADVICE}"
        )
    objective_value, z, selection = best
    result = SolveResult(
        best_bits=_index_bits(z, n),
        objective=objective_value,
        energy_history=outcome.history,
        evaluations=outcome.evaluations,
        seed=config.seed,
    )
    return result, selection


def _decode_selection(z: int, enc: KpEncoding) -> Selection | None:
    from .qubo import decode_kp

    decoded = decode_kp(_index_bits(z, enc.qubo.n_vars), enc.var_map, enc.instance)
    return decoded if isinstance(decoded, Selection) else None
