"""Variational solvers against dense-matrix, grid-scan and DP oracles."""
import numpy as np
import pytest

from qchat.errors import (
    BudgetZeroError,
    DimensionMismatchError,
    InstanceTooLargeError,
)
from qchat.qubo import IsingModel, KpInstance, TspInstance, qubo_to_ising, tsp_to_qubo
from qchat.variational import (
    OptimizeOutcome,
    QaoaParams,
    SolverConfig,
    VqeAnsatz,
    coordinate_minimize,
    diagonal_energies,
    expectation,
    low_discrepancy_starts,
    optimize,
    qaoa_state,
    sample_bits,
    solve_kp,
    solve_tsp,
    vqe_state,
)

RY = lambda t: np.array(
    [[np.cos(t / 2), -np.sin(t / 2)], [np.sin(t / 2), np.cos(t / 2)]], dtype=complex
)
RX = lambda t: np.array(
    [[np.cos(t / 2), -1j * np.sin(t / 2)], [-1j * np.sin(t / 2), np.cos(t / 2)]],
    dtype=complex,
)


def dense_single(gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Full operator via kron; axis order puts qubit n-1 most significant."""
    out = np.array([[1.0 + 0j]])
    for q in reversed(range(n)):
        out = np.kron(out, gate if q == qubit else np.eye(2, dtype=complex))
    return out


def dense_cz(a: int, b: int, n: int) -> np.ndarray:
    diag = np.ones(2**n, dtype=complex)
    for z in range(2**n):
        if (z >> a) & 1 and (z >> b) & 1:
            diag[z] = -1.0
    return np.diag(diag)


def ising_energy_by_loop(ising: IsingModel, z: int) -> float:
    """Independent per-assignment evaluation: bit 0 means spin +1."""
    spins = [1 - 2 * ((z >> i) & 1) for i in range(ising.n_spins)]
    e = ising.constant + sum(h * s for h, s in zip(ising.h, spins))
    for (i, j), c in ising.J.items():
        e += c * spins[i] * spins[j]
    return e


def random_ising(n: int, seed: int) -> IsingModel:
    rng = np.random.default_rng(seed)
    J = {
        (i, j): float(rng.normal())
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.8
    }
    return IsingModel(h=tuple(rng.normal(size=n)), J=J, constant=float(rng.normal()))


class TestDiagonalEnergies:
    def test_zero_model(self):
        ising = IsingModel(h=(0.0, 0.0), J={}, constant=0.0)
        np.testing.assert_array_equal(diagonal_energies(ising, 2), np.zeros(4))

    def test_single_spin_sign_convention(self):
        # bit 0 <=> spin +1, so index 0 carries energy +1
        ising = IsingModel(h=(1.0,), J={}, constant=0.0)
        np.testing.assert_array_equal(diagonal_energies(ising, 1), [1.0, -1.0])

    def test_matches_per_assignment_loop(self):
        ising = random_ising(4, seed=9)
        energies = diagonal_energies(ising, 4)
        for z in range(16):
            assert energies[z] == pytest.approx(ising_energy_by_loop(ising, z))


class TestQaoaState:
    def test_zero_angles_leave_uniform_superposition(self):
        ising = random_ising(3, seed=2)
        state = qaoa_state(ising, QaoaParams((0.0,), (0.0,)))
        np.testing.assert_allclose(
            state.amplitudes, np.full(8, 1 / np.sqrt(8)), atol=1e-12
        )

    def test_pure_mixer_keeps_uniform_probabilities(self):
        ising = random_ising(2, seed=3)
        state = qaoa_state(ising, QaoaParams((0.0,), (np.pi / 2,)))
        np.testing.assert_allclose(state.probabilities(), np.full(4, 0.25), atol=1e-10)

    def test_matches_dense_evolution_oracle(self):
        ising = random_ising(2, seed=4)
        rng = np.random.default_rng(5)
        gammas = tuple(rng.uniform(0, np.pi, 2))
        betas = tuple(rng.uniform(0, np.pi, 2))
        state = qaoa_state(ising, QaoaParams(gammas, betas))

        # oracle: build the full 4x4 evolution explicitly
        psi = np.full(4, 0.5, dtype=complex)
        phases = np.array([ising_energy_by_loop(ising, z) for z in range(4)])
        for gamma, beta in zip(gammas, betas):
            psi = np.diag(np.exp(-1j * gamma * phases)) @ psi
            mixer = dense_single(RX(2 * beta), 0, 2) @ dense_single(RX(2 * beta), 1, 2)
            psi = mixer @ psi
        np.testing.assert_allclose(state.amplitudes, psi, atol=1e-10)

    def test_norm_preserved(self):
        ising = random_ising(3, seed=6)
        rng = np.random.default_rng(7)
        for _ in range(10):
            params = QaoaParams(
                tuple(rng.uniform(-np.pi, np.pi, 2)), tuple(rng.uniform(-np.pi, np.pi, 2))
            )
            state = qaoa_state(ising, params)
            assert abs(np.linalg.norm(state.amplitudes) - 1.0) <= 1e-10


class TestVqeState:
    def test_zero_angles_fix_the_vacuum(self):
        state = vqe_state(VqeAnsatz(3, 2, (0.0,) * 9))
        expected = np.zeros(8)
        expected[0] = 1.0
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)

    def test_pi_rotation_excites_single_qubit(self):
        state = vqe_state(VqeAnsatz(1, 1, (np.pi, 0.0)))
        np.testing.assert_allclose(state.amplitudes, [0.0, 1.0], atol=1e-12)

    def test_matches_dense_circuit_oracle(self):
        n, layers = 3, 2
        rng = np.random.default_rng(8)
        thetas = tuple(rng.uniform(-np.pi, np.pi, n * (layers + 1)))
        state = vqe_state(VqeAnsatz(n, layers, thetas))

        psi = np.zeros(8, dtype=complex)
        psi[0] = 1.0
        grid = np.reshape(thetas, (layers + 1, n))
        ring = dense_cz(0, 1, n) @ dense_cz(1, 2, n) @ dense_cz(2, 0, n)
        for block in range(layers + 1):
            for q in range(n):
                psi = dense_single(RY(grid[block, q]), q, n) @ psi
            if block < layers:
                psi = ring @ psi
        np.testing.assert_allclose(state.amplitudes, psi, atol=1e-10)

    def test_norm_preserved(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            thetas = tuple(rng.uniform(-np.pi, np.pi, 8))
            state = vqe_state(VqeAnsatz(4, 1, thetas))
            assert abs(np.linalg.norm(state.amplitudes) - 1.0) <= 1e-10


class TestExpectation:
    def test_basis_state_returns_its_energy(self):
        from qchat.quantum import tensor_basis_state

        energies = np.array([3.0, -1.0, 2.0, 5.0])
        state = tensor_basis_state([0, 1])  # index 2
        assert expectation(state, energies) == pytest.approx(2.0)

    def test_uniform_state_returns_mean(self):
        ising = IsingModel(h=(0.0, 0.0), J={}, constant=0.0)
        state = qaoa_state(ising, QaoaParams((0.0,), (0.0,)))
        energies = np.array([1.0, 2.0, 3.0, 6.0])
        assert expectation(state, energies) == pytest.approx(3.0)

    def test_matches_shuffled_summation(self):
        rng = np.random.default_rng(11)
        ising = random_ising(3, seed=12)
        state = qaoa_state(ising, QaoaParams((0.3,), (0.7,)))
        energies = rng.normal(size=8)
        order = rng.permutation(8)
        by_hand = sum(abs(state.amplitudes[z]) ** 2 * energies[z] for z in order)
        assert expectation(state, energies) == pytest.approx(by_hand, abs=1e-10)

    def test_dimension_mismatch(self):
        from qchat.quantum import tensor_basis_state

        with pytest.raises(DimensionMismatchError):
            expectation(tensor_basis_state([0]), np.zeros(4))


class TestOptimize:
    def test_convex_parabola(self):
        outcome = optimize(lambda x: (x[0] - 2.0) ** 2, np.array([0.0]))
        assert outcome.best_value <= 1e-6

    def test_constant_objective_exhausts_budget(self):
        config = SolverConfig(eval_budget=50, n_starts=2)
        outcome = optimize(lambda x: 4.5, np.array([1.0, 2.0]), config)
        assert outcome.best_value == 4.5
        # prescan pool (16 per dimension) plus per-start budget, with a little
        # slack because Nelder-Mead finishes its current step
        assert outcome.evaluations <= 32 + 2 * 50 + 4

    def test_zero_budget_rejected(self):
        with pytest.raises(BudgetZeroError):
            optimize(lambda x: 0.0, np.array([0.0]), SolverConfig(eval_budget=0))

    def test_history_running_minimum_is_non_increasing(self):
        outcome = optimize(lambda x: np.sin(5 * x[0]) + x[0] ** 2, np.array([1.0]))
        assert all(a >= b for a, b in zip(outcome.history, outcome.history[1:]))

    def test_beats_grid_scan_on_qaoa_landscape(self):
        ising = random_ising(2, seed=13)
        energies = diagonal_energies(ising, 2)

        def objective(params):
            return expectation(
                qaoa_state(ising, QaoaParams((params[0],), (params[1],))), energies
            )

        # independent oracle: 32x32 grid scan over [0, pi)^2
        grid = np.linspace(0, np.pi, 32, endpoint=False)
        grid_best = min(objective((g, b)) for g in grid for b in grid)
        outcome = optimize(objective, np.array([0.1, 0.1]), SolverConfig(seed=3))
        assert outcome.best_value <= grid_best + 1e-9

    def test_coordinate_minimize_finds_sinusoid_minimum(self):
        outcome = coordinate_minimize(
            lambda x: 2.0 + np.cos(x[0] - 0.4), np.array([0.0]), sweeps=1
        )
        assert outcome.best_value == pytest.approx(1.0, abs=1e-9)

    def test_low_discrepancy_starts_are_seed_stable(self):
        a = low_discrepancy_starts(3, 4, seed=7)
        b = low_discrepancy_starts(3, 4, seed=7)
        c = low_discrepancy_starts(3, 4, seed=8)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        assert not all(np.array_equal(x, y) for x, y in zip(a, c))


class TestSampling:
    def test_basis_state_always_sampled(self):
        from qchat.quantum import tensor_basis_state

        samples = sample_bits(tensor_basis_state([1, 0]), shots=50, rng_seed=1)
        assert samples == {1: 50}

    def test_uniform_qubit_frequency_within_binomial_bound(self):
        ising = IsingModel(h=(0.0,), J={}, constant=0.0)
        state = qaoa_state(ising, QaoaParams((0.0,), (0.0,)))
        samples = sample_bits(state, shots=10_000, rng_seed=99)
        assert abs(samples[1] / 10_000 - 0.5) <= 0.02

    def test_same_seed_same_multiset(self):
        ising = random_ising(3, seed=14)
        state = qaoa_state(ising, QaoaParams((0.4,), (0.9,)))
        assert sample_bits(state, 500, rng_seed=5) == sample_bits(state, 500, rng_seed=5)


def triangle_tsp() -> TspInstance:
    d = np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], dtype=float)
    return TspInstance(("Bern", "Basel", "Zurich"), d)


class TestSolveTsp:
    def test_two_cities_have_one_tour(self):
        inst = TspInstance(("A", "B"), np.array([[0.0, 4.0], [6.0, 0.0]]))
        result, tour = solve_tsp(inst, SolverConfig(seed=1))
        assert tour.cost == 10.0

    def test_triangle_fixture_matches_brute_force(self):
        from qchat.qubo import brute_force, decode_tsp

        inst = triangle_tsp()
        result, tour = solve_tsp(inst, SolverConfig(seed=7))
        enc = tsp_to_qubo(inst)
        bits, _ = brute_force(enc.qubo)
        oracle = decode_tsp(bits, enc.var_map, inst)
        assert tour.cost == oracle.cost == 12.0

    def test_too_many_cities_rejected(self):
        inst = TspInstance(tuple("ABCDE"), np.ones((5, 5)) - np.eye(5))
        with pytest.raises(InstanceTooLargeError):
            solve_tsp(inst)

    def test_deterministic_given_seed(self):
        inst = triangle_tsp()
        r1, t1 = solve_tsp(inst, SolverConfig(seed=21))
        r2, t2 = solve_tsp(inst, SolverConfig(seed=21))
        assert r1 == r2 and t1 == t2

    def test_result_invariants(self):
        result, tour = solve_tsp(triangle_tsp(), SolverConfig(seed=7))
        running = result.energy_history
        assert all(a >= b for a, b in zip(running, running[1:]))
        assert sorted(tour.order) == [0, 1, 2]


class TestSolveKp:
    def test_single_item_selected(self):
        inst = KpInstance(("coin",), (2,), (3,), 2)
        result, sel = solve_kp(inst, SolverConfig(seed=1))
        assert sel.items == (0,)

    def test_three_item_fixture_matches_dp(self):
        inst = KpInstance(("apple", "book", "camera"), (3, 4, 5), (4, 5, 6), 7)
        result, sel = solve_kp(inst, SolverConfig(seed=7))
        assert sel.total_value == 9
        assert result.objective == -9.0

    def test_loose_capacity_selects_all(self):
        inst = KpInstance(("a", "b", "c"), (1, 2, 3), (2, 2, 2), 10)
        result, sel = solve_kp(inst, SolverConfig(seed=2))
        assert set(sel.items) == {0, 1, 2}

    def test_instance_over_ceiling_rejected(self):
        inst = KpInstance(
            tuple(f"i{k}" for k in range(14)), (1,) * 14, (1,) * 14, 8
        )  # 14 items + 4 slack bits = 18 qubits
        with pytest.raises(InstanceTooLargeError):
            solve_kp(inst)

    def test_deterministic_given_seed(self):
        inst = KpInstance(("apple", "book", "camera"), (3, 4, 5), (4, 5, 6), 7)
        r1, s1 = solve_kp(inst, SolverConfig(seed=5))
        r2, s2 = solve_kp(inst, SolverConfig(seed=5))
        assert r1 == r2 and s1 == s2
