"""Quadratic binary encodings of the two supported optimization problems.

TSP uses the position-based encoding: one variable per (city, position)
pair, quadratic penalties forcing a permutation matrix, and directed travel
costs between consecutive positions (the tour closes back at the start).
KP uses binary slack variables that encode the unused capacity exactly.
Both reduce to the same Qubo/Ising pair consumed by the variational module,
and ``brute_force`` provides the exhaustive oracle the tests lean on.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInstanceError, TooLargeError

_BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class TspInstance:
    labels: tuple[str, ...]
    distances: np.ndarray  # distances[i][j]: travel cost i -> j, zero diagonal

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=float)
        object.__setattr__(self, "distances", d)
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.labels)
        if n < 2:
            raise InvalidInstanceError("need at least two cities")
        if len(set(self.labels)) != n:
            raise InvalidInstanceError("city labels must be unique")
        if d.shape != (n, n):
            raise InvalidInstanceError(f"distance matrix must be {n}x{n}")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise InvalidInstanceError("distances must be finite and nonnegative")
        if np.any(np.diagonal(d) != 0):
            raise InvalidInstanceError("diagonal distances must be zero")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class KpInstance:
    items: tuple[str, ...]
    weights: tuple[int, ...]
    values: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "values", tuple(self.values))
        n = len(self.items)
        if n < 1:
            raise InvalidInstanceError("need at least one item")
        if len(set(self.items)) != n:
            raise InvalidInstanceError("item names must be unique")
        if len(self.weights) != n or len(self.values) != n:
            raise InvalidInstanceError("weights/values must match the item list")
        for x in (*self.weights, *self.values):
            if not isinstance(x, int) or isinstance(x, bool) or x <= 0:
                raise InvalidInstanceError(
                    "weights and values must be positive integers "
                    "(scale rational inputs up during confirmation)"
                )
        if not isinstance(self.capacity, int) or self.capacity < 1:
            raise InvalidInstanceError("capacity must be a positive integer")


@dataclass(frozen=True)
class Qubo:
    """offset + sum_i linear[i]*x_i + sum_{i<j} quadratic[i,j]*x_i*x_j."""

    n_vars: int
    linear: tuple[float, ...]
    quadratic: dict[tuple[int, int], float]
    offset: float = 0.0

    def __post_init__(self):
        if len(self.linear) != self.n_vars:
            raise InvalidInstanceError("linear terms must cover every variable")
        for (i, j) in self.quadratic:
            if not (0 <= i < j < self.n_vars):
                raise InvalidInstanceError(f"quadratic key ({i},{j}) must have i < j")

    def energy(self, bits) -> float:
        e = self.offset + sum(c * b for c, b in zip(self.linear, bits))
        for (i, j), c in self.quadratic.items():
            e += c * bits[i] * bits[j]
        return e


@dataclass(frozen=True)
class IsingModel:
    """sum_i h[i]*s_i + sum_{i<j} J[i,j]*s_i*s_j + constant over spins ±1."""

    h: tuple[float, ...]
    J: dict[tuple[int, int], float]
    constant: float = 0.0

    @property
    def n_spins(self) -> int:
        return len(self.h)

    def energy(self, spins) -> float:
        e = self.constant + sum(hi * s for hi, s in zip(self.h, spins))
        for (i, j), c in self.J.items():
            e += c * spins[i] * spins[j]
        return e


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class Selection:
    items: tuple[int, ...]
    total_value: int
    total_weight: int


@dataclass(frozen=True)
class Infeasible:
    reason: str


@dataclass(frozen=True)
class TspEncoding:
    qubo: Qubo
    var_map: dict[tuple[int, int], int]  # (city, position) -> variable
    instance: TspInstance
    penalty: float


@dataclass(frozen=True)
class KpEncoding:
    qubo: Qubo
    var_map: dict[str, int]  # item name or "slack:k" -> variable
    instance: KpInstance
    penalty: float
    slack_coeffs: tuple[int, ...]
    only_empty_feasible: bool = False


class _QuadBuilder:
    def __init__(self, n_vars: int):
        self.linear = np.zeros(n_vars)
        self.quad: dict[tuple[int, int], float] = {}
        self.offset = 0.0

    def add_quad(self, u: int, v: int, coeff: float) -> None:
        key = (min(u, v), max(u, v))
        self.quad[key] = self.quad.get(key, 0.0) + coeff

    def build(self) -> Qubo:
        quad = {k: v for k, v in sorted(self.quad.items()) if v != 0.0}
        return Qubo(
            n_vars=len(self.linear),
            linear=tuple(self.linear),
            quadratic=quad,
            offset=self.offset,
        )


def tsp_auto_penalty(inst: TspInstance) -> float:
    return inst.n * float(np.max(inst.distances)) + 1.0


def tsp_to_qubo(inst: TspInstance, penalty: float | None = None) -> TspEncoding:
    """Position-based TSP encoding with N^2 variables.

    energy = A*sum_i (1 - sum_p x_ip)^2 + A*sum_p (1 - sum_i x_ip)^2
             + sum_{i!=j} d[i][j] * sum_p x_ip * x_j,(p+1 mod N)
    """
    if penalty is None:
        penalty = tsp_auto_penalty(inst)
    if penalty <= 0:
        raise InvalidInstanceError("penalty must be positive")
    n = inst.n
    var_map = {(i, p): i * n + p for i in range(n) for p in range(n)}
    b = _QuadBuilder(n * n)

    # (1 - sum x)^2 = 1 - sum x + 2 * sum_{a<b} x_a x_b  (binary x)
    b.offset += 2.0 * n * penalty
    for i in range(n):  # each city sits at exactly one position
        row = [var_map[i, p] for p in range(n)]
        for u in row:
            b.linear[u] -= penalty
        for a in range(n):
            for c in range(a + 1, n):
                b.add_quad(row[a], row[c], 2.0 * penalty)
    for p in range(n):  # each position holds exactly one city
        col = [var_map[i, p] for i in range(n)]
        for u in col:
            b.linear[u] -= penalty
        for a in range(n):
            for c in range(a + 1, n):
                b.add_quad(col[a], col[c], 2.0 * penalty)
    for i in range(n):  # directed travel costs, closing leg included
        for j in range(n):
            if i == j:
                continue
            for p in range(n):
                b.add_quad(var_map[i, p], var_map[j, (p + 1) % n], float(inst.distances[i][j]))
    return TspEncoding(qubo=b.build(), var_map=var_map, instance=inst, penalty=penalty)


def kp_auto_penalty(inst: KpInstance) -> float:
    return float(sum(inst.values)) + 1.0


def slack_coefficients(capacity: int) -> tuple[int, ...]:
    """Binary coefficients covering exactly the range [0, capacity]."""
    m = capacity.bit_length() - 1  # floor(log2(capacity))
    return tuple(2**k for k in range(m)) + (capacity + 1 - 2**m,)


def kp_to_qubo(inst: KpInstance, penalty: float | None = None) -> KpEncoding:
    """Knapsack encoding with binary slack:

    energy = -sum_i v_i x_i + penalty * (sum_i w_i x_i + sum_k c_k s_k - W)^2
    """
    if penalty is None:
        penalty = kp_auto_penalty(inst)
    if penalty <= 0:
        raise InvalidInstanceError("penalty must be positive")
    n_items = len(inst.items)
    coeffs = slack_coefficients(inst.capacity)
    n_vars = n_items + len(coeffs)
    var_map = {name: i for i, name in enumerate(inst.items)}
    var_map.update({f"slack:{k}": n_items + k for k in range(len(coeffs))})

    weight_of = np.zeros(n_vars)
    weight_of[:n_items] = inst.weights
    weight_of[n_items:] = coeffs

    b = _QuadBuilder(n_vars)
    for i, v in enumerate(inst.values):
        b.linear[i] -= float(v)
    # expand penalty * (sum a_u y_u - W)^2, using y^2 = y
    W = float(inst.capacity)
    b.offset += penalty * W * W
    for u in range(n_vars):
        a = weight_of[u]
        b.linear[u] += penalty * (a * a - 2.0 * W * a)
        for v in range(u + 1, n_vars):
            b.add_quad(u, v, 2.0 * penalty * a * weight_of[v])
    only_empty = all(w > inst.capacity for w in inst.weights)
    return KpEncoding(
        qubo=b.build(),
        var_map=var_map,
        instance=inst,
        penalty=penalty,
        slack_coeffs=coeffs,
        only_empty_feasible=only_empty,
    )


def qubo_to_ising(q: Qubo) -> IsingModel:
    """Spin substitution x = (1 - s)/2; energies agree on every assignment."""
    h = np.zeros(q.n_vars)
    J: dict[tuple[int, int], float] = {}
    constant = q.offset
    for i, c in enumerate(q.linear):
        constant += c / 2.0
        h[i] -= c / 2.0
    for (i, j), c in q.quadratic.items():
        constant += c / 4.0
        h[i] -= c / 4.0
        h[j] -= c / 4.0
        J[(i, j)] = J.get((i, j), 0.0) + c / 4.0
    return IsingModel(h=tuple(h), J=J, constant=constant)


def all_energies(q: Qubo) -> np.ndarray:
    """Energy of every assignment; index bit i is variable x_i."""
    if q.n_vars > _BRUTE_FORCE_LIMIT:
        raise TooLargeError(f"{q.n_vars} variables exceed the exhaustive limit")
    assignments = (np.arange(2**q.n_vars)[:, None] >> np.arange(q.n_vars)) & 1
    energies = q.offset + assignments @ np.asarray(q.linear)
    for (i, j), c in q.quadratic.items():
        energies = energies + c * (assignments[:, i] & assignments[:, j])
    return energies


def brute_force(q: Qubo) -> tuple[tuple[int, ...], float]:
    """Global minimizer; ties break toward the lowest integer bitstring."""
    energies = all_energies(q)
    best = int(np.argmin(energies))  # argmin returns the first = lowest index
    bits = tuple((best >> i) & 1 for i in range(q.n_vars))
    return bits, float(energies[best])


def decode_tsp(bits, var_map, inst: TspInstance) -> Tour | Infeasible:
    """Read a tour from the (city, position) grid; cost closes the loop."""
    n = inst.n
    if len(bits) < n * n:
        raise InvalidInstanceError(f"need {n * n} bits, got {len(bits)}")
    grid = np.zeros((n, n), dtype=int)
    for (i, p), u in var_map.items():
        grid[i, p] = bits[u]
    if not ((grid.sum(axis=0) == 1).all() and (grid.sum(axis=1) == 1).all()):
        return Infeasible("assignment is not a permutation of cities to positions")
    order = tuple(int(np.argmax(grid[:, p])) for p in range(n))
    cost = float(sum(inst.distances[order[p]][order[(p + 1) % n]] for p in range(n)))
    return Tour(order=order, cost=cost)


def decode_kp(bits, var_map, inst: KpInstance) -> Selection | Infeasible:
    """Read a selection from the item bits; slack bits play no role in
    feasibility, which is checked against the capacity directly."""
    chosen = tuple(
        i for i, name in enumerate(inst.items) if bits[var_map[name]] == 1
    )
    total_weight = sum(inst.weights[i] for i in chosen)
    total_value = sum(inst.values[i] for i in chosen)
    if total_weight > inst.capacity:
        return Infeasible(
            f"selected weight {total_weight} exceeds capacity {inst.capacity}"
        )
    return Selection(items=chosen, total_value=total_value, total_weight=total_weight)
