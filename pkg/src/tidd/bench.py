"""GHZ / BV / DJ benchmark circuits, state evolution, and measurement.

Circuits are lists of gate specifications; every gate is materialized as a
full n-qubit matrix diagram and applied to a column-replicated state vector
by matrix multiplication.  Metrics track the final-state size and the
maximum size of any state or gate materialized during the run.

BV and DJ use phase oracles rather than ancilla oracles: this halves the
qubit count, keeps every amplitude inside the exact ring, and carries the
same information content.  The BV oracle is the diagonal (-1)**(s.x),
realized as one Z factor per set bit of the secret s.  The DJ balanced
oracle is the same diagonal for a seeded random parity pattern with qubit 0
always included (which guarantees balance); the constant oracle is the
identity.  The seed fully determines both.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from random import Random

from .core import Manager, SizeReport, Tidd, size_metrics
from .errors import GateSpecError, NotPowerOfTwo, ZeroDistribution
from .linalg import MatrixTidd, VectorTidd, matvec, vector_from_basis_state
from .analysis import sample
from .builders import from_truth_table
from .ops import apply, kronecker
from .values import PLUS, SQRT2_HALF, TIMES, Value

GATE_KINDS = ("h", "x", "z", "i", "cnot", "cz")

_H = (SQRT2_HALF, SQRT2_HALF, SQRT2_HALF, -SQRT2_HALF)
_X = (Value(0, 0), Value(1, 0), Value(1, 0), Value(0, 0))
_Z = (Value(1, 0), Value(0, 0), Value(0, 0), Value(-1, 0))
_I = (Value(1, 0), Value(0, 0), Value(0, 0), Value(1, 0))
_P0 = (Value(1, 0), Value(0, 0), Value(0, 0), Value(0, 0))  # |0><0|
_P1 = (Value(0, 0), Value(0, 0), Value(0, 0), Value(1, 0))  # |1><1|

_SINGLE = {"h": _H, "x": _X, "z": _Z, "i": _I}


@dataclass(frozen=True)
class GateSpec:
    kind: str
    targets: tuple[int, ...]
    qubits: int

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise GateSpecError(f"unknown gate kind {self.kind!r}")
        expected = 2 if self.kind in ("cnot", "cz") else 1
        if len(self.targets) != expected:
            raise GateSpecError(f"{self.kind} takes {expected} target(s)")
        if len(set(self.targets)) != len(self.targets):
            raise GateSpecError("targets must be distinct")
        for t in self.targets:
            if not 0 <= t < self.qubits:
                raise GateSpecError(f"target {t} outside 0..{self.qubits - 1}")


def gate(kind: str, targets, qubits: int) -> GateSpec:
    ts = (targets,) if isinstance(targets, int) else tuple(targets)
    return GateSpec(kind, ts, qubits)


def _level1_matrix(mgr: Manager, entries) -> Tidd:
    # entries row-major over (x0, y0)
    return from_truth_table(mgr, 1, entries)


def _identity_span(mgr: Manager, qubits: int) -> Tidd:
    from .builders import equality_relation

    return equality_relation(mgr, qubits.bit_length())


def _kron_span(mgr: Manager, factors: dict[int, Tidd], lo: int, hi: int) -> Tidd:
    """Balanced tensor fold of per-qubit 2x2 factors over qubits [lo, hi).

    Factor-free spans short-circuit to the identity, so one gate costs
    O(log n) tensor products rather than O(n).
    """
    if not any(lo <= i < hi for i in factors):
        return _identity_span(mgr, hi - lo)
    if hi - lo == 1:
        return factors[lo]
    mid = (lo + hi) // 2
    return kronecker(
        _kron_span(mgr, factors, lo, mid), _kron_span(mgr, factors, mid, hi)
    )


def gate_matrix(mgr: Manager, g: GateSpec) -> MatrixTidd:
    """The full n-qubit unitary for one gate.

    Single-qubit gates tensor the 2x2 gate with identities; CNOT and CZ are
    the sum of the two controlled branches |0><0| (x) I + |1><1| (x) U.
    """
    n = g.qubits
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"qubit count {n} is not a power of two")
    if g.kind in _SINGLE:
        base = _level1_matrix(mgr, _SINGLE[g.kind])
        t = _kron_span(mgr, {g.targets[0]: base}, 0, n)
        return MatrixTidd(t, n)
    control, target = g.targets
    branch0 = _kron_span(mgr, {control: _level1_matrix(mgr, _P0)}, 0, n)
    flip = _X if g.kind == "cnot" else _Z
    branch1 = _kron_span(
        mgr,
        {control: _level1_matrix(mgr, _P1), target: _level1_matrix(mgr, flip)},
        0,
        n,
    )
    return MatrixTidd(apply(PLUS, branch0, branch1), n)


def _require_power_of_two(n: int) -> None:
    if n < 2 or n & (n - 1):
        raise NotPowerOfTwo(f"qubit count {n} must be a power of two >= 2")


def ghz_circuit(n: int) -> list[GateSpec]:
    """H on qubit 0, then a CNOT chain fanning out from qubit 0."""
    _require_power_of_two(n)
    return [gate("h", 0, n)] + [gate("cnot", (0, i), n) for i in range(1, n)]


def bv_secret(n: int, seed: int) -> tuple[int, ...]:
    rng = Random(seed)
    return tuple(rng.randrange(2) for _ in range(n))


def bv_circuit(n: int, s) -> list[GateSpec]:
    """Bernstein-Vazirani with a phase oracle: H layer, (-1)**(s.x), H layer."""
    _require_power_of_two(n)
    s = tuple(int(b) for b in s)
    if len(s) != n:
        raise GateSpecError(f"secret length {len(s)} != qubit count {n}")
    layer = [gate("h", i, n) for i in range(n)]
    oracle = [gate("z", i, n) for i in range(n) if s[i]]
    return layer + oracle + list(layer)


def dj_parity_pattern(n: int, seed: int) -> tuple[int, ...]:
    """Balanced-oracle parity pattern: seeded random bits, qubit 0 forced on."""
    rng = Random(seed)
    pattern = [rng.randrange(2) for _ in range(n)]
    pattern[0] = 1
    return tuple(pattern)


def dj_circuit(n: int, mode: str, seed: int = 0) -> list[GateSpec]:
    """Deutsch-Jozsa with a phase oracle.

    mode "constant": the oracle is the identity (constant function).
    mode "balanced": the oracle is the diagonal (-1)**(b.x) for the seeded
    parity pattern b, which is balanced because b is nonzero.
    """
    _require_power_of_two(n)
    layer = [gate("h", i, n) for i in range(n)]
    if mode == "constant":
        oracle: list[GateSpec] = []
    elif mode == "balanced":
        b = dj_parity_pattern(n, seed)
        oracle = [gate("z", i, n) for i in range(n) if b[i]]
    else:
        raise GateSpecError(f"unknown DJ mode {mode!r}")
    return layer + oracle + list(layer)


@dataclass(frozen=True)
class RunMetrics:
    final_size: SizeReport
    max_intermediate_size: int
    wall_time: float
    gate_count: int


def run_circuit(
    mgr: Manager, gates: list[GateSpec], initial: VectorTidd
) -> tuple[VectorTidd, RunMetrics]:
    """Fold matvec over the gate list, tracking sizes and wall time."""
    start = time.perf_counter()
    state = initial
    max_size = size_metrics(state.t.t).total
    for g in gates:
        matrix = gate_matrix(mgr, g)
        max_size = max(max_size, size_metrics(matrix.t).total)
        state = matvec(matrix, state)
        max_size = max(max_size, size_metrics(state.t.t).total)
    final = size_metrics(state.t.t)
    metrics = RunMetrics(
        final_size=final,
        max_intermediate_size=max_size,
        wall_time=time.perf_counter() - start,
        gate_count=len(gates),
    )
    return state, metrics


def run_benchmark(
    mgr: Manager, algo: str, qubits: int, seed: int = 0
) -> tuple[VectorTidd, RunMetrics]:
    """Build and run one named benchmark from the all-zeros basis state."""
    if algo == "ghz":
        gates = ghz_circuit(qubits)
    elif algo == "bv":
        gates = bv_circuit(qubits, bv_secret(qubits, seed))
    elif algo == "dj":
        gates = dj_circuit(qubits, "balanced", seed)
    else:
        raise GateSpecError(f"unknown benchmark {algo!r}")
    initial = vector_from_basis_state(mgr, qubits, (0,) * qubits)
    return run_circuit(mgr, gates, initial)


def measure_distribution(
    state: VectorTidd, shots: int, rng: Random
) -> dict[str, int]:
    """Sample measurement outcomes (row bit strings) from a state vector.

    The state is squared pointwise (real amplitudes, so no conjugation),
    assignments are sampled from the induced distribution, and the don't-care
    column bits are drawn and discarded.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    squared = apply(TIMES, state.t.t, state.t.t)
    if all(v.is_zero() for v in squared.values):
        raise ZeroDistribution("state has no nonzero amplitude")
    histogram: dict[str, int] = {}
    for _ in range(shots):
        assignment = sample(squared, rng)
        row_bits = "".join(str(b) for b in assignment[0::2])
        histogram[row_bits] = histogram.get(row_bits, 0) + 1
    return histogram


def metrics_csv_header() -> str:
    return "algo,qubits,seed,gates,final_nodes,final_edges,final_total,max_intermediate,wall_seconds"


def metrics_csv_row(
    algo: str, qubits: int, seed: int, metrics: RunMetrics
) -> str:
    f = metrics.final_size
    return (
        f"{algo},{qubits},{seed},{metrics.gate_count},"
        f"{f.nodes},{f.edges},{f.total},"
        f"{metrics.max_intermediate_size},{metrics.wall_time:.6f}"
    )
