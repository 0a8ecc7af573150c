"""Matrices and vectors over interleaved variable orderings.

A square matrix over n qubits is a diagram over 2n variables in interleaved
order <x0, y0, ..., x_{n-1}, y_{n-1}> with x the row bits and y the column
bits (x0 is the most significant row bit).  Vectors are column-replicated
matrices, v stored as v * ones^T: the matrix-vector product then reduces to
the matrix-matrix product verbatim, at a cost in don't-care column variables
that is only logarithmic in state count.

Matrix multiplication runs bottom-up over the two operand stacks.  A product
state at each level is a formal sum of weighted triples (q, p, w): operand
states q and p reached on the row/inner and inner/column halves of a block,
with w counting the inner-index bit patterns that realize the pair.  Triples
with equal state pairs merge by adding weights; a formal sum is canonical
when its (q, p) pairs are strictly increasing.  At the top each sum resolves
to sum(V(q) * V(p) * w) and the standard reduction finishes.  Weights are
arbitrary-precision: inner dimensions reach 2**n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import top_path_counts
from .builders import equality_relation, negation, projection
from .core import FORK, Layer, Manager, Tidd, evaluate
from .errors import ShapeMismatch
from .ops import apply, canonical_tidd
from .values import AND, TIMES, Value, ZERO

TripleSum = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True, eq=False)
class MatrixTidd:
    """A 2**n x 2**n matrix as a diagram over 2n interleaved variables."""

    t: Tidd
    qubits: int

    def __post_init__(self) -> None:
        n = self.qubits
        if n < 1 or n & (n - 1):
            raise ShapeMismatch(f"qubit count {n} is not a power of two")
        if (1 << self.t.level) != 2 * n:
            raise ShapeMismatch(
                f"{n} qubits need {2 * n} variables, diagram has {1 << self.t.level}"
            )

    @property
    def level(self) -> int:
        return self.t.level

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixTidd):
            return NotImplemented
        return self.qubits == other.qubits and self.t == other.t

    def __hash__(self) -> int:
        return hash((self.qubits, self.t))


@dataclass(frozen=True, eq=False)
class VectorTidd:
    """A length-2**n vector stored column-replicated (all columns equal)."""

    t: MatrixTidd

    @property
    def qubits(self) -> int:
        return self.t.qubits

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorTidd):
            return NotImplemented
        return self.t == other.t

    def __hash__(self) -> int:
        return hash(self.t)


def matrix_level(qubits: int) -> int:
    if qubits < 1 or qubits & (qubits - 1):
        raise ShapeMismatch(f"qubit count {qubits} is not a power of two")
    return qubits.bit_length()  # log2(2 * qubits)


def identity_matrix(mgr: Manager, qubits: int) -> MatrixTidd:
    """The identity: the equality relation over interleaved variables."""
    return MatrixTidd(equality_relation(mgr, matrix_level(qubits)), qubits)


def vector_from_basis_state(mgr: Manager, qubits: int, bits) -> VectorTidd:
    """The computational basis state |bits>, column-replicated."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != qubits:
        raise ShapeMismatch(f"{len(bits)} bits for {qubits} qubits")
    level = matrix_level(qubits)
    result = None
    for i, b in enumerate(bits):
        factor = projection(mgr, level, 2 * i)  # row variable x_i
        if not b:
            factor = negation(mgr, factor)
        result = factor if result is None else apply(AND, result, factor)
    return VectorTidd(MatrixTidd(result, qubits))


# ---------------------------------------------------------------------------
# weighted-triple matrix multiplication

def merge_triples(triples) -> TripleSum:
    """Canonicalize a collection of (q, p, w): merge equal pairs, sort pairs."""
    acc: dict[tuple[int, int], int] = {}
    for q, p, w in triples:
        key = (q, p)
        acc[key] = acc.get(key, 0) + w
    return tuple((q, p, w) for (q, p), w in sorted(acc.items()))


def _intern_sum(mgr: Manager, s: TripleSum) -> TripleSum:
    return mgr.triple_sums.setdefault(s, s)


def _combine_sums(
    mgr: Manager, left: TripleSum, right: TripleSum, ta, tb
) -> TripleSum:
    """Distribute two formal sums through the operand transition tables."""
    out: dict[tuple[int, int], int] = {}
    for qa, pa, wa in left:
        for qb, pb, wb in right:
            key = (ta[qa][qb], tb[pa][pb])
            out[key] = out.get(key, 0) + wa * wb
    return _intern_sum(mgr, tuple((q, p, w) for (q, p), w in sorted(out.items())))


def _bit_states(layer: Layer) -> tuple[int, int]:
    # a DontCare leaf serves as both level-0 states of the summation
    return (0, 1) if layer.kind == FORK else (0, 0)


def _matmul_stack(a: Layer, b: Layer) -> tuple[Layer, tuple[TripleSum, ...]]:
    """Product stack for two operand stacks; memoized on the handle pair.

    Returns the product layer at the operands' level plus the formal sum
    tracked by each of its states.
    """
    mgr = a.manager
    key = (a, b)
    hit = mgr.matmul_stack_cache.get(key)
    if hit is not None:
        return hit

    index: dict[TripleSum, int] = {}
    rows = []
    if a.level == 1:
        sa = _bit_states(a.child)
        sb = _bit_states(b.child)
        for i in range(2):
            row = []
            for j in range(2):
                s = merge_triples(
                    (a.table[sa[i]][sa[k]], b.table[sb[k]][sb[j]], 1)
                    for k in range(2)
                )
                s = _intern_sum(mgr, s)
                if s not in index:
                    index[s] = len(index)
                row.append(index[s])
            rows.append(tuple(row))
        child = mgr.fork()
    else:
        child, child_sums = _matmul_stack(a.child, b.child)
        for c1 in range(child.num_states):
            row = []
            for c2 in range(child.num_states):
                s = _combine_sums(
                    mgr, child_sums[c1], child_sums[c2], a.table, b.table
                )
                if s not in index:
                    index[s] = len(index)
                row.append(index[s])
            rows.append(tuple(row))
    layer = mgr.intern_layer(child, tuple(rows))
    result = (layer, tuple(index))
    mgr.matmul_stack_cache[key] = result
    return result


def matmul(a: MatrixTidd, b: MatrixTidd) -> MatrixTidd:
    """Exact matrix product; memoized on the operand diagrams."""
    if a.qubits != b.qubits:
        raise ShapeMismatch(f"qubit counts {a.qubits} and {b.qubits}")
    mgr = a.t.manager
    key = (a.t, b.t)
    hit = mgr.matmul_cache.get(key)
    if hit is not None:
        mgr.stats["matmul_hits"] += 1
        return MatrixTidd(hit, a.qubits)
    mgr.stats["matmul_misses"] += 1
    top, sums = _matmul_stack(a.t.top, b.t.top)
    raw_values = [
        sum(((a.t.values[q] * b.t.values[p]).scale_int(w) for q, p, w in s), ZERO)
        for s in sums
    ]
    result = canonical_tidd(top, raw_values)
    mgr.matmul_cache[key] = result
    return MatrixTidd(result, a.qubits)


def matvec(a: MatrixTidd, v: VectorTidd) -> VectorTidd:
    """Matrix-vector product through column replication: A (v 1^T) = (A v) 1^T."""
    if a.qubits != v.qubits:
        raise ShapeMismatch(f"qubit counts {a.qubits} and {v.qubits}")
    return VectorTidd(matmul(a, v.t))


def vector_norm_squared(v: VectorTidd) -> Value:
    """Exact sum of squared amplitudes, via path counts of the squared diagram."""
    squared = apply(TIMES, v.t.t, v.t.t)
    counts = top_path_counts(squared)
    total = ZERO
    for value, count in zip(squared.values, counts):
        total = total + value.scale_int(count)
    # every row value is replicated across 2**n columns
    return total.div_pow2(v.qubits)


def vector_amplitudes(v: VectorTidd) -> list[Value]:
    """Dense amplitude list (row r = column-0 entry), for small instances."""
    n = v.qubits
    amps = []
    for r in range(1 << n):
        bits = []
        for i in range(n):
            bits.append((r >> (n - 1 - i)) & 1)
            bits.append(0)  # column bit, don't care
        amps.append(evaluate(v.t.t, bits))
    return amps


def is_column_replicated(m: MatrixTidd, max_qubits: int = 8) -> bool:
    """Exhaustively check the vector invariant entry(r, c) == entry(r, c')."""
    n = m.qubits
    if n > max_qubits:
        raise ShapeMismatch(f"replication check limited to {max_qubits} qubits")
    for r in range(1 << n):
        reference = None
        for c in range(1 << n):
            bits = []
            for i in range(n):
                bits.append((r >> (n - 1 - i)) & 1)
                bits.append((c >> (n - 1 - i)) & 1)
            entry = evaluate(m.t, bits)
            if reference is None:
                reference = entry
            elif entry != reference:
                return False
    return True
